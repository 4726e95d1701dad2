from __future__ import annotations

import json

import pytest

from kradm import (
    build_admissible,
    build_root_system,
    default_sweep,
    run_checks,
    run_sweep,
    sweep_exit_code,
)
from kradm.verifier import CHECK_NAMES, SweepEntry


def test_default_sweep_composition():
    entries = default_sweep()
    assert len(entries) == 15
    assert len(set(entries)) == 15
    groups = {e.group for e in entries}
    assert groups == {"A1", "A2", "C2", "G2", "GL2", "GL3", "GL4"}


def test_run_checks_all_pass_on_c2():
    rs = build_root_system("C2")
    poset = build_admissible(rs, (1, 1))
    results = run_checks(poset)
    assert [r.name for r in results] == list(CHECK_NAMES)
    assert all(r.status == "pass" for r in results)
    s2 = next(r for r in results if r.name == "s2_connectivity")
    assert s2.details["graphs_checked"] == 19
    irr = next(r for r in results if r.name == "irr_formulas")
    assert irr.details["case_a"] + irr.details["case_b"] == 6


def test_zero_coweight_skips_codim_checks():
    rs = build_root_system("A1")
    poset = build_admissible(rs, (0,))
    by_name = {r.name: r for r in run_checks(poset)}
    assert by_name["structure"].status == "pass"
    assert by_name["s2_connectivity"].status == "pass"
    assert by_name["codim1_bound"].status == "skipped"
    assert by_name["codim1_two_distinct"].status == "skipped"
    assert by_name["irr_formulas"].status == "skipped"


def test_only_filter():
    rs = build_root_system("A1")
    poset = build_admissible(rs, (1,))
    results = run_checks(poset, only=["s2"])
    assert [r.name for r in results] == ["s2_connectivity"]
    results = run_checks(poset, only=["codim1"])
    assert [r.name for r in results] == ["codim1_bound", "codim1_two_distinct"]
    with pytest.raises(ValueError, match="matches no check"):
        run_checks(poset, only=["bogus"])


def test_sweep_records_cap_and_bad_entries():
    entries = [SweepEntry("A1", "Qv", (1,)),
               SweepEntry("C2", "Qv", (1, 2)),
               SweepEntry("A1", "Qv", (1, 2))]  # wrong arity
    reports = run_sweep(entries, cap=10, with_timing=False)
    assert reports[0]["error"] is None
    assert reports[1]["error"]["kind"] == "cap_exceeded"
    assert reports[1]["error"]["cap"] == 10
    assert reports[2]["error"]["kind"] == "invalid_entry"
    assert sweep_exit_code(reports) == 3


def test_sweep_exit_codes():
    ok = {"error": None, "checks": [{"status": "pass"}]}
    failed = {"error": None, "checks": [{"status": "fail"}]}
    capped = {"error": {"kind": "cap_exceeded"}, "checks": []}
    invalid = {"error": {"kind": "invalid_entry"}, "checks": []}
    assert sweep_exit_code([ok, ok]) == 0
    assert sweep_exit_code([ok, failed]) == 1
    assert sweep_exit_code([failed, capped]) == 3
    assert sweep_exit_code([invalid]) == 1


def test_sweep_reports_shape_and_timing_field(sweep_data):
    assert len(sweep_data.reports) == len(sweep_data.entries)
    for report in sweep_data.reports:
        assert report["error"] is None
        assert "seconds" not in report
        assert {c["name"] for c in report["checks"]} == set(CHECK_NAMES)
    timed = run_sweep([SweepEntry("A1", "Qv", (1,))])
    assert isinstance(timed[0]["seconds"], float)


def test_sweep_is_deterministic_across_threads(sweep_data):
    parallel = run_sweep(sweep_data.entries, threads=4, with_timing=False)
    assert json.dumps(parallel) == json.dumps(sweep_data.reports)


def test_sweep_only_validates_before_running():
    with pytest.raises(ValueError, match="matches no check"):
        run_sweep([SweepEntry("A1", "Qv", (1,))], only=["nope"])


def test_structure_details_record_support_size(sweep_data):
    by_entry = {tuple(r["entry"]["mu"]): r for r in sweep_data.reports
                if r["entry"]["group"] == "A1"}
    assert by_entry[(2,)]["checks"][0]["details"]["support_size"] == 5
