from __future__ import annotations

import time
from dataclasses import dataclass

import pytest

from kradm import build_admissible, build_root_system, default_sweep, run_sweep


@dataclass
class SweepData:
    entries: tuple
    reports: list
    seconds: float


@pytest.fixture(scope="session")
def sweep_data() -> SweepData:
    entries = default_sweep()
    started = time.perf_counter()
    reports = run_sweep(entries, with_timing=False)
    return SweepData(entries, reports, time.perf_counter() - started)


@pytest.fixture(scope="session")
def sweep_posets() -> dict:
    out = {}
    for entry in default_sweep():
        rs = build_root_system(entry.group, entry.lattice)
        out[entry] = build_admissible(rs, entry.mu)
    return out
