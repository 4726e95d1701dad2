from __future__ import annotations

import json
import pathlib

import pytest

from kradm import (
    CapExceededError,
    bruhat_leq,
    build_admissible,
    build_root_system,
    length,
    translation_elt,
)

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def _build(group, lattice, mu, **kw):
    rs = build_root_system(group, lattice)
    return rs, build_admissible(rs, mu, **kw)


def test_golden_cardinalities_fixture():
    rows = json.loads((FIXTURES / "cardinalities.json").read_text())
    assert len(rows) == 15
    for row in rows:
        rs, poset = _build(row["group"], row["lattice"], tuple(row["mu"]))
        hist = {}
        for x in poset.elements:
            hist[str(length(x))] = hist.get(str(length(x)), 0) + 1
        assert len(poset) == row["size"], row
        assert poset.max_length == row["max_length"], row
        assert hist == row["length_histogram"], row


def test_minuscule_gl2_poset_shape():
    rs, poset = _build("GL2", None, (1, 0))
    assert len(poset) == 3
    t10 = translation_elt(rs, (1, 0))
    t01 = translation_elt(rs, (0, 1))
    (tau,) = poset.elements_of_codim(1)
    assert length(tau) == 0 and tau.matrix != t10.matrix
    assert poset.covers_down[t10] == ((poset.covers_down[t10][0][0], tau),)
    assert {x for _, x in poset.covers_down[t01]} == {tau}
    case, pair = poset.formula_decomposition(tau)
    assert case == "a"
    assert pair == ((0, 1), (1, 0))
    assert poset.irr_formula(tau) == poset.irr_bruteforce(tau) == {(0, 1), (1, 0)}


def test_rank_one_shifted_case():
    rs, poset = _build("A1", "Qv", (2,))
    cases = {}
    for x in poset.elements_of_codim(1):
        case, pair = poset.formula_decomposition(x)
        cases[case] = (x, pair)
        assert poset.irr_formula(x) == poset.irr_bruteforce(x) == {(-2,), (2,)}
    assert set(cases) == {"a", "b"}
    shifted, pair = cases["b"]
    assert shifted.translation == (1,)  # t_{coroot} * s, the non-translation route
    assert pair == ((-2,), (2,))


def test_poset_order_agrees_with_bruhat():
    for group, lattice, mu in [("GL3", None, (1, 0, 0)), ("C2", "Qv", (1, 1))]:
        rs, poset = _build(group, lattice, mu)
        for x in poset.elements:
            for y in poset.elements:
                assert poset.leq(x, y) == bruhat_leq(x, y)


def test_strata_graph_shapes():
    rs, poset = _build("GL2", None, (1, 0))
    (tau,) = poset.elements_of_codim(1)
    g = poset.codim_le1_graph(tau)
    assert g.base_codim == 1
    assert g.codim0 == ((0, 1), (1, 0))
    assert g.codim1 == (tau,)
    assert g.edges == ((0, 0), (0, 1))
    assert g.is_connected() and g.component_count() == 1
    # removing the base element strands the two translations
    assert g.component_count(drop_base=True) == 2

    top = translation_elt(rs, (1, 0))
    g_top = poset.codim_le1_graph(top)
    assert g_top.base_codim == 0
    assert g_top.codim0 == ((1, 0),) and g_top.codim1 == ()
    assert g_top.is_connected()


def test_codimension_and_membership_errors():
    rs, poset = _build("A1", "Qv", (1,))
    outsider = translation_elt(rs, (5,))
    assert outsider not in poset
    with pytest.raises(ValueError):
        poset.codimension(outsider)
    with pytest.raises(ValueError):
        poset.upward_closure(outsider)
    with pytest.raises(ValueError, match="codimension 2"):
        poset.formula_decomposition(
            next(x for x in poset.elements if length(x) == 0))


def test_maximal_elements_are_the_extremal_translations():
    rs, poset = _build("G2", "Qv", (2, 1))
    assert set(poset.maximal_elements()) == {
        translation_elt(rs, nu) for nu in rs.weyl_orbit((2, 1))}
    assert sum(len(poset.elements_of_codim(c))
               for c in range(poset.max_length + 1)) == len(poset)


def test_cap_aborts_enumeration():
    rs = build_root_system("C2")
    with pytest.raises(CapExceededError) as err:
        build_admissible(rs, (1, 2), cap=10)
    assert err.value.cap == 10
    assert err.value.count > 10
    assert "cap of 10" in str(err.value)


def test_non_dominant_mu_is_normalized_with_warning():
    rs = build_root_system("A1")
    with pytest.warns(UserWarning, match="dominant representative"):
        poset = build_admissible(rs, (-2,))
    assert poset.mu == (2,)
    assert len(poset) == 9


def test_zero_coweight_gives_singleton():
    rs, poset = _build("C2", "Qv", (0, 0))
    assert len(poset) == 1
    assert poset.max_length == 0
    assert poset.elements_of_codim(1) == ()
    g = poset.codim_le1_graph(poset.elements[0])
    assert g.is_connected() and g.vertex_count == 1
