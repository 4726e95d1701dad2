"""The downward-closed poset below the extremal translations, and its strata.

`build_admissible(rs, mu)` enumerates every element lying (in Bruhat order)
below some t_nu with nu in the Weyl orbit of mu, by breadth-first descent
through lower covers from those translations.  The result is graded by
length; codimension means distance from the top grade.

The module also computes, for each element x, the bipartite graph whose
vertices are the codimension <= 1 elements above x and whose edges are the
cover relations among them, plus the set of extremal translations above x,
both by direct search and by the closed two-point formula available in
codimension one.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .affine import (
    AffineElt,
    finite_elt,
    length,
    lower_covers,
    translation_elt,
)
from .linalg import dot, identity_mat
from .rootsys import RootSystem, Vec


class CapExceededError(RuntimeError):
    """Raised when an enumeration outgrows the configured element cap."""

    def __init__(self, cap: int, count: int):
        super().__init__(f"poset exceeded cap of {cap} elements (at {count})")
        self.cap = cap
        self.count = count


class DecompositionError(RuntimeError):
    """A codimension-one element failed to split as translation * reflection.

    This cannot happen for posets built by this package; seeing it means a
    sign or composition convention has drifted.
    """


@dataclass(frozen=True)
class StrataGraph:
    """Codimension <= 1 elements above a base element, with cover edges.

    `codim0` holds the coweights nu of the extremal translations above the
    base; `codim1` the codimension-one elements above it; `edges` pairs of
    (codim1 index, codim0 index) wherever the former is covered by the
    latter.  The base itself appears among the vertices exactly when its
    own codimension is <= 1.
    """

    base: AffineElt
    base_codim: int
    codim0: tuple[Vec, ...]
    codim1: tuple[AffineElt, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.codim0) + len(self.codim1)

    def component_count(self, drop_base: bool = False) -> int:
        """Connected components; optionally with the base vertex removed."""
        skip = None
        if drop_base and self.base_codim <= 1:
            if self.base_codim == 0:
                skip = ("t", self.codim0.index(self.base.translation))
            else:
                skip = ("e", self.codim1.index(self.base))
        nodes = [("t", i) for i in range(len(self.codim0)) if ("t", i) != skip]
        nodes += [("e", i) for i in range(len(self.codim1)) if ("e", i) != skip]
        parent = {v: v for v in nodes}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for e, t in self.edges:
            a, b = ("e", e), ("t", t)
            if a in parent and b in parent:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        return len({find(v) for v in nodes})

    def is_connected(self) -> bool:
        return self.component_count() <= 1


class AdmissiblePoset:
    """All elements below the extremal translations of a dominant coweight."""

    def __init__(self, rs: RootSystem, mu: Vec, elements, covers_down,
                 covers_up, translations, max_length: int):
        self.rs = rs
        self.mu = mu
        self.elements = elements
        self.covers_down = covers_down
        self.covers_up = covers_up
        self.translations = translations
        self.max_length = max_length
        self._closure_cache: dict[AffineElt, frozenset[AffineElt]] = {}
        self._translation_set = frozenset(translations)
        self._element_set = frozenset(elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x: AffineElt) -> bool:
        return x in self._element_set

    def codimension(self, x: AffineElt) -> int:
        if x not in self._element_set:
            raise ValueError(f"{x!r} is not in the poset")
        return self.max_length - length(x)

    def upward_closure(self, x: AffineElt) -> frozenset[AffineElt]:
        """Everything >= x; cover-path reachability suffices in a graded
        downward-closed piece of the group."""
        cached = self._closure_cache.get(x)
        if cached is None:
            if x not in self._element_set:
                raise ValueError(f"{x!r} is not in the poset")
            seen = {x}
            frontier = [x]
            while frontier:
                nxt = []
                for z in frontier:
                    for up in self.covers_up[z]:
                        if up not in seen:
                            seen.add(up)
                            nxt.append(up)
                frontier = nxt
            cached = frozenset(seen)
            self._closure_cache[x] = cached
        return cached

    def leq(self, x: AffineElt, y: AffineElt) -> bool:
        return y in self.upward_closure(x)

    def maximal_elements(self) -> tuple[AffineElt, ...]:
        return tuple(x for x in self.elements if not self.covers_up[x])

    def elements_of_codim(self, c: int) -> tuple[AffineElt, ...]:
        want = self.max_length - c
        return tuple(x for x in self.elements if length(x) == want)

    # -- strata ------------------------------------------------------------

    def codim_le1_graph(self, x: AffineElt) -> StrataGraph:
        up = self.upward_closure(x)
        codim0 = tuple(sorted(z.translation for z in up
                              if z in self._translation_elts()))
        codim1_elts = tuple(sorted(
            (z for z in up if self.codimension(z) == 1), key=_sort_key))
        index0 = {nu: i for i, nu in enumerate(codim0)}
        index1 = {z: i for i, z in enumerate(codim1_elts)}
        edges = []
        for nu in codim0:
            top = translation_elt(self.rs, nu)
            for _, below in self.covers_down[top]:
                j = index1.get(below)
                if j is not None:
                    edges.append((j, index0[nu]))
        edges.sort()
        return StrataGraph(x, self.codimension(x), codim0, codim1_elts,
                           tuple(edges))

    def _translation_elts(self) -> frozenset[AffineElt]:
        cached = getattr(self, "_telts", None)
        if cached is None:
            cached = frozenset(translation_elt(self.rs, nu)
                               for nu in self.translations)
            self._telts = cached
        return cached

    # -- extremal translations above an element ------------------------------

    def irr_bruteforce(self, x: AffineElt) -> frozenset[Vec]:
        """Coweights nu with t_nu above x, found by walking the cover graph."""
        up = self.upward_closure(x)
        return frozenset(z.translation for z in up
                         if z in self._translation_elts())

    def irr_formula(self, x: AffineElt) -> frozenset[Vec]:
        """Same set, via the closed two-point formula (codimension one only)."""
        _, pair = self.formula_decomposition(x)
        return frozenset(pair)

    def formula_decomposition(self, x: AffineElt) -> tuple[str, tuple[Vec, Vec]]:
        """Split a codimension-one x as t_nubar * s_beta and name its case.

        Case "a": x is below the pure translation t_nubar, and the two
        extremal translations above x sit at nubar and its reflection.
        Case "b": t_nubar is below x, and both points shift by the coroot.
        """
        rs = self.rs
        codim = self.codimension(x)
        if codim != 1:
            raise ValueError(f"element has codimension {codim}, expected 1")
        idx = rs.refl_by_matrix.get(x.matrix)
        if idx is None:
            raise DecompositionError(
                f"finite part of {x!r} is not a single reflection")
        nubar = x.translation
        sx = finite_elt(rs, rs.refl_mats[idx]) * x
        if sx.matrix != identity_mat(rs.dim):
            raise DecompositionError(
                f"reflection square is not the identity at {x!r}")
        if length(x) < length(sx):
            pair = (nubar, sx.translation)
            case = "a"
        else:
            shifted = tuple(a + b for a, b in zip(nubar, rs.pos_coroots[idx]))
            pair = (shifted, rs.reflect(idx, shifted))
            case = "b"
        lo, hi = sorted(pair)
        return case, (lo, hi)


def _sort_key(x: AffineElt):
    return (length(x), x.translation, x.matrix)


def build_admissible(rs: RootSystem, mu, cap: int = 500_000) -> AdmissiblePoset:
    """Enumerate the full poset below the extremal translations of mu.

    Non-dominant mu is replaced by its dominant representative (the poset
    only depends on the orbit); that substitution warns rather than errors.
    """
    mu = rs.validate_coweight(mu)
    if not rs.is_dominant(mu):
        dom, _ = rs.dominant_representative(mu)
        warnings.warn(f"replacing {mu} by its dominant representative {dom}")
        mu = dom
    translations = rs.weyl_orbit(mu)
    max_length = dot(rs.two_rho, mu)
    seeds = [translation_elt(rs, nu) for nu in translations]
    for s in seeds:
        if length(s) != max_length:
            raise AssertionError(
                f"extremal translation {s!r} has length {length(s)}, "
                f"expected {max_length}")

    covers_down: dict[AffineElt, tuple] = {}
    covers_up: dict[AffineElt, list[AffineElt]] = {s: [] for s in seeds}
    frontier = sorted(seeds, key=_sort_key)
    count = len(frontier)
    while frontier:
        nxt = set()
        for y in frontier:
            downs = lower_covers(y)
            covers_down[y] = downs
            for _, x in downs:
                if x not in covers_up:
                    covers_up[x] = []
                    nxt.add(x)
                covers_up[x].append(y)
        count += len(nxt)
        if count > cap:
            raise CapExceededError(cap, count)
        frontier = sorted(nxt, key=_sort_key)

    elements = tuple(sorted(covers_up, key=_sort_key))
    covers_up_frozen = {x: tuple(ys) for x, ys in covers_up.items()}
    return AdmissiblePoset(rs, mu, elements, covers_down, covers_up_frozen,
                           translations, max_length)
