"""Root data, Weyl orbits, and cocharacter-lattice bookkeeping.

A `RootSystem` bundles one finite root datum with a chosen cocharacter
lattice L sitting between the coroot lattice and the coweight lattice
(or Z^n for the GL family).  Lattice points are plain integer tuples in the
coordinates of a fixed basis of L.  Roots are stored as integer functionals
on those coordinates, so every pairing computed anywhere in the package is
an exact integer; no floating point and no orthogonal-embedding radicals.

Supported groups: A/B/C/D/E/F/G simple types (descriptor like "C2", "E7")
with lattice "Qv" (coroot lattice), "Pv" (coweight lattice), or explicit
generators between the two, and "GLn" with its standard Z^n lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .linalg import (
    Mat,
    Vec,
    dot,
    hermite_basis,
    identity_mat,
    in_row_span,
    mat_mul,
    mat_vec,
    reduce_mod_rows,
    solve,
    vec_mat,
    vec_sub,
)

_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
    "GL": (2, None),
}

_POSITIVE_COUNT = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def parse_group_descriptor(group: str) -> tuple[str, int]:
    """Split a descriptor like "C2" or "GL3" into (family, numeral)."""
    text = group.strip()
    family = "GL" if text[:2].upper() == "GL" else text[:1].upper()
    digits = text[len(family):]
    if family not in _RANK_RANGE or not digits.isdigit():
        raise ValueError(f"unrecognized group descriptor {group!r}")
    n = int(digits)
    lo, hi = _RANK_RANGE[family]
    if n < lo or (hi is not None and n > hi):
        raise ValueError(f"{family}{n} is out of range for family {family}")
    return family, n


def cartan_matrix(family: str, rank: int) -> Mat:
    """Cartan matrix with the pairing convention C[i][j] = <alpha_i^vee, alpha_j>."""
    c = [[2 * int(i == j) for j in range(rank)] for i in range(rank)]

    def bond(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        c[i][j], c[j][i] = cij, cji

    if family in ("A", "GL"):
        for i in range(rank - 1):
            bond(i, i + 1)
    elif family == "B":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 2, rank - 1, -1, -2)
    elif family == "C":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 2, rank - 1, -2, -1)
    elif family == "D":
        for i in range(rank - 2):
            bond(i, i + 1)
        bond(rank - 3, rank - 1)
    elif family == "E":
        # Chain 1-3-4-5-6(-7-8) with node 2 hanging off node 4 (1-based).
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        for i, j in zip(chain, chain[1:]):
            bond(i, j)
        bond(1, 3)
    elif family == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif family == "G":
        bond(0, 1, -1, -3)
    return tuple(tuple(row) for row in c)


def _abstract_positive_roots(cartan: Mat) -> list[tuple[Vec, Vec]]:
    """All positive roots as (root coords, coroot coords) in the simple bases.

    Closure under the simple reflections acting simultaneously on both
    coordinate vectors; a root is positive exactly when its simple-root
    coordinates are all nonnegative.
    """
    rank = len(cartan)
    seen: set[tuple[Vec, Vec]] = set()
    frontier = [(tuple(int(k == i) for k in range(rank)),) * 2 for i in range(rank)]
    seen.update(frontier)
    while frontier:
        nxt = []
        for b, g in frontier:
            for j in range(rank):
                pb = sum(cartan[j][k] * b[k] for k in range(rank))
                pg = sum(cartan[k][j] * g[k] for k in range(rank))
                rb = tuple(x - pb * int(k == j) for k, x in enumerate(b))
                rg = tuple(x - pg * int(k == j) for k, x in enumerate(g))
                if (rb, rg) not in seen:
                    seen.add((rb, rg))
                    nxt.append((rb, rg))
        frontier = nxt
    pos = [(b, g) for b, g in seen if all(x >= 0 for x in b)]
    pos.sort(key=lambda pair: (sum(pair[0]), pair[0]))
    return pos


@dataclass(frozen=True)
class FiniteWeylElt:
    """A finite Weyl group element acting on lattice coordinates.

    `word` is the canonical reduced word (0-based simple indices) obtained
    by repeatedly stripping the smallest left descent, so equal matrices
    always carry equal words.
    """

    rs: "RootSystem" = field(compare=False, repr=False)
    matrix: Mat
    word: tuple[int, ...]

    def apply(self, v: Vec) -> Vec:
        return mat_vec(self.matrix, v)

    @property
    def length(self) -> int:
        return len(self.word)

    def __mul__(self, other: "FiniteWeylElt") -> "FiniteWeylElt":
        if self.rs is not other.rs:
            raise ValueError("cannot compose elements over different root systems")
        return self.rs.finite_element(mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "FiniteWeylElt":
        inv = solve_inverse(self.matrix)
        return self.rs.finite_element(inv)


def solve_inverse(m: Mat) -> Mat:
    """Inverse of an integer matrix with determinant +-1."""
    n = len(m)
    cols = []
    for j in range(n):
        e = tuple(int(i == j) for i in range(n))
        x = solve(m, e)
        if x is None or any(f.denominator != 1 for f in x):
            raise ValueError("matrix is not invertible over the integers")
        cols.append(tuple(int(f) for f in x))
    return tuple(tuple(col[i] for col in cols) for i in range(n))


class RootSystem:
    """One root datum plus lattice, with every derived table precomputed.

    Instances compare by identity; `build_root_system` caches them so equal
    descriptors hand back the same object.
    """

    def __init__(self, family: str, n: int, lattice_name: str,
                 basis: Mat, label: str):
        self.family = family
        self.n = n
        self.rank = n - 1 if family == "GL" else n
        self.dim = len(basis[0]) if basis else 0
        self.lattice_name = lattice_name
        self.label = label
        self.basis = basis
        self.cartan = cartan_matrix(family, self.rank)

        if family == "GL":
            # Roots and coroots are e_i - e_{i+1} in the standard Z^n basis.
            simples = tuple(
                tuple(int(k == i) - int(k == i + 1) for k in range(n))
                for i in range(self.rank)
            )
            self.simple_roots = simples
            self.simple_coroots = simples
        else:
            # Basis rows live in coweight coordinates, where the pairing with
            # alpha_j is simply the j-th coordinate.
            self.simple_roots = tuple(
                tuple(row[j] for row in basis) for j in range(self.rank)
            )
            coroots = []
            for i in range(self.rank):
                x = solve(tuple(zip(*basis)), self.cartan[i])
                if x is None or any(f.denominator != 1 for f in x):
                    raise ValueError(
                        f"lattice for {label} does not contain the coroot lattice")
                coroots.append(tuple(int(f) for f in x))
            self.simple_coroots = tuple(coroots)

        self._check_cartan_consistency()
        self._build_root_tables()
        self._build_alcove_data()
        self._build_omega_data()

        self.length_cache: dict = {}
        self.bruhat_cache: dict = {}
        self.omega_rep_cache: dict = {}
        self._orbit_cache: dict[Vec, tuple[Vec, ...]] = {}
        self._support_cache: dict[Vec, tuple[Vec, ...]] = {}
        self._finite_cache: dict[Mat, FiniteWeylElt] = {}

    # -- construction ------------------------------------------------------

    def _check_cartan_consistency(self) -> None:
        for i in range(self.rank):
            for j in range(self.rank):
                got = dot(self.simple_roots[j], self.simple_coroots[i])
                if got != self.cartan[i][j]:
                    raise AssertionError(
                        f"realization of {self.label} disagrees with its "
                        f"Cartan matrix at ({i}, {j}): {got}")

    def _build_root_tables(self) -> None:
        abstract = _abstract_positive_roots(self.cartan)
        family, n = ("A", self.rank) if self.family == "GL" else (self.family, self.n)
        expected = _POSITIVE_COUNT[family](n)
        if len(abstract) != expected:
            raise AssertionError(
                f"{self.label}: found {len(abstract)} positive roots, "
                f"expected {expected}")
        self.pos_root_coords = tuple(b for b, _ in abstract)
        self.pos_coroot_coords = tuple(g for _, g in abstract)
        self.pos_roots = tuple(
            tuple(sum(b[k] * self.simple_roots[k][j] for k in range(self.rank))
                  for j in range(self.dim))
            for b, _ in abstract)
        self.pos_coroots = tuple(
            tuple(sum(g[k] * self.simple_coroots[k][j] for k in range(self.rank))
                  for j in range(self.dim))
            for _, g in abstract)
        self.heights = tuple(sum(b) for b, _ in abstract)
        self.theta_index = max(range(len(abstract)), key=lambda i: self.heights[i])
        self.two_rho = tuple(
            sum(f[j] for f in self.pos_roots) for j in range(self.dim))
        for i in range(self.rank):
            if dot(self.two_rho, self.simple_coroots[i]) != 2:
                raise AssertionError(f"{self.label}: 2*rho pairing check failed")

        self.simple_indices = tuple(
            self.pos_root_coords.index(tuple(int(k == i) for k in range(self.rank)))
            for i in range(self.rank))
        self.refl_mats = tuple(
            tuple(tuple(int(i == j) - g[i] * f[j] for j in range(self.dim))
                  for i in range(self.dim))
            for f, g in zip(self.pos_roots, self.pos_coroots))
        self.refl_by_matrix = {m: i for i, m in enumerate(self.refl_mats)}
        self._pos_root_set = set(self.pos_roots)

    def _build_alcove_data(self) -> None:
        # Any point with every simple pairing equal to 1, rescaled so the
        # highest-root pairing lands strictly below 1, sits inside the base
        # alcove.  Free coordinates (the GL center) stay at zero.
        x = solve(self.simple_roots, (1,) * self.rank)
        if x is None:
            raise AssertionError(f"{self.label}: simple roots are degenerate")
        height = sum(self.pos_root_coords[self.theta_index])
        self.base_point = tuple(f / (height + 1) for f in x)

    def _build_omega_data(self) -> None:
        self.omega_basis = hermite_basis(self.simple_coroots, self.dim)
        if len(self.omega_basis) != self.rank:
            raise AssertionError(f"{self.label}: coroot lattice rank mismatch")
        self.free_rank = self.dim - self.rank
        self.fundamental_group_order = self._torsion_order()
        # Rational fundamental-weight coefficients against the simple roots,
        # used for the dominant-layer box bounds.
        inv_cols = []
        for j in range(self.rank):
            e = tuple(int(i == j) for i in range(self.rank))
            col = solve(self.cartan, e)
            assert col is not None
            inv_cols.append(col)
        self.fw_coefficients = tuple(
            tuple(inv_cols[j][k] for k in range(self.rank))
            for j in range(self.rank))

    def _torsion_order(self) -> int:
        """Order of the torsion part of L modulo the coroot lattice.

        Equals the gcd of the maximal minors of the coroot coordinate
        matrix, i.e. the product of its Smith invariants.
        """
        rows = self.omega_basis
        g = 0
        for cols in itertools.combinations(range(self.dim), self.rank):
            sub = tuple(tuple(row[c] for c in cols) for row in rows)
            g = gcd(g, abs(_int_det(sub)))
        return g

    # -- basic queries -----------------------------------------------------

    def validate_coweight(self, v) -> Vec:
        out = tuple(v)
        if len(out) != self.dim or not all(isinstance(a, int) for a in out):
            raise ValueError(
                f"expected {self.dim} integer coordinates for {self.label}, "
                f"got {v!r}")
        return out

    def pairing(self, root_index: int, v: Vec) -> int:
        return dot(self.pos_roots[root_index], v)

    def reflect(self, root_index: int, v: Vec) -> Vec:
        f, g = self.pos_roots[root_index], self.pos_coroots[root_index]
        c = dot(f, v)
        return tuple(a - c * b for a, b in zip(v, g))

    def is_dominant(self, v: Vec) -> bool:
        return all(dot(f, v) >= 0 for f in self.simple_roots)

    def is_negative_root(self, functional: Vec) -> bool:
        return tuple(-a for a in functional) in self._pos_root_set

    # -- finite Weyl group -------------------------------------------------

    def finite_element(self, matrix: Mat) -> FiniteWeylElt:
        cached = self._finite_cache.get(matrix)
        if cached is None:
            cached = FiniteWeylElt(self, matrix, self._canonical_word(matrix))
            self._finite_cache[matrix] = cached
        return cached

    def simple_finite(self, i: int) -> FiniteWeylElt:
        return self.finite_element(self.refl_mats[self.simple_indices[i]])

    def finite_identity(self) -> FiniteWeylElt:
        return self.finite_element(identity_mat(self.dim))

    def _canonical_word(self, matrix: Mat) -> tuple[int, ...]:
        word = []
        m = matrix
        ident = identity_mat(self.dim)
        while m != ident:
            for i in range(self.rank):
                # i is a left descent iff alpha_i pulled back through m is
                # a negative root.
                if self.is_negative_root(vec_mat(self.simple_roots[i], m)):
                    word.append(i)
                    m = mat_mul(self.refl_mats[self.simple_indices[i]], m)
                    break
            else:
                raise AssertionError("matrix is not a Weyl group element")
        return tuple(word)

    def finite_from_word(self, word) -> FiniteWeylElt:
        m = identity_mat(self.dim)
        for i in word:
            if not 0 <= i < self.rank:
                raise ValueError(f"simple index {i} out of range for {self.label}")
            m = mat_mul(m, self.refl_mats[self.simple_indices[i]])
        return self.finite_element(m)

    def dominant_representative(self, v: Vec) -> tuple[Vec, FiniteWeylElt]:
        """The dominant point of the orbit, and a w with w(v) dominant."""
        x = self.validate_coweight(v)
        m = identity_mat(self.dim)
        while True:
            i = next((i for i in range(self.rank)
                      if dot(self.simple_roots[i], x) < 0), None)
            if i is None:
                return x, self.finite_element(m)
            x = self.reflect(self.simple_indices[i], x)
            m = mat_mul(self.refl_mats[self.simple_indices[i]], m)

    def weyl_orbit(self, v: Vec) -> tuple[Vec, ...]:
        v = self.validate_coweight(v)
        key = self.dominant_representative(v)[0]
        cached = self._orbit_cache.get(key)
        if cached is None:
            seen = {key}
            frontier = [key]
            while frontier:
                nxt = []
                for x in frontier:
                    for i in self.simple_indices:
                        y = self.reflect(i, x)
                        if y not in seen:
                            seen.add(y)
                            nxt.append(y)
                frontier = nxt
            cached = tuple(sorted(seen))
            self._orbit_cache[key] = cached
        return cached

    # -- dominance order and saturation --------------------------------------

    def coroot_coefficients(self, v: Vec) -> tuple[Fraction, ...] | None:
        """Coefficients of v against the simple coroots, or None."""
        return solve(tuple(zip(*self.simple_coroots)), v)

    def dominance_leq(self, lam: Vec, mu: Vec) -> bool:
        """Whether mu - lam is a nonnegative integer sum of simple coroots."""
        coeffs = self.coroot_coefficients(vec_sub(mu, lam))
        return coeffs is not None and all(
            f.denominator == 1 and f >= 0 for f in coeffs)

    def dominant_layer(self, mu: Vec) -> tuple[Vec, ...]:
        """All dominant lattice points below mu in the dominance order."""
        mu = self.validate_coweight(mu)
        if not self.is_dominant(mu):
            raise ValueError(f"{mu} is not dominant for {self.label}")
        pairings = [dot(f, mu) for f in self.simple_roots]
        bounds = []
        for j in range(self.rank):
            b = sum(m * p for m, p in zip(self.fw_coefficients[j], pairings))
            bounds.append(int(b))  # floor: b >= 0 because mu is dominant
        layer = []
        for cs in itertools.product(*(range(b + 1) for b in bounds)):
            nu = mu
            for c, g in zip(cs, self.simple_coroots):
                if c:
                    nu = tuple(a - c * b for a, b in zip(nu, g))
            if self.is_dominant(nu):
                layer.append(nu)
        return tuple(sorted(layer))

    def weight_support(self, mu: Vec) -> tuple[Vec, ...]:
        """The saturated, Weyl-stable set generated below a dominant mu."""
        mu = self.validate_coweight(mu)
        cached = self._support_cache.get(mu)
        if cached is None:
            points: set[Vec] = set()
            for nu in self.dominant_layer(mu):
                points.update(self.weyl_orbit(nu))
            cached = tuple(sorted(points))
            self._support_cache[mu] = cached
        return cached

    def is_minuscule(self, mu: Vec) -> bool:
        mu = self.validate_coweight(mu)
        return self.is_dominant(mu) and all(
            dot(f, mu) <= 1 for f in self.pos_roots)

    # -- component group of the lattice --------------------------------------

    def omega_label(self, v: Vec) -> Vec:
        """Canonical representative of v modulo the coroot lattice."""
        return reduce_mod_rows(v, self.omega_basis)

    def group_summary(self) -> dict:
        return {
            "group": self.label,
            "family": self.family,
            "rank": self.rank,
            "lattice": self.lattice_name,
            "lattice_dim": self.dim,
            "positive_roots": len(self.pos_roots),
            "component_torsion_order": self.fundamental_group_order,
            "component_free_rank": self.free_rank,
        }

    def __repr__(self) -> str:
        return f"RootSystem({self.label}, lattice={self.lattice_name})"


def _int_det(m: Mat) -> int:
    """Determinant of a small integer matrix, exactly."""
    if not m:
        return 1
    size = len(m)
    rows = [[Fraction(a) for a in row] for row in m]
    det = Fraction(1)
    for c in range(size):
        pr = next((i for i in range(c, size) if rows[i][c] != 0), None)
        if pr is None:
            return 0
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, size):
            if rows[i][c]:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    assert det.denominator == 1
    return int(det)


_SYSTEM_CACHE: dict[tuple, RootSystem] = {}


def build_root_system(group: str, lattice: str | None = None,
                      generators=None) -> RootSystem:
    """Construct (or fetch) a root system for a descriptor like "C2" or "GL3".

    `lattice` is "Qv" (default) or "Pv" for the simple families and is
    ignored-but-checked for GL; `generators` optionally lists lattice
    generators in coweight coordinates for the simple families, and must
    span a lattice containing every simple coroot.
    """
    family, n = parse_group_descriptor(group)
    label = f"{family}{n}"
    if family == "GL":
        if lattice not in (None, "GL"):
            raise ValueError(f"{label} only supports its standard lattice")
        if generators is not None:
            raise ValueError(f"{label} does not accept explicit generators")
        key = (family, n, "GL", None)
        if key not in _SYSTEM_CACHE:
            _SYSTEM_CACHE[key] = RootSystem(family, n, "GL",
                                            identity_mat(n), label)
        return _SYSTEM_CACHE[key]

    rank = n
    cartan = cartan_matrix(family, rank)
    if generators is not None:
        gens = tuple(tuple(g) for g in generators)
        if any(len(g) != rank or not all(isinstance(a, int) for a in g)
               for g in gens):
            raise ValueError(
                f"generators for {label} must be integer vectors of length {rank}")
        basis = hermite_basis(gens, rank)
        if len(basis) != rank:
            raise ValueError(f"generators for {label} do not span full rank")
        if not all(in_row_span(row, basis) for row in cartan):
            raise ValueError(
                f"generator lattice for {label} misses part of the coroot lattice")
        name = "custom"
        key = (family, n, name, basis)
    elif lattice in (None, "Qv"):
        basis = cartan
        name = "Qv"
        key = (family, n, name, None)
    elif lattice == "Pv":
        basis = identity_mat(rank)
        name = "Pv"
        key = (family, n, name, None)
    else:
        raise ValueError(f"unknown lattice {lattice!r} for {label}")
    if key not in _SYSTEM_CACHE:
        _SYSTEM_CACHE[key] = RootSystem(family, n, name, basis, label)
    return _SYSTEM_CACHE[key]
