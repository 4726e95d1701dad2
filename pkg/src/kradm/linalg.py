"""Exact linear algebra on tiny integer matrices.

Everything in the package pairs lattice points against root functionals, so
the only algebra needed is integer dot products, rational Gaussian
elimination, and an integer Hermite normal form for lattice membership.
Matrices here have rank at most 8; clarity beats asymptotics throughout.

Vectors are tuples of ints (or Fractions where noted); matrices are tuples
of row tuples.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v, strict=True))


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(dot(row, v) for row in m)


def vec_mat(u: Sequence, m: Sequence[Sequence]) -> tuple:
    """Row vector times matrix; this is how functionals pull back along maps."""
    return tuple(dot(u, col) for col in zip(*m))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Mat:
    cols = tuple(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def identity_mat(n: int) -> Mat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def solve(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """One rational solution x of a @ x = b, or None if inconsistent.

    Underdetermined systems return the solution with zeros in the free
    coordinates, which keeps downstream output deterministic.
    """
    if not a:
        return ()
    rows = [[Fraction(x) for x in row] + [Fraction(y)]
            for row, y in zip(a, b, strict=True)]
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = rows[i][ncols]
    return tuple(x)


def hermite_basis(gens: Iterable[Sequence[int]], dim: int) -> Mat:
    """Row-style Hermite normal form basis of the integer row span.

    Rows come out in echelon order with positive pivots and the entries
    above each pivot reduced into [0, pivot), so the basis is a canonical
    invariant of the span.
    """
    pool = [list(g) for g in gens if any(g)]
    basis: list[list[int]] = []
    for c in range(dim):
        live = [row for row in pool if row[c] != 0]
        pool = [row for row in pool if row[c] == 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda row: abs(row[c]))
            piv = live[0]
            keep = [piv]
            for row in live[1:]:
                q = row[c] // piv[c]
                red = [a - q * b for a, b in zip(row, piv)]
                (keep if red[c] != 0 else pool).append(red)
            live = keep
        piv = live[0]
        if piv[c] < 0:
            piv = [-a for a in piv]
        basis.append(piv)
    for i in reversed(range(len(basis))):
        c = next(j for j, a in enumerate(basis[i]) if a != 0)
        for k in range(i):
            q = basis[k][c] // basis[i][c]
            if q:
                basis[k] = [a - q * b for a, b in zip(basis[k], basis[i])]
    return tuple(tuple(row) for row in basis)


def reduce_mod_rows(v: Sequence[int], basis: Mat) -> Vec:
    """Canonical representative of v modulo the row span of a Hermite basis."""
    out = list(v)
    for row in basis:
        c = next(j for j, a in enumerate(row) if a != 0)
        q = out[c] // row[c]
        if q:
            out = [a - q * b for a, b in zip(out, row)]
    return tuple(out)


def in_row_span(v: Sequence[int], basis: Mat) -> bool:
    return not any(reduce_mod_rows(v, basis))
