"""Extended affine Weyl group elements, length, Bruhat order, and covers.

Elements are stored in the canonical form t_nu * w and act on the apartment
by p |-> w(p) - nu; with this sign the translation by a dominant coweight has
length <2 rho, nu> and the standard length formula below holds verbatim.

The affine simple letters are 0..rank, letter 0 being the level-one
reflection in the highest root; length-zero elements represent the classes
of L modulo the coroot lattice and are addressed by their canonical labels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import floor

from .linalg import dot, identity_mat, mat_mul, mat_vec, vec_mat
from .rootsys import Mat, RootSystem, Vec, solve_inverse


@dataclass(frozen=True)
class AffineElt:
    """t_translation * (finite part with the given matrix)."""

    rs: RootSystem = field(compare=False, repr=False)
    matrix: Mat
    translation: Vec

    def __mul__(self, other: "AffineElt") -> "AffineElt":
        if self.rs is not other.rs:
            raise ValueError("cannot compose elements over different root systems")
        # (t_a v)(t_b w) = t_{a + v(b)} vw
        return AffineElt(
            self.rs,
            mat_mul(self.matrix, other.matrix),
            tuple(a + c for a, c in zip(self.translation,
                                        mat_vec(self.matrix, other.translation))),
        )

    def inverse(self) -> "AffineElt":
        inv = solve_inverse(self.matrix)
        return AffineElt(self.rs, inv,
                         tuple(-a for a in mat_vec(inv, self.translation)))

    def apply(self, point):
        """Image of an apartment point (ints or Fractions)."""
        moved = mat_vec(self.matrix, point)
        return tuple(a - t for a, t in zip(moved, self.translation))

    def __repr__(self) -> str:
        return f"AffineElt(t{self.translation} * w{self.matrix})"


@dataclass(frozen=True, order=True)
class Reflection:
    """The affine reflection fixing <p, root> = level (root by index)."""

    root_index: int
    level: int


def identity_elt(rs: RootSystem) -> AffineElt:
    return AffineElt(rs, identity_mat(rs.dim), (0,) * rs.dim)


def translation_elt(rs: RootSystem, nu) -> AffineElt:
    return AffineElt(rs, identity_mat(rs.dim), rs.validate_coweight(nu))


def finite_elt(rs: RootSystem, matrix: Mat) -> AffineElt:
    return AffineElt(rs, matrix, (0,) * rs.dim)


def reflection_elt(rs: RootSystem, root_index: int, level: int) -> AffineElt:
    """s_{beta,k} = t_{-k beta^vee} s_beta; fixes the hyperplane <p,beta> = k."""
    coroot = rs.pos_coroots[root_index]
    return AffineElt(rs, rs.refl_mats[root_index],
                     tuple(-level * a for a in coroot))


def simple_affine(rs: RootSystem, letter: int) -> AffineElt:
    if letter == 0:
        return reflection_elt(rs, rs.theta_index, 1)
    if 1 <= letter <= rs.rank:
        return reflection_elt(rs, rs.simple_indices[letter - 1], 0)
    raise ValueError(f"affine letter {letter} out of range for {rs.label}")


def length(x: AffineElt) -> int:
    """Number of root hyperplanes separating the base alcove from its image.

    Computed by the closed formula: for x = t_nu w the contribution of a
    positive root beta is |<nu, beta>| when w^{-1}(beta) is positive and
    |<nu, beta> + 1| when it is negative.
    """
    rs = x.rs
    cached = rs.length_cache.get(x)
    if cached is None:
        total = 0
        for f in rs.pos_roots:
            c = dot(f, x.translation)
            if rs.is_negative_root(vec_mat(f, x.matrix)):
                c += 1
            total += abs(c)
        rs.length_cache[x] = cached = total
    return cached


def length_by_separation(x: AffineElt) -> int:
    """Independent length computation: literally count separating walls.

    Takes an exact rational interior point of the base alcove, maps it
    through x, and counts the integers strictly between the two pairings
    against each positive root.
    """
    rs = x.rs
    p = rs.base_point
    q = x.apply(p)
    total = 0
    for f in rs.pos_roots:
        a, b = dot(f, p), dot(f, q)
        lo, hi = (a, b) if a <= b else (b, a)
        total += floor(hi) - floor(lo)
    return total


def left_descents(x: AffineElt) -> tuple[int, ...]:
    lx = length(x)
    return tuple(i for i in range(x.rs.rank + 1)
                 if length(simple_affine(x.rs, i) * x) < lx)


def omega_label(x: AffineElt) -> Vec:
    """Class of x in L modulo the coroot lattice, as a canonical lattice point."""
    return x.rs.omega_label(x.translation)


def omega_representative(rs: RootSystem, label) -> AffineElt:
    """The unique length-zero element whose class has the given label."""
    label = rs.omega_label(rs.validate_coweight(label))
    cached = rs.omega_rep_cache.get(label)
    if cached is None:
        x = translation_elt(rs, label)
        while length(x) > 0:
            i = min(left_descents(x))
            x = simple_affine(rs, i) * x
        rs.omega_rep_cache[label] = cached = x
    return cached


def reduced_word(x: AffineElt) -> tuple[tuple[int, ...], Vec]:
    """Canonical reduced word (affine letters) plus the class label.

    Greedy smallest-left-descent stripping; the stripped residue is the
    length-zero representative of the class, so
    `element_from_word(rs, word, label)` rebuilds x exactly.
    """
    word: list[int] = []
    m = x
    while length(m) > 0:
        i = min(left_descents(m))
        word.append(i)
        m = simple_affine(x.rs, i) * m
    return tuple(word), omega_label(x)


def element_from_word(rs: RootSystem, word, label=None) -> AffineElt:
    x = identity_elt(rs) if label is None else omega_representative(rs, label)
    for i in reversed(tuple(word)):
        x = simple_affine(rs, i) * x
    return x


def element_to_obj(x: AffineElt) -> dict:
    """JSON-ready form: 1-based reduced word of the finite part, translation."""
    finite = x.rs.finite_element(x.matrix)
    return {
        "finite_word": [i + 1 for i in finite.word],
        "translation": list(x.translation),
    }


def element_from_obj(rs: RootSystem, obj: dict) -> AffineElt:
    word = [int(i) - 1 for i in obj["finite_word"]]
    finite = rs.finite_from_word(word)
    nu = rs.validate_coweight(tuple(int(a) for a in obj["translation"]))
    return AffineElt(rs, finite.matrix, nu)


def bruhat_leq(x: AffineElt, y: AffineElt) -> bool:
    """Bruhat order on the extended group: classes must match, then the
    standard descent recursion runs inside the affine part."""
    if x.rs is not y.rs:
        raise ValueError("cannot compare elements over different root systems")
    if omega_label(x) != omega_label(y):
        return False
    return _leq(x, y)


def _leq(x: AffineElt, y: AffineElt) -> bool:
    if x == y:
        return True
    if length(x) >= length(y):
        return False
    memo = x.rs.bruhat_cache
    key = (x, y)
    hit = memo.get(key)
    if hit is None:
        rs = x.rs
        i = min(left_descents(y))
        s = simple_affine(rs, i)
        sy = s * y
        sx = s * x
        hit = _leq(sx, sy) if length(sx) < length(x) else _leq(x, sy)
        memo[key] = hit
    return hit


def lower_covers(y: AffineElt) -> tuple[tuple[Reflection, AffineElt], ...]:
    """All (reflection, x) with x = reflection * y one step below y.

    Every cover arises from a reflection whose hyperplane level is bounded
    by the translation pairings, so scanning levels within that bound plus
    slack is exhaustive.
    """
    rs = y.rs
    ly = length(y)
    if ly == 0:
        return ()
    bound = max(abs(dot(f, y.translation)) for f in rs.pos_roots) + 2
    out = []
    for idx in range(len(rs.pos_roots)):
        for k in range(-bound, bound + 1):
            x = reflection_elt(rs, idx, k) * y
            if length(x) == ly - 1:
                out.append((Reflection(idx, k), x))
    out.sort(key=lambda pair: pair[0])
    return tuple(out)
