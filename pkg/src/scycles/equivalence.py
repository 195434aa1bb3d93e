"""PGL_2(Z_S) membership and equivalence of ordered tuples of points.

A primitive integer matrix represents an element of PGL_2(Z_S) exactly when the
prime support of its determinant lies in S (see README for the argument), so
membership is a determinant check once matrices are kept in primitive form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .projline import ProjPoint, ZERO, _require_distinct, cross_det, pairwise_ideals
from .sarith import SPrimeSet, egcd, split_s_part


@dataclass(frozen=True)
class Mobius:
    """Projective 2x2 matrix ``[[a, b], [c, d]]`` acting by ``[x:y] -> [ax+by : cx+dy]``."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        a, b, c, d = (int(v) for v in (self.a, self.b, self.c, self.d))
        if a * d - b * c == 0:
            raise ValueError("singular matrix")
        g = math.gcd(a, b, c, d)
        a, b, c, d = a // g, b // g, c // g, d // g
        first = next(v for v in (a, b, c, d) if v)
        if first < 0:
            a, b, c, d = -a, -b, -c, -d
        for name, v in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, v)

    @classmethod
    def from_entries(cls, a, b, c, d) -> "Mobius":
        """Accept rational entries; the projective class is unchanged by clearing denominators."""
        fr = [Fraction(v) for v in (a, b, c, d)]
        den = math.lcm(*(f.denominator for f in fr))
        return cls(*(int(f * den) for f in fr))

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __call__(self, P: ProjPoint) -> ProjPoint:
        return ProjPoint(self.a * P.x + self.b * P.y, self.c * P.x + self.d * P.y)

    def apply_vector(self, x, y):
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def __matmul__(self, other: "Mobius") -> "Mobius":
        a, b, c, d = self.entries
        e, f, g, h = other.entries
        return Mobius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def inverse(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def __str__(self):
        return f"(({self.a},{self.b}),({self.c},{self.d}))"


IDENTITY = Mobius(1, 0, 0, 1)
SWAP = Mobius(0, 1, 1, 0)


def in_pgl2_zs(M: Mobius, S: SPrimeSet) -> bool:
    return split_s_part(M.det, S)[1] == 1


def _frame(P: ProjPoint, Q: ProjPoint, R: ProjPoint) -> Mobius:
    # columns l1*P, l2*Q with l1*P + l2*Q = R: sends [1:0], [0:1], [1:1] to P, Q, R
    l1 = cross_det(R, Q)
    l2 = cross_det(P, R)
    return Mobius(l1 * P.x, l2 * Q.x, l1 * P.y, l2 * Q.y)


def mobius_from_three_points(src: Sequence[ProjPoint], dst: Sequence[ProjPoint]) -> Mobius:
    if len(src) != 3 or len(dst) != 3:
        raise ValueError("need exactly three source and three target points")
    _require_distinct(src)
    _require_distinct(dst)
    return _frame(*dst) @ _frame(*src).inverse()


def point_to_infinity(P: ProjPoint) -> Mobius:
    """Determinant-one matrix ``[[r_x, r_y], [-y, x]]`` with ``x r_x + y r_y = 1``; sends P to [1:0]."""
    g, rx, ry = egcd(P.x, P.y)
    assert g == 1
    return Mobius(rx, ry, -P.y, P.x)


def _unit_subgroup_witness(target: int, modulus: int, S: SPrimeSet) -> Fraction | None:
    """Find an S-unit ``eps`` (an integer ``±prod p^e``) with ``eps ≡ target (mod modulus)``.

    Breadth-first closure of {-1} and the S-primes inside (Z/modulus)^*.
    """
    target %= modulus
    gens = [(-1) % modulus] + [p % modulus for p in S]
    reps = {1 % modulus: 1}
    frontier = [1 % modulus]
    while frontier and target not in reps:
        nxt = []
        for r in frontier:
            for g, gen in zip(gens, [-1] + list(S)):
                s = r * g % modulus
                if s not in reps:
                    reps[s] = reps[r] * gen
                    nxt.append(s)
        frontier = nxt
    return reps.get(target)


def _equivalent_pairs(tA, tB, S: SPrimeSet) -> Mobius | None:
    to_zero_A = SWAP @ point_to_infinity(tA[0])
    to_zero_B = SWAP @ point_to_infinity(tB[0])
    Q = to_zero_A(tA[1])
    R = to_zero_B(tB[1])
    a, b, a2, b2 = Q.x, Q.y, R.x, R.y
    s_part, g = split_s_part(a, S)
    s_part2, g2 = split_s_part(a2, S)
    if g != g2:
        return None
    if g == 1:
        eps = 1
    else:
        # stabilizer of [0:1] is ((alpha,0),(gamma,delta)); need delta*b ≡ b2 (mod g)
        eps = _unit_subgroup_witness(b2 * pow(b, -1, g), g, S)
        if eps is None:
            return None
    alpha = Fraction(a2, a)
    gamma = (b2 - eps * b) / Fraction(a)
    stab = Mobius.from_entries(alpha, 0, gamma, eps)
    return to_zero_B.inverse() @ stab @ to_zero_A


def tuples_equivalent(tA: Sequence[ProjPoint], tB: Sequence[ProjPoint], S: SPrimeSet) -> Mobius | None:
    """Return ``M`` in PGL_2(Z_S) with ``M(tA[i]) == tB[i]`` for all i, or None."""
    if len(tA) != len(tB):
        raise ValueError("tuples have different lengths")
    _require_distinct(tA)
    _require_distinct(tB)
    n = len(tA)
    if n == 0:
        return IDENTITY
    if pairwise_ideals(tA, S) != pairwise_ideals(tB, S):
        return None
    if n == 1:
        M = point_to_infinity(tB[0]).inverse() @ point_to_infinity(tA[0])
    elif n == 2:
        M = _equivalent_pairs(tA, tB, S)
        if M is None:
            return None
    else:
        M = mobius_from_three_points(tA[:3], tB[:3])
        if not in_pgl2_zs(M, S):
            return None
        if any(M(P) != Q for P, Q in zip(tA[3:], tB[3:])):
            return None
    assert in_pgl2_zs(M, S) and all(M(P) == Q for P, Q in zip(tA, tB))
    return M


def tuple_key(points: Sequence[ProjPoint]):
    return tuple((P.x, P.y) for P in points)


@dataclass
class EquivalenceClass:
    representative: tuple[ProjPoint, ...]
    members: list = field(default_factory=list)


def classify(items: Iterable, S: SPrimeSet) -> list[EquivalenceClass]:
    """Partition cycles (or bare point tuples) into PGL_2(Z_S)-classes of their point tuples.

    The representative of each class is its lexicographically least canonical tuple;
    classes are returned ordered by length and then by representative.
    """
    classes: list[EquivalenceClass] = []
    for item in items:
        pts = tuple(getattr(item, "points", item))
        for cls in classes:
            if len(cls.representative) == len(pts) and tuples_equivalent(pts, cls.representative, S):
                cls.members.append(item)
                if tuple_key(pts) < tuple_key(cls.representative):
                    cls.representative = pts
                break
        else:
            classes.append(EquivalenceClass(pts, [item]))
    classes.sort(key=lambda c: (len(c.representative), tuple_key(c.representative)))
    return classes
