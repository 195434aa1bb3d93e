"""Points of P^1(Q), p-adic logarithmic distance and the ideals attached to tuples."""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .sarith import SIdeal, SPrimeSet, factor, split_s_part, vp

INF = math.inf


@dataclass(frozen=True)
class ProjPoint:
    """A point ``[x:y]`` stored with coprime integer coordinates.

    Canonical sign: ``y > 0``, or ``y == 0`` and ``x == 1``.  Construction
    normalizes any nonzero integer pair, so ``ProjPoint(-4, -6) == ProjPoint(2, 3)``.
    """

    x: int
    y: int

    def __post_init__(self):
        x, y = int(self.x), int(self.y)
        if x == 0 and y == 0:
            raise ValueError("[0:0] is not a point of the projective line")
        g = math.gcd(x, y)
        x, y = x // g, y // g
        if y < 0 or (y == 0 and x < 0):
            x, y = -x, -y
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @property
    def is_infinity(self) -> bool:
        return self.y == 0

    def affine(self) -> Fraction | None:
        """``x/y`` as a Fraction, or None for the point at infinity."""
        return None if self.y == 0 else Fraction(self.x, self.y)

    def sort_key(self):
        return (self.y == 0, self.affine() or 0)

    def __str__(self):
        return f"[{self.x}:{self.y}]"

    def short(self) -> str:
        if self.y == 0:
            return "inf"
        return str(self.x) if self.y == 1 else f"{self.x}/{self.y}"


INFINITY = ProjPoint(1, 0)
ZERO = ProjPoint(0, 1)
ONE = ProjPoint(1, 1)


def make_point(value) -> ProjPoint:
    """Build a point from a rational, ``"inf"``/``None``/``math.inf``, an ``(x, y)`` pair or text."""
    if isinstance(value, ProjPoint):
        return value
    if value is None or (isinstance(value, float) and math.isinf(value)):
        return INFINITY
    if isinstance(value, str):
        return parse_point(value)
    if isinstance(value, tuple):
        x, y = value
        xf, yf = Fraction(x), Fraction(y)
        den = math.lcm(xf.denominator, yf.denominator)
        return ProjPoint(int(xf * den), int(yf * den))
    q = Fraction(value)
    return ProjPoint(q.numerator, q.denominator)


_BRACKET = re.compile(r"^\[\s*([+-]?\d+)\s*:\s*([+-]?\d+)\s*\]$")
_AFFINE = re.compile(r"^([+-]?\d+)(?:/([+-]?\d+))?$")


def parse_point(text: str) -> ProjPoint:
    """Parse ``"a/b"``, ``"a"``, ``"inf"`` or ``"[a:b]"``."""
    t = text.strip()
    if t.lower() in ("inf", "infinity", "oo"):
        return INFINITY
    m = _BRACKET.match(t)
    if m:
        return ProjPoint(int(m.group(1)), int(m.group(2)))
    m = _AFFINE.match(t)
    if m:
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ValueError(f"bad point {text!r}: zero denominator")
        return ProjPoint(int(m.group(1)), den)
    raise ValueError(f"cannot parse point {text!r}")


def parse_tuple(text: str) -> tuple[ProjPoint, ...]:
    """Points separated by whitespace or commas."""
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    return tuple(parse_point(t) for t in tokens)


def cross_det(P: ProjPoint, Q: ProjPoint) -> int:
    return P.x * Q.y - Q.x * P.y


def delta_p(P: ProjPoint, Q: ProjPoint, p: int) -> int | float:
    """p-adic logarithmic distance; ``math.inf`` exactly when ``P == Q``."""
    if P == Q:
        return INF
    # coordinates are coprime, so the min-valuation corrections vanish
    return vp(cross_det(P, Q), p)


def ideal_between(P: ProjPoint, Q: ProjPoint, S: SPrimeSet) -> SIdeal:
    if P == Q:
        raise ValueError("ideal undefined for equal points")
    return SIdeal(split_s_part(cross_det(P, Q), S)[1], S)


def _require_distinct(points: Sequence[ProjPoint]):
    seen = {}
    for i, P in enumerate(points):
        if P in seen:
            raise ValueError(f"repeated point {P} at positions {seen[P]} and {i}")
        seen[P] = i


def tuple_good_reduction(points: Sequence[ProjPoint], S: SPrimeSet):
    """Decide good reduction outside S of an n-tuple.

    Returns ``(ok, witnesses)`` where ``witnesses`` lists each bad prime once with
    the first index pair ``(i, j)`` whose reductions collide modulo that prime.
    """
    _require_distinct(points)
    witnesses: dict[int, tuple[int, int]] = {}
    for i, j in itertools.combinations(range(len(points)), 2):
        rest = split_s_part(cross_det(points[i], points[j]), S)[1]
        if rest == 1:
            continue
        for p in factor(rest).support:
            witnesses.setdefault(p, (i, j))
    return not witnesses, sorted(witnesses.items())


def cross_ratio(P1: ProjPoint, P2: ProjPoint, P3: ProjPoint, P4: ProjPoint) -> Fraction | float:
    """``(d13 d24) / (d12 d34)`` with ``dij`` the cross-determinant of ``Pi, Pj``."""
    _require_distinct((P1, P2, P3, P4))
    num = cross_det(P1, P3) * cross_det(P2, P4)
    den = cross_det(P1, P2) * cross_det(P3, P4)
    if den == 0:
        return INF
    return Fraction(num, den)


def tuple_form_discriminant(points: Sequence[ProjPoint]) -> int:
    """Product of squared pairwise cross-determinants (discriminant of prod(x_i X - y_i Y))."""
    if len(points) < 2:
        raise ValueError("need at least two points")
    _require_distinct(points)
    out = 1
    for P, Q in itertools.combinations(points, 2):
        out *= cross_det(P, Q) ** 2
    return out


def pairwise_ideals(points: Sequence[ProjPoint], S: SPrimeSet) -> tuple[int, ...]:
    """Generators of ``ideal_between`` for all pairs ``i < j``, in lexicographic pair order."""
    return tuple(
        split_s_part(cross_det(points[i], points[j]), S)[1]
        for i, j in itertools.combinations(range(len(points)), 2)
    )


def reduce_mod(P: ProjPoint, p: int) -> tuple[int, int]:
    """Reduction of P modulo p, normalized so the last nonzero coordinate is 1."""
    x, y = P.x % p, P.y % p
    if y:
        return (x * pow(y, -1, p) % p, 1)
    return (1, 0)


def cross_support(points: Sequence[ProjPoint]) -> tuple[int, ...]:
    """Primes dividing some pairwise cross-determinant."""
    primes: set[int] = set()
    for P, Q in itertools.combinations(points, 2):
        primes.update(factor(cross_det(P, Q)).support)
    return tuple(sorted(primes))

