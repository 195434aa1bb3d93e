"""Orbits, cycles, rational periodic points and the invariants attached to a cycle.

For a cycle ``(P_0, ..., P_{n-1})`` with canonical coordinates ``P_k = [x_k : y_k]``
write ``d(j, k) = x_j y_k - x_k y_j`` (indices mod n).  The ledger collects

* ``C_i = d(0, i) / d(0, 1)``,
* ``u[j, j+i] = d(j, j+i) / d(0, i)``,
* ``L[i, j] = d(0, i*j) / d(0, j)``,
* the ideals ``I_i`` generated by the part of ``d(0, i)`` prime to S,

and checks the integrality/unit relations that hold for every cycle of a map with
good reduction outside S.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .equivalence import Mobius
from .projline import ProjPoint, _require_distinct, cross_det, cross_support, delta_p
from .ratmap import HomogMap, bad_primes, form_eval, iterate, resultant
from .sarith import (
    DEFAULT_RHO_BUDGET,
    SIdeal,
    SPrimeSet,
    factor_partial,
    is_s_integer,
    is_s_unit,
    split_s_part,
)

DEFAULT_HEIGHT_CAP = 10**12
DEGREE_GUARD = 10**4


class CycleError(ValueError):
    pass


class LedgerError(ValueError):
    pass


@dataclass(frozen=True)
class Cycle:
    map: HomogMap
    points: tuple[ProjPoint, ...]

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise CycleError("a cycle needs at least one point")
        try:
            _require_distinct(self.points)
        except ValueError as exc:
            raise CycleError(str(exc)) from None
        n = len(self.points)
        for i, P in enumerate(self.points):
            img = self.map(P)
            if img != self.points[(i + 1) % n]:
                raise CycleError(f"map sends point {i} = {P} to {img}, expected {self.points[(i + 1) % n]}")

    def __len__(self):
        return len(self.points)

    def d(self, j: int, k: int) -> int:
        n = len(self.points)
        return cross_det(self.points[j % n], self.points[k % n])


class Outcome(enum.Enum):
    CYCLE_FOUND = "cycle-found"
    HEIGHT_EXCEEDED = "height-exceeded"
    STEP_LIMIT = "step-limit"


@dataclass(frozen=True)
class OrbitResult:
    tail: tuple[ProjPoint, ...]
    cycle: Cycle | None
    outcome: Outcome
    visited: tuple[ProjPoint, ...] = ()


def orbit(phi: HomogMap, P: ProjPoint, max_steps: int = 1000, height_cap: int = DEFAULT_HEIGHT_CAP) -> OrbitResult:
    """Iterate ``phi`` from P until a point repeats, a coordinate exceeds the cap, or steps run out."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    if max(abs(P.x), abs(P.y)) > height_cap:
        raise ValueError("starting point already exceeds the height cap")
    seq = [P]
    index = {P: 0}
    Q = P
    for _ in range(max_steps):
        Q = phi(Q)
        if Q in index:
            k = index[Q]
            return OrbitResult(tuple(seq[:k]), Cycle(phi, tuple(seq[k:])), Outcome.CYCLE_FOUND, tuple(seq))
        if max(abs(Q.x), abs(Q.y)) > height_cap:
            return OrbitResult(tuple(seq), None, Outcome.HEIGHT_EXCEEDED, tuple(seq))
        index[Q] = len(seq)
        seq.append(Q)
    return OrbitResult(tuple(seq), None, Outcome.STEP_LIMIT, tuple(seq))


# ---------------------------------------------------------------------------
# periodic points


def _divisors(primes: Sequence[tuple[int, int]], extra: int = 1) -> list[int]:
    divs = [1]
    for p, e in primes:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    if extra != 1:
        divs += [d * extra for d in divs]
    return divs


def _divisor_candidates(n: int, budget: int) -> tuple[list[int], bool]:
    fac, leftover = factor_partial(n, budget)
    return _divisors(fac.factors, leftover), leftover == 1


def fixed_point_form(phi: HomogMap) -> tuple[int, ...]:
    """Coefficients (x^{d+1} ... y^{d+1}) of ``y F(x, y) - x G(x, y)``."""
    F, G = phi.F, phi.G
    d = len(F) - 1
    out = [0] * (d + 2)
    for k in range(d + 1):
        out[k + 1] += F[k]
        out[k] -= G[k]
    return tuple(out)


def binary_form_rational_roots(form: Sequence[int], budget: int = DEFAULT_RHO_BUDGET):
    """Rational roots ``[a:b]`` of an integer binary form.

    Returns ``(roots, complete)``; ``complete`` is True when both end coefficients
    were fully factored, in which case the rational root theorem makes the list exhaustive.
    """
    coeffs = list(form)
    if not any(coeffs):
        raise ValueError("zero form")
    roots = set()
    # factors of y give [1:0], factors of x give [0:1]
    if coeffs[0] == 0:
        roots.add(ProjPoint(1, 0))
    if coeffs[-1] == 0:
        roots.add(ProjPoint(0, 1))
    while coeffs[0] == 0:
        coeffs.pop(0)
    while coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) == 1:
        return sorted(roots, key=ProjPoint.sort_key), True
    a_divs, ok_a = _divisor_candidates(coeffs[-1], budget)
    b_divs, ok_b = _divisor_candidates(coeffs[0], budget)
    for a in a_divs:
        for b in b_divs:
            if math.gcd(a, b) != 1:
                continue
            for sa in (a, -a):
                if form_eval(coeffs, sa, b) == 0:
                    roots.add(ProjPoint(sa, b))
    return sorted(roots, key=ProjPoint.sort_key), ok_a and ok_b


def periodic_points(phi: HomogMap, n: int, budget: int = DEFAULT_RHO_BUDGET, degree_guard: int = DEGREE_GUARD):
    """All Q-rational solutions of ``phi^n(P) = P``, with a completeness certificate."""
    if n < 1:
        raise ValueError("period must be positive")
    if phi.degree**n + 1 > degree_guard:
        raise ValueError(f"fixed-point form degree {phi.degree**n + 1} exceeds guard {degree_guard}")
    form = fixed_point_form(iterate(phi, n))
    if not any(form):
        raise ValueError(f"iterate {n} is the identity, so every point is periodic")
    roots, complete = binary_form_rational_roots(form, budget)
    for P in roots:
        Q = P
        for _ in range(n):
            Q = phi(Q)
        assert Q == P, f"root {P} failed direct iteration"
    return roots, complete


# ---------------------------------------------------------------------------
# cycles with good reduction


def verify_cycle(phi: HomogMap, points: Sequence[ProjPoint], S: SPrimeSet) -> Cycle:
    """Certify that ``points`` is a cycle of ``phi`` and that ``phi`` is good outside S."""
    cycle = Cycle(phi, tuple(points))
    rest = split_s_part(resultant(phi), S)[1]
    if rest != 1:
        bad = sorted(p for p in bad_primes(phi) if p not in S)
        raise CycleError(f"map has bad reduction at prime {bad[0]} outside S={S}")
    return cycle


@dataclass
class DistanceReport:
    primes_checked: tuple[int, ...]
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_distance_invariance(cycle: Cycle, S: SPrimeSet | None = None) -> DistanceReport:
    """Check shift invariance of δ_p along the cycle, and δ_p(P_i, P_j) = δ_p(P_0, P_1)
    whenever gcd(i - j, n) = 1, at every prime of good reduction dividing a cross-determinant.
    """
    n = len(cycle)
    pts = cycle.points
    if n < 2:
        return DistanceReport(())
    bad = bad_primes(cycle.map)
    primes = tuple(p for p in cross_support(pts) if p not in bad and (S is None or p not in S))
    report = DistanceReport(primes)
    for p in primes:
        dist = {(i, j): delta_p(pts[i], pts[j], p) for i in range(n) for j in range(n) if i != j}
        for (i, j), v in dist.items():
            for k in range(1, n):
                w = dist[((i + k) % n, (j + k) % n)]
                if w != v:
                    report.violations.append(f"p={p}: delta({i},{j})={v} but delta({(i + k) % n},{(j + k) % n})={w}")
            if math.gcd(i - j, n) == 1 and v != dist[(0, 1)]:
                report.violations.append(f"p={p}: gcd({i}-{j},{n})=1 but delta({i},{j})={v} != delta(0,1)={dist[(0, 1)]}")
    return report


@dataclass
class CycleLedger:
    S: SPrimeSet
    n: int
    C: dict[int, Fraction]
    U: dict[tuple[int, int], Fraction]
    L: dict[tuple[int, int], Fraction]
    ideals: dict[int, SIdeal]
    reduced_ideals: dict[int, SIdeal]


def cycle_ledger(cycle: Cycle, S: SPrimeSet) -> CycleLedger:
    n = len(cycle)
    if n < 2:
        raise LedgerError("ledger needs a cycle of length >= 2")
    d = cycle.d
    base = d(0, 1)
    C = {i: Fraction(d(0, i), base) for i in range(1, n)}
    U = {(j, (j + i) % n): Fraction(d(j, j + i), d(0, i)) for j in range(n) for i in range(1, n)}
    L = {(i, j): Fraction(d(0, i * j), d(0, j)) for i in range(1, n) for j in range(1, n)}

    if C[1] != 1:
        raise LedgerError("C_1 != 1")
    for i, c in C.items():
        if not is_s_integer(c, S):
            raise LedgerError(f"C_{i} = {c} is not an S-integer")
    for (j, k), u in U.items():
        if not is_s_unit(u, S):
            raise LedgerError(f"u_{j},{k} = {u} is not an S-unit")
    for (i, j), v in L.items():
        if not is_s_integer(v, S):
            raise LedgerError(f"L_{i},{j} = {v} is not an S-integer")
        if v * C[j] != L[(j, i)] * C[i]:
            raise LedgerError(f"L_{i},{j} C_{j} != L_{j},{i} C_{i}")
    for i, j in itertools.combinations(range(1, n), 2):
        if math.gcd(i, j) == 1:
            g = math.gcd(C[i].numerator, C[j].numerator)
            if split_s_part(g, S)[1] != 1:
                raise LedgerError(f"C_{i} and C_{j} share a prime outside S although gcd({i},{j}) = 1")

    ideals = {i: SIdeal(split_s_part(d(0, i), S)[1], S) for i in range(1, n)}
    first = ideals[1]
    reduced = {}
    for i, I in ideals.items():
        if not first.divides(I):
            raise LedgerError(f"I_1 = {first} does not divide I_{i} = {I}")
        reduced[i] = I.quotient(first)
        if math.gcd(i, n) == 1 and I != first:
            raise LedgerError(f"gcd({i},{n}) = 1 but I_{i} = {I} != I_1 = {first}")
    return CycleLedger(S, n, C, U, L, ideals, reduced)


@dataclass(frozen=True)
class NormalizedTuple:
    points: tuple[ProjPoint, ...]
    A: Mobius
    U: Mobius
    vectors: tuple[tuple[Fraction, Fraction], ...]


def normalized_tuple(cycle: Cycle, S: SPrimeSet, ledger: CycleLedger | None = None) -> NormalizedTuple:
    """Move P_0, P_1 to [0:1], [1:0] and (for n >= 3) P_2 to [D_2:1].

    ``A = (1/d01) [[-y_0, x_0], [y_1, -x_1]]``; the images of the coordinate vectors
    are kept exactly so that the cross-determinant relations can be checked
    coefficient by coefficient.  ``D_2`` is the part of C_2 prime to S, taken positive.
    """
    n = len(cycle)
    if n < 2:
        raise ValueError("normalization needs n >= 2")
    if ledger is None:
        ledger = cycle_ledger(cycle, S)
    pts = cycle.points
    P0, P1 = pts[0], pts[1]
    d01 = cross_det(P0, P1)
    A_rows = ((Fraction(-P0.y, d01), Fraction(P0.x, d01)), (Fraction(P1.y, d01), Fraction(-P1.x, d01)))
    vecs = tuple(
        (A_rows[0][0] * P.x + A_rows[0][1] * P.y, A_rows[1][0] * P.x + A_rows[1][1] * P.y) for P in pts
    )
    C, Uu = ledger.C, ledger.U

    def dbar(j, k):
        (a, b), (c, e) = vecs[j % n], vecs[k % n]
        return a * e - c * b

    if vecs[0] != (0, 1) or vecs[1] != (1, 0):
        raise LedgerError("normalizing matrix does not send P_0, P_1 to (0,1), (1,0)")
    for j in range(n):
        for i in range(1, n):
            if dbar(j, j + i) != -C[i] * Uu[(j, (j + i) % n)]:
                raise LedgerError(f"normalized cross-determinant ({j},{j + i}) != -C_{i} u_{j},{(j + i) % n}")
    for k in range(2, n):
        expected = (C[k], -C[k - 1] * Uu[(1, k % n)])
        if vecs[k] != expected:
            raise LedgerError(f"normalized vector {k} is {vecs[k]}, expected {expected}")

    A = Mobius.from_entries(*A_rows[0], *A_rows[1])
    if n >= 3:
        c2 = C[2]
        D2 = split_s_part(c2.numerator, S)[1]
        # diag(w, 1) sends [C_2 : -u_12] to [D_2 : 1]
        w = -D2 * Uu[(1, 2)] / c2
        Umat = Mobius.from_entries(w, 0, 0, 1)
    else:
        Umat = Mobius(1, 0, 0, 1)
    M = Umat @ A
    out = tuple(M(P) for P in pts)
    if n >= 3 and out[2] != ProjPoint(split_s_part(C[2].numerator, S)[1], 1):
        raise LedgerError(f"third normalized point is {out[2]}")

    primes = [p for p in cross_support(pts) if p not in S]
    for p in primes:
        base = delta_p(P0, P1, p)
        for i in range(1, n):
            shift = delta_p(P0, pts[i], p) - base
            if delta_p(out[0], out[i], p) != shift:
                raise LedgerError(f"distance shift fails at p={p}, i={i}")
    return NormalizedTuple(out, A, Umat, vecs)


# ---------------------------------------------------------------------------


def ms_bound(s: int) -> int:
    """Floor of ``(12 (s+2) ln(5 (s+2)))^4``, evaluated with outward-rounded intervals.

    The floor is taken of the interval's upper end, so the result never undershoots.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    iv = mpmath.iv
    saved = iv.prec
    iv.prec = 256
    try:
        t = iv.mpf(s + 2)
        val = (12 * t * iv.log(5 * t)) ** 4
        return int(mpmath.floor(val.b))
    finally:
        iv.prec = saved
