"""An infinite family of degree-4 maps over Z[1/2] with 3-cycles of unbounded ideal.

For an S-unit u the triple ``([u:u-1], [u-1:-1], [1:u])`` is a 3-cycle of the
order-3 automorphism ``U(z) = 1/(1-z)``.  The map
``Psi(z) = (z+1)(2z-1)(z-2) / (2z(z-1))`` is U-invariant and sends the whole triple
to one value, which the Mobius map ``H_u`` sends to 0.  Hence ``Psi_1 = z + H_u∘Psi``
fixes the triple, and ``Phi = U∘Psi_1`` is a degree-4 map cycling it.  With
``u = 2^n`` the first ideal of the cycle is ``2^(2n) - 2^n + 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dynamics import Cycle, verify_cycle
from .equivalence import Mobius
from .parsing import parse_map
from .projline import ProjPoint, ideal_between, make_point
from .ratmap import HomogMap, compose, degree_bump, from_affine, from_mobius, good_reduction_map
from .sarith import Factorization, SIdeal, SPrimeSet, factor_partial, is_s_unit

S2 = SPrimeSet((2,))


def build_u() -> HomogMap:
    return from_affine([1], [1, -1])


def build_psi() -> HomogMap:
    return parse_map("(z+1)*(2*z-1)*(z-2)/(2*z*(z-1))")


def h_entries(u) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Raw entries ``(a, b, c, d)`` of ``H_u(z) = (a z + b)/(c z + d)`` before normalization."""
    u = Fraction(u)
    return (
        4 * u**2 - 4 * u,
        -(-4 * u**3 + 6 * u**2 + 6 * u - 4),
        2 * u,
        4 * u**2 + u - 2,
    )


def build_h(u) -> Mobius:
    u = Fraction(u)
    if u == 0:
        raise ValueError("H is degenerate at u = 0")
    # determinant is 8 u^4
    return Mobius.from_entries(*h_entries(u))


def h_psi_expected(u) -> HomogMap:
    """The composite ``H_u∘Psi`` written out coefficient by coefficient."""
    u = Fraction(u)
    num = [2 * u**2 - 2 * u, -2 * u**3 + 6 * u - 2, 2 * u**3 - 6 * u**2 + 2, 2 * u**2 - 2 * u]
    den = [u, -2 * u**2 - 2 * u + 1, 2 * u**2 - u - 1, u]
    return from_affine(num, den)


def family_triple(u) -> tuple[ProjPoint, ProjPoint, ProjPoint]:
    u = Fraction(u)
    return (make_point((u, u - 1)), make_point((u - 1, -1)), make_point((1, u)))


@dataclass(frozen=True)
class FamilyInstance:
    u: Fraction
    S: SPrimeSet
    U: HomogMap
    psi: HomogMap
    H: Mobius
    psi1: HomogMap
    phi: HomogMap
    triple: tuple[ProjPoint, ProjPoint, ProjPoint]
    ideal1: SIdeal
    ideal2: SIdeal
    good_reduction: bool
    cycle: Cycle | None

    @property
    def degree(self) -> int:
        return self.phi.degree


def build_family(u, S: SPrimeSet = S2, strict: bool = False) -> FamilyInstance:
    u = Fraction(u)
    if u == 0:
        raise ValueError("u must be nonzero")
    if strict and not is_s_unit(u, S):
        raise ValueError("u must be an S-unit for good reduction")
    U = build_u()
    psi = build_psi()
    H = build_h(u)
    if compose(from_mobius(H), psi) != h_psi_expected(u):
        raise AssertionError("H∘Psi disagrees with its closed form")
    psi1 = degree_bump(H, psi)
    phi = compose(U, psi1)
    triple = family_triple(u)
    for P in triple:
        if H(psi(P)) != ProjPoint(0, 1):
            raise AssertionError(f"H∘Psi does not vanish at {P}")
        if psi1(P) != P:
            raise AssertionError(f"Psi_1 does not fix {P}")
    good = good_reduction_map(phi, S)
    cycle = None
    if good:
        cycle = verify_cycle(phi, triple, S)
    else:
        # still a cycle, just not one with good reduction outside S
        Cycle(phi, triple)
    return FamilyInstance(
        u=u,
        S=S,
        U=U,
        psi=psi,
        H=H,
        psi1=psi1,
        phi=phi,
        triple=triple,
        ideal1=ideal_between(triple[0], triple[1], S),
        ideal2=ideal_between(triple[0], triple[2], S),
        good_reduction=good,
        cycle=cycle,
    )


@dataclass(frozen=True)
class CensusRow:
    n: int
    generator: int
    factorization: Factorization
    complete: bool
    cumulative_primes: int


def ideal_census(n_max: int, budget: int = 2_000_000, cross_check: bool = True) -> list[CensusRow]:
    """Factor ``2^(2n) - 2^n + 1`` for n = 1..n_max and track the union of prime supports.

    With ``cross_check`` each generator is compared with the first ideal of the
    family member built from ``u = 2^n``.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    seen: set[int] = set()
    rows = []
    for n in range(1, n_max + 1):
        g = 2 ** (2 * n) - 2**n + 1
        if cross_check and build_family(2**n).ideal1.generator != g:
            raise AssertionError(f"family ideal for u=2^{n} differs from {g}")
        fac, leftover = factor_partial(g, budget)
        seen.update(fac.support)
        rows.append(CensusRow(n, g, fac, leftover == 1, len(seen)))
    return rows

