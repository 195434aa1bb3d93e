"""Rational self-maps of P^1 over Q given by pairs of integer binary forms.

A binary form of degree d is a tuple of d+1 integer coefficients, listed from
``x^d`` down to ``y^d``.  With that ordering, multiplying forms is convolution of
their coefficient tuples.
"""
from __future__ import annotations

import math
from dataclasses import InitVar, dataclass
from fractions import Fraction
from typing import Sequence

from .equivalence import Mobius
from .projline import INFINITY, ProjPoint
from .sarith import Factorization, SPrimeSet, factor, split_s_part

Form = tuple[int, ...]


# ---------------------------------------------------------------------------
# binary forms


def form_mul(f: Sequence[int], g: Sequence[int]) -> Form:
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return tuple(out)


def form_add(f: Sequence[int], g: Sequence[int]) -> Form:
    assert len(f) == len(g)
    return tuple(a + b for a, b in zip(f, g))


def form_scale(f: Sequence[int], c: int) -> Form:
    return tuple(c * a for a in f)


def form_eval(f: Sequence[int], x: int, y: int) -> int:
    acc = 0
    ypow = 1
    # homogeneous Horner: acc_k = acc_{k-1} * x + f_k * y^k
    for k, c in enumerate(f):
        acc = acc * x + c * ypow
        ypow *= y
    return acc


def form_substitute(f: Sequence[int], F: Sequence[int], G: Sequence[int]) -> Form:
    """``f(F, G)`` for forms F, G of a common degree."""
    d = len(f) - 1
    e = len(F) - 1
    powF = [(1,)]
    powG = [(1,)]
    for _ in range(d):
        powF.append(form_mul(powF[-1], F))
        powG.append(form_mul(powG[-1], G))
    out = (0,) * (d * e + 1)
    for k, c in enumerate(f):
        if c:
            out = form_add(out, form_scale(form_mul(powF[d - k], powG[k]), c))
    return out


def bareiss_det(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; exact for integer matrices."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def sylvester_matrix(F: Sequence[int], G: Sequence[int]) -> list[list[int]]:
    """The 2d x 2d Sylvester matrix of two forms of formal degree d."""
    d = len(F) - 1
    if len(G) - 1 != d:
        raise ValueError("forms must have the same degree")
    size = 2 * d
    rows = []
    for coeffs in (F, G):
        for shift in range(d):
            row = [0] * size
            row[shift : shift + d + 1] = coeffs
            rows.append(row)
    return rows


def form_resultant(F: Sequence[int], G: Sequence[int]) -> int:
    return bareiss_det(sylvester_matrix(F, G))


# ---------------------------------------------------------------------------
# maps


@dataclass(frozen=True)
class HomogMap:
    """``[x:y] -> [F(x,y) : G(x,y)]`` with F, G of common degree d >= 1.

    Stored with joint content 1 and the first nonzero coefficient of F then G
    positive, so equal maps have equal coefficient tuples.
    """

    F: Form
    G: Form
    check: InitVar[bool] = True

    def __post_init__(self, check):
        F = tuple(int(c) for c in self.F)
        G = tuple(int(c) for c in self.G)
        if len(F) != len(G) or len(F) < 2:
            raise ValueError("F and G must be forms of the same degree >= 1")
        g = math.gcd(*F, *G)
        if g == 0:
            raise ValueError("zero map")
        first = next(c for c in F + G if c)
        if first < 0:
            g = -g
        F = tuple(c // g for c in F)
        G = tuple(c // g for c in G)
        if check and form_resultant(F, G) == 0:
            raise ValueError("F and G have a common factor (not in lowest terms)")
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "G", G)

    @property
    def degree(self) -> int:
        return len(self.F) - 1

    def __call__(self, P: ProjPoint) -> ProjPoint:
        return ProjPoint(form_eval(self.F, P.x, P.y), form_eval(self.G, P.x, P.y))

    def __str__(self):
        from .parsing import format_map

        return format_map(self)


def from_affine(num: Sequence, den: Sequence) -> HomogMap:
    """Homogenize ``num(z)/den(z)``; coefficient lists run from the constant term upward.

    Rational coefficients are allowed and cleared.  The pole of z becomes [1:0].
    """
    num = _trim([Fraction(c) for c in num])
    den = _trim([Fraction(c) for c in den])
    if not any(den):
        raise ValueError("denominator is identically zero")
    if not any(num):
        raise ValueError("zero map")
    d = max(len(num), len(den)) - 1
    if d < 1:
        raise ValueError("constant map has degree 0")
    scale = math.lcm(*(c.denominator for c in num + den))
    # F_k is the coefficient of x^(d-k) y^k, i.e. of z^(d-k)
    F = [0] * (d + 1)
    G = [0] * (d + 1)
    for i, c in enumerate(num):
        F[d - i] = int(c * scale)
    for i, c in enumerate(den):
        G[d - i] = int(c * scale)
    try:
        return HomogMap(tuple(F), tuple(G))
    except ValueError as exc:
        if "common factor" in str(exc):
            raise ValueError("not in lowest terms: numerator and denominator share a factor") from None
        raise


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs or [Fraction(0)]


def to_affine(phi: HomogMap) -> tuple[list[int], list[int]]:
    """Inverse of :func:`from_affine`: constant-first coefficient lists of ``F(z,1)``, ``G(z,1)``."""
    num = list(reversed(phi.F))
    den = list(reversed(phi.G))
    return [int(c) for c in _trim([Fraction(c) for c in num])], [int(c) for c in _trim([Fraction(c) for c in den])]


def from_mobius(M: Mobius) -> HomogMap:
    return HomogMap((M.a, M.b), (M.c, M.d))


def resultant(phi: HomogMap) -> int:
    return form_resultant(phi.F, phi.G)


def disc_valuations(phi: HomogMap) -> Factorization:
    """Factorization of ``|Res(F, G)|``.

    The joint content is 1, so the content correction in the discriminant valuation
    vanishes and its valuations are those of the resultant.
    """
    f = factor(resultant(phi))
    return Factorization(1, f.factors)


def bad_primes(phi: HomogMap) -> frozenset[int]:
    return frozenset(disc_valuations(phi).support)


def good_reduction_map(phi: HomogMap, S: SPrimeSet) -> bool:
    return split_s_part(resultant(phi), S)[1] == 1


def compose(phi: HomogMap, psi: HomogMap) -> HomogMap:
    """``phi ∘ psi`` (apply psi first); degree multiplies."""
    # Res(phi∘psi) is a product of powers of Res(phi) and Res(psi), hence nonzero
    return HomogMap(
        form_substitute(phi.F, psi.F, psi.G), form_substitute(phi.G, psi.F, psi.G), check=False
    )


def iterate(phi: HomogMap, n: int) -> HomogMap:
    if n < 1:
        raise ValueError("iterate count must be positive")
    out = phi
    for _ in range(n - 1):
        out = compose(phi, out)
    return out


def mobius_conjugate(A: Mobius, phi: HomogMap) -> HomogMap:
    """``A ∘ phi ∘ A^{-1}``."""
    return compose(from_mobius(A), compose(phi, from_mobius(A.inverse())))


def degree_bump(T: Mobius, phi: HomogMap) -> HomogMap:
    """The map ``z + T(phi(z))`` for ``T = (az+b)/(uz+c)`` and ``phi`` fixing infinity.

    With ``F' = aF + bG`` and ``G' = uF + cG`` the result is ``[x G' + y F' : y G']``,
    of degree ``deg(phi) + 1`` because ``G'(1, 0) = u F(1, 0) != 0``.
    """
    a, b, u, c = T.entries
    if u == 0:
        raise ValueError("degree bump requires nonzero lower-left entry")
    if phi(INFINITY) != INFINITY:
        raise ValueError("degree bump requires phi to fix infinity")
    Fp = form_add(form_scale(phi.F, a), form_scale(phi.G, b))
    Gp = form_add(form_scale(phi.F, u), form_scale(phi.G, c))
    new_F = form_add(form_mul((1, 0), Gp), form_mul((0, 1), Fp))
    new_G = form_mul((0, 1), Gp)
    return HomogMap(new_F, new_G)


def identity_map() -> HomogMap:
    return HomogMap((1, 0), (0, 1))

