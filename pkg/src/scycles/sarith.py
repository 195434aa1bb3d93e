"""Exact arithmetic over Q relative to a finite set of primes S.

Rationals are plain :class:`fractions.Fraction` values.  ``SPrimeSet`` carries the
finite part of S (the archimedean place is always implicit), and the helpers below
answer valuation, integrality and unit questions, factor integers, and solve small
S-unit equations by exhaustive search inside an exponent box.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

Rational = int | Fraction

TRIAL_LIMIT = 10**6
DEFAULT_RHO_BUDGET = 2_000_000


class FactoringBudgetExceeded(ArithmeticError):
    """Raised when a cofactor could not be split within the iteration budget."""

    def __init__(self, n: int, partial: "Factorization", cofactor: int):
        super().__init__(f"could not finish factoring {n}: cofactor {cofactor} left unsplit")
        self.n = n
        self.partial = partial
        self.cofactor = cofactor


@dataclass(frozen=True)
class SPrimeSet:
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        ps = tuple(sorted(set(int(p) for p in self.primes)))
        for p in ps:
            if not is_prime(p):
                raise ValueError(f"{p} is not a prime")
        object.__setattr__(self, "primes", ps)

    @classmethod
    def of(cls, *primes: int) -> "SPrimeSet":
        return cls(tuple(primes))

    @property
    def s(self) -> int:
        """Number of places in S, counting the archimedean one."""
        return len(self.primes) + 1

    def __contains__(self, p: int) -> bool:
        return p in self.primes

    def __iter__(self):
        return iter(self.primes)

    def __len__(self):
        return len(self.primes)

    def __str__(self):
        return "{" + ",".join(map(str, self.primes)) + "}"


EMPTY_S = SPrimeSet()


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...] = ()

    @property
    def value(self) -> int:
        out = self.sign
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        return dict(self.factors).get(p, 0)

    def __str__(self):
        body = "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or "1"
        return ("-" if self.sign < 0 else "") + body


@dataclass(frozen=True, order=True)
class SIdeal:
    """Integral ideal of Z_S, stored as its positive generator prime to S."""

    generator: int
    S: SPrimeSet = field(default=EMPTY_S, compare=False)

    def __post_init__(self):
        if self.generator < 1:
            raise ValueError("ideal generator must be a positive integer")
        for p in self.S:
            if self.generator % p == 0:
                raise ValueError(f"ideal generator {self.generator} is divisible by S-prime {p}")

    def divides(self, other: "SIdeal") -> bool:
        return other.generator % self.generator == 0

    def quotient(self, other: "SIdeal") -> "SIdeal":
        """``self * other^{-1}``; only defined when ``other`` divides ``self``."""
        if not other.divides(self):
            raise ValueError(f"{other.generator} does not divide {self.generator}")
        return SIdeal(self.generator // other.generator, self.S)

    def __int__(self):
        return self.generator

    def __str__(self):
        return str(self.generator)


# ---------------------------------------------------------------------------
# valuations and S-structure


def vp(x: Rational, p: int) -> int:
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero undefined")
    return _vp_int(x.numerator, p) - _vp_int(x.denominator, p)


def _vp_int(n: int, p: int) -> int:
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def split_s_part(n: int, S: SPrimeSet) -> tuple[int, int]:
    """Return ``(s_part, coprime_part)``, both positive, with ``|n| = s_part * coprime_part``."""
    if n == 0:
        raise ValueError("cannot split zero")
    rest = abs(n)
    s_part = 1
    for p in S:
        while rest % p == 0:
            rest //= p
            s_part *= p
    return s_part, rest


def s_free(n: int, S: SPrimeSet) -> int:
    return split_s_part(n, S)[1]


def is_s_integer(x: Rational, S: SPrimeSet) -> bool:
    x = Fraction(x)
    return s_free(x.denominator, S) == 1


def is_s_unit(x: Rational, S: SPrimeSet) -> bool:
    x = Fraction(x)
    if x == 0:
        return False
    return s_free(x.numerator, S) == 1 and s_free(x.denominator, S) == 1


# ---------------------------------------------------------------------------
# primality and factorization

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# The 13 prime bases above give a deterministic test below this bound.
_MR_DETERMINISTIC_BELOW = 3_317_044_064_679_887_385_961_981


def _strong_probable_prime(n: int, a: int) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _lucas_strong(n: int) -> bool:
    # Selfridge parameters: first D in 5, -7, 9, -11, ... with Jacobi(D/n) = -1.
    if math.isqrt(n) ** 2 == n:
        return False
    D = 5
    while (j := _jacobi(D, n)) != -1:
        if j == 0 and abs(D) != n:
            return False
        D = -D - 2 if D > 0 else -D + 2
    P, Q = 1, (1 - D) // 4
    d, s = n + 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    U, V, Qk = 1, P, Q % n
    inv2 = pow(2, -1, n)
    for bit in bin(d)[3:]:
        U, V = U * V % n, (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = (P * U + V) * inv2 % n, (D * U + P * V) * inv2 % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if V == 0:
            return True
    return False


def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases, deterministic below ~3.3e24; BPSW above that."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if not all(_strong_probable_prime(n, a) for a in _MR_BASES):
        return False
    if n < _MR_DETERMINISTIC_BELOW:
        return True
    return _lucas_strong(n)


@lru_cache(maxsize=1)
def _small_primes(limit: int = TRIAL_LIMIT) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i in range(limit + 1) if sieve[i])


def _brent_rho(n: int, budget: int, rng: random.Random) -> int | None:
    """Return a nontrivial factor of composite odd ``n`` or None when out of budget."""
    spent = 0
    while spent < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1 and spent < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factor_partial(n: int, budget: int = DEFAULT_RHO_BUDGET) -> tuple[Factorization, int]:
    """Factor as far as the budget allows.

    Returns the factorization of the fully split part and the unsplit composite
    cofactor (1 when the factorization is complete).
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    sign = -1 if n < 0 else 1
    n = abs(n)
    counts: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            n //= p
            counts[p] = counts.get(p, 0) + 1
    leftover = 1
    stack = [n] if n > 1 else []
    rng = random.Random(n)
    while stack:
        m = stack.pop()
        if m < TRIAL_LIMIT**2 or is_prime(m):
            # below the square of the trial bound any survivor is prime
            counts[m] = counts.get(m, 0) + 1
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        d = _brent_rho(m, budget, rng)
        if d is None:
            leftover *= m
        else:
            stack += [d, m // d]
    fac = Factorization(sign, tuple(sorted(counts.items())))
    return fac, leftover


def factor(n: int, budget: int = DEFAULT_RHO_BUDGET) -> Factorization:
    fac, leftover = factor_partial(n, budget)
    if leftover != 1:
        raise FactoringBudgetExceeded(n, fac, leftover)
    return fac


def prime_support(n: int) -> tuple[int, ...]:
    return factor(n).support


# ---------------------------------------------------------------------------
# S-units and unit equations


def enumerate_s_units(S: SPrimeSet, max_exp: int) -> list[Fraction]:
    """All ``±prod p^e_p`` with ``|e_p| <= max_exp``, sorted ascending."""
    if max_exp < 0:
        raise ValueError("max_exp must be nonnegative")
    out = []
    for exps in itertools.product(range(-max_exp, max_exp + 1), repeat=len(S)):
        x = Fraction(1)
        for p, e in zip(S, exps):
            x *= Fraction(p) ** e
        out += [x, -x]
    return sorted(out)


def _in_box(x: Fraction, S: SPrimeSet, max_exp: int) -> bool:
    if not is_s_unit(x, S):
        return False
    return all(abs(vp(x, p)) <= max_exp for p in S)


@dataclass(frozen=True)
class UnitSolution:
    values: tuple[Fraction, ...]
    degenerate: bool = False


def solve_unit_eq(coeffs: Sequence[Rational], S: SPrimeSet, max_exp: int) -> list[UnitSolution]:
    """Solve ``a_1 x_1 + ... + a_k x_k = 1`` (k = 2 or 3) in S-units inside the box.

    The last unknown is solved for and accepted only when it is itself an S-unit in
    the box, so the search is exhaustive over the box.  For k = 3 a solution is
    flagged degenerate when some proper nonempty subsum ``sum a_i x_i`` vanishes.
    """
    a = [Fraction(c) for c in coeffs]
    if len(a) not in (2, 3):
        raise ValueError("only equations in 2 or 3 unknowns are supported")
    if any(c == 0 for c in a):
        raise ValueError("coefficients must be nonzero")
    units = enumerate_s_units(S, max_exp)
    k = len(a)
    sols = []
    for head in itertools.product(units, repeat=k - 1):
        partial = sum(c * x for c, x in zip(a, head))
        last = (1 - partial) / a[-1]
        if last == 0 or not _in_box(last, S, max_exp):
            continue
        xs = head + (last,)
        terms = [c * x for c, x in zip(a, xs)]
        degenerate = any(
            sum(terms[i] for i in idx) == 0
            for r in range(1, k)
            for idx in itertools.combinations(range(k), r)
        )
        sols.append(UnitSolution(xs, degenerate))
    return sorted(sols, key=lambda s: s.values)


def evertse_bound(s: int, degree: int = 1) -> int:
    """Upper bound ``3 * 7^(d + 2s)`` on the number of solutions of a two-term unit equation."""
    return 3 * 7 ** (degree + 2 * s)


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def parse_primes(text: str | Iterable[int] | None) -> SPrimeSet:
    if text is None:
        return EMPTY_S
    if isinstance(text, str):
        tokens = [t for t in text.replace(" ", ",").split(",") if t]
        return SPrimeSet(tuple(int(t) for t in tokens))
    return SPrimeSet(tuple(text))
