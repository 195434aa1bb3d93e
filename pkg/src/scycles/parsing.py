"""Text syntax for rational maps.

Grammar (whitespace ignored, ``**`` accepted for ``^``)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary | implicit-product)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT | "z" | "(" expr ")"

An expression evaluates to a rational function in Q(z), which is reduced to lowest
terms and homogenized.  A map may instead be given as homogeneous coefficient lists
``[f0,f1,...,fd : g0,g1,...,gd]`` (coefficients of x^d down to y^d).

:func:`format_map` prints the canonical form ``(N(z))/(D(z))``; parsing that text
returns the same map.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .ratmap import HomogMap, from_affine, to_affine

Poly = list[Fraction]  # constant term first


def _trim(p: Poly) -> Poly:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [Fraction(0)]


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def pneg(p: Poly) -> Poly:
    return [-c for c in p]


def pmul(p: Poly, q: Poly) -> Poly:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def is_zero(p: Poly) -> bool:
    return all(c == 0 for c in p)


def pdivmod(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    q = _trim(q)
    if is_zero(q):
        raise ZeroDivisionError("polynomial division by zero")
    r = _trim(p)
    quot = [Fraction(0)] * max(1, len(r) - len(q) + 1)
    while not is_zero(r) and len(r) >= len(q):
        c = r[-1] / q[-1]
        k = len(r) - len(q)
        quot[k] = c
        r = padd(r, pneg([Fraction(0)] * k + [c * b for b in q]))
    return _trim(quot), r


def pgcd(p: Poly, q: Poly) -> Poly:
    a, b = _trim(p), _trim(q)
    while not is_zero(b):
        a, b = b, pdivmod(a, b)[1]
    if is_zero(a):
        return [Fraction(1)]
    return [c / a[-1] for c in a]


class _RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        self.num = _trim(num)
        self.den = _trim(den if den is not None else [Fraction(1)])

    def __add__(self, o):
        return _RatFunc(padd(pmul(self.num, o.den), pmul(o.num, self.den)), pmul(self.den, o.den))

    def __neg__(self):
        return _RatFunc(pneg(self.num), self.den)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        return _RatFunc(pmul(self.num, o.num), pmul(self.den, o.den))

    def inverse(self):
        if is_zero(self.num):
            raise ZeroDivisionError("division by zero in map expression")
        return _RatFunc(self.den, self.num)

    def __truediv__(self, o):
        return self * o.inverse()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        out = _RatFunc([Fraction(1)])
        for _ in range(abs(k)):
            out = out * base
        return out

    def reduced(self):
        g = pgcd(self.num, self.den)
        return pdivmod(self.num, g)[0], pdivmod(self.den, g)[0]


_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()z]))")


def _tokenize(text: str) -> list[str]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"unexpected token {text[pos:].strip()[:10]!r} in map expression")
        tok = m.group(1) or m.group(2)
        out.append("^" if tok == "**" else tok)
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of map expression")
        if expected is not None and tok != expected:
            raise ValueError(f"expected {expected!r}, found {tok!r}")
        self.i += 1
        return tok

    def parse(self) -> _RatFunc:
        out = self.expr()
        if self.peek() is not None:
            raise ValueError(f"unexpected token {self.peek()!r}")
        return out

    def expr(self):
        out = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self):
        out = self.unary()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                out = out * self.unary()
            elif tok == "/":
                self.take()
                out = out / self.unary()
            elif tok is not None and (tok in ("(", "z") or tok.isdigit()):
                out = out * self.power()
            else:
                return out

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            tok = self.take()
            if not tok.isdigit():
                raise ValueError(f"exponent must be an integer, found {tok!r}")
            return base ** (sign * int(tok))
        return base

    def atom(self):
        tok = self.take()
        if tok == "z":
            return _RatFunc([Fraction(0), Fraction(1)])
        if tok.isdigit():
            return _RatFunc([Fraction(int(tok))])
        if tok == "(":
            out = self.expr()
            self.take(")")
            return out
        raise ValueError(f"unexpected token {tok!r}")


_COEFFS = re.compile(r"^\[(.*):(.*)\]$")


def parse_map(text: str) -> HomogMap:
    m = _COEFFS.match(text.strip())
    if m:
        F = [int(t) for t in m.group(1).split(",")]
        G = [int(t) for t in m.group(2).split(",")]
        return HomogMap(tuple(F), tuple(G))
    num, den = _Parser(text).parse().reduced()
    return from_affine(num, den)


def format_poly(coeffs: list[int]) -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        if k == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += sign + body
    return out


def format_map(phi: HomogMap) -> str:
    num, den = to_affine(phi)
    return f"({format_poly(num)})/({format_poly(den)})"


def format_coeffs(phi: HomogMap) -> str:
    return "[" + ",".join(map(str, phi.F)) + ":" + ",".join(map(str, phi.G)) + "]"
