from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from scycles.parsing import format_coeffs, format_map, parse_map, pdivmod, pgcd, pmul
from scycles.ratmap import HomogMap, from_affine

GRAMMAR_CASES = {
    "z^2": "(z^2)/(1)",
    "z**2 - 1": "(z^2-1)/(1)",
    "1/(1-z)": "(1)/(-z+1)",
    "(z+1)*(2*z-1)*(z-2)/(2*z*(z-1))": "(2*z^3-3*z^2-3*z+2)/(2*z^2-2*z)",
    "2z(z+1)": "(2*z^2+2*z)/(1)",
    "z^-2": "(1)/(z^2)",
    "(z^2-1)/(z-1)": "(z+1)/(1)",
    "z/2 + 1/3": "(3*z+2)/(6)",
    "-z^2": "(z^2)/(-1)",
}


@pytest.mark.parametrize("text,canon", list(GRAMMAR_CASES.items()))
def test_parse_and_print(text, canon):
    phi = parse_map(text)
    assert format_map(phi) == canon
    assert parse_map(canon) == phi


@pytest.mark.parametrize("bad", ["", "z^", "z^z", "(z+1", "z+1)", "y", "1/0", "z^1.5", "3", "z-z"])
def test_parse_errors(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_map(bad)


def test_error_cites_token():
    with pytest.raises(ValueError, match="'y'"):
        parse_map("z+y")


def test_coefficient_lists():
    phi = parse_map("[1,0,-1:0,0,1]")
    assert phi == parse_map("z^2-1")
    assert parse_map(format_coeffs(phi)) == phi


@st.composite
def maps(draw):
    num = draw(st.lists(st.integers(-9, 9), min_size=1, max_size=4))
    den = draw(st.lists(st.integers(-9, 9), min_size=1, max_size=4))
    assume(any(num) and any(den))
    try:
        return from_affine(num, den)
    except ValueError:
        assume(False)


@given(maps())
def test_roundtrip(phi):
    assert parse_map(format_map(phi)) == phi
    assert parse_map(format_coeffs(phi)) == phi
    assert format_map(parse_map(format_map(phi))) == format_map(phi)


@given(st.lists(st.integers(-9, 9), min_size=1, max_size=5), st.lists(st.integers(-9, 9), min_size=1, max_size=4))
def test_pdivmod(p, q):
    q = [Fraction(c) for c in q]
    assume(any(q))
    p = [Fraction(c) for c in p]
    quo, rem = pdivmod(p, q)
    back = pmul(quo, q)
    n = max(len(back), len(rem), len(p))
    pad = lambda v: list(v) + [0] * (n - len(v))
    assert [a + b for a, b in zip(pad(back), pad(rem))] == pad(p)


def test_pgcd():
    g = pgcd(pmul([Fraction(-1), Fraction(1)], [Fraction(2), Fraction(1)]), [Fraction(-1), Fraction(1)])
    assert g == [-1, 1]
