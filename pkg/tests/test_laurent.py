import random
import re
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from metabetti.errors import DomainError, FieldMismatch, ParseError, UnsupportedRank
from metabetti.fields import QQ, prime_field
from metabetti.laurent import (
    CharacterClass,
    LaurentPolynomial,
    newton_polygon,
    parse_polynomial,
)

from conftest import small_polys


def naive_eval(text, values):
    """Evaluate the expression with Python's own arithmetic on Fractions."""
    expr = text.replace("^", "**")
    expr = re.sub(r"(\d+)", r"Fraction(\1)", expr)
    return eval(expr, {"Fraction": Fraction}, dict(values))


def test_parse_standard_generator_mod_two(F2):
    f = parse_polynomial("y - x^2 + x - 1", F2, ["x", "y"])
    assert dict(f.terms) == {(0, 1): 1, (2, 0): 1, (1, 0): 1, (0, 0): 1}


def test_parse_zero():
    f = parse_polynomial("0", QQ, ["x"])
    assert f.is_zero() and dict(f.terms) == {}


def test_parse_laurent_product_against_naive_evaluator():
    text = "x^-1 * (x^2 - x)"
    f = parse_polynomial(text, QQ, ["x"])
    rng = random.Random(5)
    for _ in range(5):
        x = Fraction(rng.randint(1, 50), rng.randint(1, 50))
        assert f.evaluate([x]) == naive_eval(text, {"x": x})
    assert f == parse_polynomial("x - 1", QQ, ["x"])


@pytest.mark.parametrize("text", [
    "y - x^2 + x - 1",
    "(x + y)^3 - 2*x*y^-2",
    "3*(x - 1)*(y + 2) - x^-3*y^2",
    "-x + 7",
])
def test_parser_matches_naive_evaluator(text):
    f = parse_polynomial(text, QQ, ["x", "y"])
    rng = random.Random(text)
    for _ in range(5):
        x = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        y = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert f.evaluate([x, y]) == naive_eval(text, {"x": x, "y": y})


@pytest.mark.parametrize("text, pos", [("x + ", 4), ("x ** 2", 3), ("2 $ x", 2), ("(x + 1", 6)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, QQ, ["x", "y"])
    assert info.value.position == pos


def test_unknown_variable():
    with pytest.raises(ParseError, match="unknown variable 'z'"):
        parse_polynomial("x + z", QQ, ["x", "y"])


def test_exponent_bound():
    with pytest.raises(ParseError, match="exceeds"):
        parse_polynomial("x^2147483648", QQ, ["x"])
    assert parse_polynomial("x^2147483647", QQ, ["x"]).support == ((2**31 - 1,),)


def test_division_by_constant_only():
    assert parse_polynomial("x/2", QQ, ["x"]).coefficient((1,)) == Fraction(1, 2)
    assert parse_polynomial("x/2", prime_field(5), ["x"]).coefficient((1,)) == 3
    with pytest.raises(ParseError, match="nonzero constant"):
        parse_polynomial("1/x", QQ, ["x"])


def test_arithmetic_examples():
    x, y = (LaurentPolynomial.variable(QQ, 2, i) for i in range(2))
    f = y - x**2 + x - 1
    assert (f + f.scale(-1)).is_zero()
    X = LaurentPolynomial.variable(QQ, 1, 0)
    assert (X - 1) * (X + 1) == X**2 - 1
    shifted = f.translate((-1, 0))
    assert shifted == parse_polynomial("x^-1*y - x + 1 - x^-1", QQ)


def test_mismatch_errors():
    a = LaurentPolynomial.variable(QQ, 2, 0)
    with pytest.raises(FieldMismatch):
        a + LaurentPolynomial.variable(prime_field(2), 2, 0)
    with pytest.raises(FieldMismatch):
        a * LaurentPolynomial.variable(QQ, 3, 0)


@given(small_polys(), small_polys(), small_polys())
def test_ring_laws(f, g, h):
    g = LaurentPolynomial(f.field, 2, dict(g.terms))
    h = LaurentPolynomial(f.field, 2, dict(h.terms))
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(small_polys(), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_translate_is_monomial_multiplication(f, v):
    assert f.translate(v) == LaurentPolynomial.monomial(f.field, v) * f


@given(small_polys(allow_zero=True))
def test_print_parse_round_trip(f):
    assert parse_polynomial(f.to_string(["x", "y"]), f.field, ["x", "y"]) == f


@given(small_polys(field=QQ, coeffs=(-50, 50)), st.integers(1, 7))
def test_round_trip_rational_coefficients(f, den):
    g = f.scale(Fraction(1, den))
    assert parse_polynomial(str(g), QQ) == g


# -- Newton polygon --------------------------------------------------------------------


def test_newton_polygon_standard_example():
    f = parse_polynomial("y - x^2 + x - 1", QQ)
    poly = newton_polygon(f)
    assert set(poly.hull) == {(0, 0), (2, 0), (0, 1)}
    assert {e.normal.vector for e in poly.edges} == {(0, 1), (1, 0), (-1, -2)}


def test_newton_polygon_monomial():
    poly = newton_polygon(parse_polynomial("x^3*y^-2", QQ))
    assert poly.hull == ((3, -2),)
    assert poly.edges == ()


def test_newton_polygon_segment():
    poly = newton_polygon(parse_polynomial("x - 1", QQ))
    assert {e.normal.vector for e in poly.edges} == {(0, 1), (0, -1)}
    for e in poly.edges:
        assert len({e.normal(p) for p in poly.support}) == 1


def test_newton_polygon_errors():
    with pytest.raises(DomainError):
        newton_polygon(LaurentPolynomial.zero(QQ, 2))
    with pytest.raises(UnsupportedRank):
        newton_polygon(parse_polynomial("x1 + 1", QQ, ["x1", "x2", "x3"]))


def _primitive(bound):
    from math import gcd

    return [CharacterClass((a, b)) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)
            if gcd(a, b) == 1]


@given(small_polys(max_terms=7))
def test_newton_polygon_invariants(f):
    poly = newton_polygon(f)
    hull = poly.hull
    if len(hull) >= 3:
        for p in poly.support:
            for a, b in zip(hull, hull[1:] + hull[:1]):
                assert (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]) >= 0
    normals = {e.normal for e in poly.edges}
    for e in poly.edges:
        low = min(e.normal(p) for p in poly.support)
        assert e.normal(e.start) == e.normal(e.end) == low
        assert len(e.members) >= 2
        for q in poly.support:
            assert (q in e.members) == (e.normal(q) == low)
    diam = max(max(abs(a[i] - b[i]) for i in range(2)) for a in poly.support for b in poly.support)
    for chi in _primitive(max(diam, 1)):
        if chi in normals:
            continue
        values = [chi(p) for p in poly.support]
        assert values.count(min(values)) == 1


def test_character_class_normalizes():
    assert CharacterClass((2, 4)) == CharacterClass((1, 2))
    assert -CharacterClass((3, -6)) == CharacterClass((-1, 2))
    with pytest.raises(Exception):
        CharacterClass((0, 0))
