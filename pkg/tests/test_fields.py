import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from metabetti.errors import DomainError, InvalidInput, UnsupportedField
from metabetti.fields import (
    QQ,
    Field,
    discrete_log,
    make_extension_field,
    multiplicative_generator,
    multiplicative_order,
    prime_field,
)


def _monic_polys(p, d):
    for low in itertools.product(range(p), repeat=d):
        yield low + (1,)


def _polymul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return tuple(out)


def _irreducible_quadratics(p):
    # a monic quadratic is reducible iff it is a product of two monic linears
    products = {_polymul(a, b, p) for a in _monic_polys(p, 1) for b in _monic_polys(p, 1)}
    return [q for q in _monic_polys(p, 2) if q not in products]


def _brute_order(F, a):
    x, k = a, 1
    while x != F.one:
        x = F.mul(x, a)
        k += 1
    return k


def test_degree_one_extension_is_prime_field():
    F = make_extension_field(2, 1)
    assert F == prime_field(2)
    assert F.modulus is None


@pytest.mark.parametrize("p, expected", [(2, (1, 1, 1)), (3, (1, 0, 1))])
def test_canonical_quadratic_modulus(p, expected):
    oracle = _irreducible_quadratics(p)
    assert min(oracle) == expected
    if p == 2:
        assert oracle == [(1, 1, 1)]
    assert make_extension_field(p, 2).modulus == expected


def test_extension_is_deterministic():
    assert make_extension_field.__wrapped__(2, 5) == make_extension_field.__wrapped__(2, 5)


def test_non_prime_characteristic_names_divisor():
    with pytest.raises(InvalidInput, match="divisible by 3"):
        make_extension_field(9, 2)
    with pytest.raises(InvalidInput, match="divisible by 2"):
        prime_field(4)


def test_reducible_modulus_rejected():
    with pytest.raises(InvalidInput, match="reducible"):
        Field("extension", 2, 2, (1, 0, 1))


def test_generators():
    assert multiplicative_generator(prime_field(2)).value == 1
    assert multiplicative_generator(prime_field(5)).value == 2
    F4 = make_extension_field(2, 2)
    g = multiplicative_generator(F4)
    assert g.value == (0, 1)
    assert _brute_order(F4, g.value) == 3
    u2 = F4.mul(g.value, g.value)
    assert u2 == (1, 1)


@pytest.mark.parametrize("p, r", [(2, 3), (3, 2), (5, 2), (2, 4), (7, 1)])
def test_generator_is_smallest_of_full_order(p, r):
    F = make_extension_field(p, r)
    g = multiplicative_generator(F)
    full = [a for a in F.elements() if not F.is_zero(a) and _brute_order(F, a) == F.size - 1]
    assert g.value == full[0]


def test_generator_over_rationals_unsupported():
    with pytest.raises(UnsupportedField):
        multiplicative_generator(QQ)


def test_discrete_log_examples():
    F4 = make_extension_field(2, 2)
    u = multiplicative_generator(F4)
    assert discrete_log(F4, u, u + 1) == 2
    F5 = prime_field(5)
    assert discrete_log(F5, 2, 1) == 0
    assert discrete_log(F5, 2, 3) == 3


def test_discrete_log_errors():
    F5 = prime_field(5)
    with pytest.raises(DomainError):
        discrete_log(F5, 2, 0)
    with pytest.raises(InvalidInput):
        discrete_log(F5, 4, 1)


@pytest.mark.parametrize("p, r", [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 8),
                                  (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (5, 3), (7, 2),
                                  (11, 2), (13, 2), (251, 1)])
def test_discrete_log_round_trip_everywhere(p, r):
    F = make_extension_field(p, r)
    assert F.size <= 256
    g = multiplicative_generator(F)
    for a in F.elements():
        if F.is_zero(a):
            continue
        L = discrete_log(F, g, a)
        assert 0 <= L < F.size - 1
        assert F.pow(g.value, L) == a


def test_multiplicative_order():
    F = make_extension_field(2, 4)
    assert multiplicative_order(F, multiplicative_generator(F)) == 15
    assert multiplicative_order(F, F.one) == 1


GF8 = make_extension_field(2, 3)
GF9 = make_extension_field(3, 2)
GF25 = make_extension_field(5, 2)


@st.composite
def field_triples(draw):
    F = draw(st.sampled_from([prime_field(7), GF8, GF9, GF25, QQ]))
    if F == QQ:
        elt = st.fractions(max_denominator=50).map(Fraction)
    elif F.kind == "prime":
        elt = st.integers(0, F.p - 1)
    else:
        elt = st.tuples(*[st.integers(0, F.p - 1)] * F.r)
    return F, draw(elt), draw(elt), draw(elt)


@given(field_triples())
def test_field_axioms(t):
    F, a, b, c = t
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(a, b) == F.mul(b, a)
    if not F.is_zero(a):
        assert F.mul(a, F.inv(a)) == F.one


@given(st.integers(-10**30, 10**30), st.integers(1, 10**30), st.integers(-10**30, 10**30), st.integers(1, 10**30))
def test_rational_addition_matches_cross_multiplication(a, b, c, d):
    s = QQ.add(Fraction(a, b), Fraction(c, d))
    assert s.numerator * (b * d) == (a * d + c * b) * s.denominator
    assert s.denominator > 0


def test_field_element_operators():
    F = prime_field(7)
    a = F.element(3)
    assert a + 5 == 1
    assert (a * a).value == 2
    assert (a / a).value == 1
    assert (a ** -1) * a == 1
    assert -a == 4
    assert not F.element(0)
