"""Worked examples for each public operation, in one place."""

import random

import pytest

from metabetti.coinvariants import coinvariant_dim, ideal_equal_Jm_Jmr, ideal_image, member_of_Jm, project
from metabetti.fields import QQ, prime_field
from metabetti.groebner import (
    GREVLEX,
    LEX,
    ELIMINATION,
    MonomialOrder,
    buchberger,
    crosscheck_dim,
    groebner_dim,
    laurent_ideal_basis,
    staircase_dimension,
)
from metabetti.lattice import congruence_lattice, cosets, identity_lattice
from metabetti.laurent import LaurentPolynomial, parse_polynomial
from metabetti.stability import STABILIZED, dim_sequence, substitution_oracle_dim

F2 = prime_field(2)


def P(text, k=QQ, names=("x", "y")):
    return parse_polynomial(text, k, list(names))


def test_project_example_mod_two():
    table = cosets(congruence_lattice(2, 2))
    coeffs = project(P("y - x^2 + x - 1", F2), table).coeffs
    assert coeffs[table.reduce((0, 1))] == 1
    assert coeffs[table.reduce((1, 0))] == 1
    assert coeffs[table.reduce((0, 0))] == 0
    one = project(P("1"), table).coeffs
    assert one == (1, 0, 0, 0)


def test_rank_examples():
    S = congruence_lattice(3, 2)
    assert ideal_image([], S, QQ).rank == 0
    assert ideal_image([P("1")], S, QQ).rank == 9
    for p, m in [(2, 1), (2, 2), (3, 1)]:
        F = prime_field(p)
        q = p**m
        assert ideal_image([P("y - x^2 + x - 1", F)], congruence_lattice(q, 2), F).rank == q * q - q
    assert coinvariant_dim([], congruence_lattice(3, 2), QQ).dimension == 9


def test_membership_examples():
    S = congruence_lattice(3, 2)
    assert member_of_Jm(P("x^3 - 1"), [P("x + 5*y")], S, QQ)
    assert not member_of_Jm(P("1"), [], S, QQ)
    S4 = congruence_lattice(4, 2)
    gens = [P("y - x^2 + x - 1")]
    gb = laurent_ideal_basis(gens, S4, QQ)
    f = P("x^2 - 1")
    lifted = LaurentPolynomial(QQ, 3, {e + (0,): c for e, c in f.terms.items()})
    assert member_of_Jm(f, gens, S4, QQ) == gb.contains(lifted)


def test_ideal_equal_binomial_rank_two():
    assert not ideal_equal_Jm_Jmr([P("x - 1")], 2, 2, QQ)
    assert ideal_equal_Jm_Jmr([P("x - 1")], 2, 1, QQ)


def test_buchberger_examples():
    gb = buchberger([P("x - 1"), P("y - 1")], MonomialOrder(LEX))
    assert sorted(gb.to_strings()) == ["x - 1", "y - 1"]
    assert staircase_dimension(gb) == 1
    for order in (MonomialOrder(GREVLEX), MonomialOrder(LEX)):
        assert buchberger([P("x^2 - 1", names="x"), P("x^3 - 1", names="x")], order).to_strings(["x"]) == ["x - 1"]
    gb = buchberger([P("y - x^2 + x - 1"), P("x^4 - 1"), P("y^4 - 1")], MonomialOrder(GREVLEX))
    assert staircase_dimension(gb) == 3
    assert staircase_dimension(buchberger([P("x^2 - 1")])) == float("inf")


@pytest.mark.parametrize("m", [1, 2, 3])
def test_laurent_basis_examples(m):
    S = congruence_lattice(m, 2)
    assert groebner_dim([], S, QQ) == m * m
    assert groebner_dim([P("x - 1")], S, QQ) == m


@pytest.mark.parametrize("p", [2, 3, 5])
def test_laurent_basis_standard_generator(p):
    F = prime_field(p)
    assert groebner_dim([P("y - x^2 + x - 1", F)], congruence_lattice(p, 2), F) == p


def test_staircase_prop51_p2_m2():
    gb = laurent_ideal_basis([P("y - x^2 + x - 1", F2)], congruence_lattice(4, 2), F2)
    assert staircase_dimension(gb, range(2)) == 4


def test_crosscheck_examples():
    r = crosscheck_dim([P("y - x^2 + x - 1", F2)], congruence_lattice(8, 2), F2)
    assert r.engine_dim == r.groebner_dim == 8
    r = crosscheck_dim([P("1")], congruence_lattice(3, 2), QQ)
    assert r.engine_dim == r.groebner_dim == 0


def test_unit_ideal_scan():
    report = dim_sequence([P("1")], QQ, 5)
    assert [d for _, _, d in report.dims] == [0] * 5
    assert report.verdict == STABILIZED


@pytest.mark.parametrize("k", [QQ, F2, prime_field(3)])
def test_binomial_scan_any_field(k):
    report = dim_sequence([P("x - 1", k)], k, 6)
    assert [(m, d) for m, _, d in report.dims] == [(m, m) for m in range(1, 7)]
    assert report.verdict == "growing"


@pytest.mark.parametrize("p, e", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])
def test_substitution_prime_power(p, e):
    F = prime_field(p)
    assert substitution_oracle_dim(P("x^2 - x + 1", F, ["x"]), p**e) == p**e


def test_substitution_rational_m4():
    assert substitution_oracle_dim(P("x^2 - x + 1", QQ, ["x"]), 4) == 3


def test_monomial_orders_on_random_triples():
    rng = random.Random(3)
    orders = [MonomialOrder(GREVLEX), MonomialOrder(LEX), MonomialOrder(ELIMINATION, 2)]
    for order in orders:
        for _ in range(300):
            a, b, c = (tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(3))
            ka, kb = order.key(a), order.key(b)
            assert (ka == kb) == (a == b)
            ac = tuple(x + z for x, z in zip(a, c))
            bc = tuple(x + z for x, z in zip(b, c))
            assert (ka < kb) == (order.key(ac) < order.key(bc))
            assert order.key((0, 0, 0)) <= ka


def test_identity_lattice_single_coset():
    assert len(cosets(identity_lattice(2))) == 1
