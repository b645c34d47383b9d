"""Shared independent oracles and hypothesis strategies."""

import itertools
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from metabetti.fields import QQ, prime_field
from metabetti.laurent import LaurentPolynomial


def dense_rank(rows, p=None):
    """Plain Gaussian elimination over Q (p=None) or F_p on dense rows."""
    rows = [list(r) for r in rows]
    if p is None:
        rows = [[Fraction(x) for x in r] for r in rows]
    else:
        rows = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pr = rows[rank]
        inv = 1 / pr[col] if p is None else pow(pr[col], -1, p)
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col] * inv
                rows[i] = [a - c * b for a, b in zip(rows[i], pr)]
                if p is not None:
                    rows[i] = [a % p for a in rows[i]]
        rank += 1
    return rank


def brute_coinvariant_dim(gens, m, n, p=None):
    """dim k[Z^n/mZ^n]/(translates of gens), built without the lattice module."""
    cells = list(itertools.product(range(m), repeat=n))
    pos = {c: i for i, c in enumerate(cells)}
    rows = []
    for g in gens:
        for shift in cells:
            row = [0] * len(cells)
            for e, c in g.terms.items():
                key = tuple((a + b) % m for a, b in zip(e, shift))
                row[pos[key]] += c
            rows.append(row)
    if not rows:
        return len(cells)
    return len(cells) - dense_rank(rows, p)


FIELDS = [QQ, prime_field(2), prime_field(3)]


@st.composite
def small_polys(draw, field=None, n=2, max_deg=3, max_terms=5, allow_zero=False, coeffs=(-2, 2)):
    if field is None:
        field = draw(st.sampled_from(FIELDS))
    k = draw(st.integers(0 if allow_zero else 1, max_terms))
    terms = {}
    for _ in range(k):
        e = tuple(draw(st.integers(-1, max_deg)) for _ in range(n))
        terms[e] = draw(st.integers(*coeffs))
    f = LaurentPolynomial(field, n, terms)
    if not allow_zero and f.is_zero():
        f = LaurentPolynomial.constant(field, n, 1)
    return f


@pytest.fixture
def F2():
    return prime_field(2)


@pytest.fixture
def F3():
    return prime_field(3)
