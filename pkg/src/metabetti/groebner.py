"""Buchberger's algorithm, used as an independent check on the coinvariant engine.

Laurent ideals are modelled in k[x_1, ..., x_n, t] / (t·x_1···x_n - 1).
Polynomials are plain dicts ``{exponent tuple: raw coefficient}`` internally
and :class:`LaurentPolynomial` (with nonnegative exponents) at the surface.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CrossCheckFailure, FieldMismatch, InvalidInput, ResourceLimit
from .fields import Field
from .lattice import MAX_COSETS, Lattice
from .laurent import LaurentPolynomial, default_variables

MAX_PAIRS = 10**6

GREVLEX = "grevlex"
LEX = "lex"
ELIMINATION = "elimination"


def _grevlex_key(e):
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class MonomialOrder:
    """``elimination`` with split ``s``: variables at positions >= s are eliminated.

    Compares the eliminated block by grevlex first, then the kept block by grevlex.
    """

    kind: str = GREVLEX
    split: Optional[int] = None

    def __post_init__(self):
        if self.kind not in (GREVLEX, LEX, ELIMINATION):
            raise InvalidInput(f"unknown monomial order {self.kind!r}")
        if self.kind == ELIMINATION and (self.split is None or self.split < 0):
            raise InvalidInput("an elimination order needs a block split point")

    def key(self, e):
        if self.kind == GREVLEX:
            return _grevlex_key(e)
        if self.kind == LEX:
            return tuple(e)
        s = self.split
        return (_grevlex_key(e[s:]), _grevlex_key(e[:s]))

    def __str__(self):
        return self.kind if self.kind != ELIMINATION else f"elimination({self.split})"


@dataclass(frozen=True)
class GroebnerBasis:
    order: MonomialOrder
    field: Field
    nvars: int
    polys: Tuple[LaurentPolynomial, ...]
    pair_reductions: int = 0

    def leading_monomials(self) -> List[Tuple[int, ...]]:
        key = self.order.key
        return [max(g.terms, key=key) for g in self.polys]

    def normal_form(self, f: LaurentPolynomial) -> LaurentPolynomial:
        if f.field != self.field or f.n != self.nvars:
            raise FieldMismatch("polynomial does not live in the ring of this basis")
        if any(x < 0 for e in f.terms for x in e):
            raise InvalidInput("normal forms need nonnegative exponents")
        basis = [_Entry(dict(g.terms), self.order.key) for g in self.polys]
        r = _normal_form(dict(f.terms), basis, self.field, self.order.key)
        return LaurentPolynomial(self.field, self.nvars, r)

    def contains(self, f: LaurentPolynomial) -> bool:
        return self.normal_form(f).is_zero()

    def to_strings(self, variables=None) -> List[str]:
        return [g.to_string(variables) for g in self.polys]


class _Entry:
    __slots__ = ("poly", "lm", "lc")

    def __init__(self, poly, key):
        self.poly = poly
        self.lm = max(poly, key=key)
        self.lc = poly[self.lm]


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_scaled(f, g, c, shift, F):
    """f - c * x^shift * g, in place on f."""
    for e, v in g.items():
        e2 = tuple(a + b for a, b in zip(e, shift))
        nv = F.sub(f.get(e2, F.zero), F.mul(c, v))
        if F.is_zero(nv):
            f.pop(e2, None)
        else:
            f[e2] = nv


def _normal_form(f, basis, F, key):
    f = dict(f)
    rem = {}
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for b in basis:
            if _divides(b.lm, lm):
                shift = tuple(x - y for x, y in zip(lm, b.lm))
                _sub_scaled(f, b.poly, F.div(c, b.lc), shift, F)
                break
        else:
            rem[lm] = c
            del f[lm]
    return rem


def _monic(f, F, key):
    lm = max(f, key=key)
    inv = F.inv(f[lm])
    return {e: F.mul(inv, v) for e, v in f.items()}


def _spoly(a: _Entry, b: _Entry, F):
    L = _lcm(a.lm, b.lm)
    out = {}
    _sub_scaled(out, a.poly, F.neg(F.inv(a.lc)), tuple(x - y for x, y in zip(L, a.lm)), F)
    _sub_scaled(out, b.poly, F.inv(b.lc), tuple(x - y for x, y in zip(L, b.lm)), F)
    return out


def buchberger(gens: Sequence[LaurentPolynomial], order: MonomialOrder = MonomialOrder(), *,
               max_pairs: int = MAX_PAIRS) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by polynomials with nonnegative exponents.

    Pairs are taken by smallest lcm degree, then by index; Buchberger's
    coprime and chain criteria are the only pruning.
    """
    gens = [g for g in gens]
    if not gens:
        raise InvalidInput("need at least one generator (use the zero polynomial for the zero ideal)")
    F = gens[0].field
    nvars = gens[0].n
    for g in gens:
        if g.field != F or g.n != nvars:
            raise FieldMismatch("generators must share field and variable count")
        if any(x < 0 for e in g.terms for x in e):
            raise InvalidInput(f"generator {g} has negative exponents; shift it first")
    key = order.key

    G: List[_Entry] = []
    pairs = set()
    for g in gens:
        if g.is_zero():
            continue
        G.append(_Entry(_monic(dict(g.terms), F, key), key))
    for j in range(len(G)):
        for i in range(j):
            pairs.add((i, j))

    reductions = 0
    while pairs:
        i, j = min(pairs, key=lambda ij: (sum(_lcm(G[ij[0]].lm, G[ij[1]].lm)), ij))
        pairs.discard((i, j))
        a, b = G[i], G[j]
        L = _lcm(a.lm, b.lm)
        if all(x == 0 or y == 0 for x, y in zip(a.lm, b.lm)):
            continue
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if (min(i, k), max(i, k)) in pairs or (min(j, k), max(j, k)) in pairs:
                continue
            if _divides(G[k].lm, L):
                skip = True
                break
        if skip:
            continue
        reductions += 1
        if reductions > max_pairs:
            raise ResourceLimit(f"Groebner computation exceeded {max_pairs} pair reductions (max-gb-pairs)")
        h = _normal_form(_spoly(a, b, F), G, F, key)
        if h:
            G.append(_Entry(_monic(h, F, key), key))
            new = len(G) - 1
            for k in range(new):
                pairs.add((k, new))

    # minimal basis, then interreduce
    minimal = []
    for idx, g in enumerate(G):
        redundant = False
        for jdx, h in enumerate(G):
            if jdx == idx:
                continue
            if _divides(h.lm, g.lm) and (h.lm != g.lm or jdx < idx):
                redundant = True
                break
        if not redundant:
            minimal.append(g)
    reduced = []
    for idx, g in enumerate(minimal):
        others = [h for jdx, h in enumerate(minimal) if jdx != idx]
        r = _normal_form(g.poly, others, F, key)
        reduced.append(_Entry(_monic(r, F, key), key))
    reduced.sort(key=lambda e: key(e.lm))
    polys = tuple(LaurentPolynomial(F, nvars, e.poly) for e in reduced)
    return GroebnerBasis(order, F, nvars, polys, reductions)


def satisfies_buchberger_criterion(gb: GroebnerBasis) -> bool:
    key = gb.order.key
    F = gb.field
    entries = [_Entry(dict(g.terms), key) for g in gb.polys]
    for a, b in itertools.combinations(entries, 2):
        if _normal_form(_spoly(a, b, F), entries, F, key):
            return False
    return True


def _nonnegative(f: LaurentPolynomial) -> LaurentPolynomial:
    low = f.min_exponents()
    return f.translate(tuple(-x for x in low))


def _extend(f: LaurentPolynomial, extra: int = 1) -> LaurentPolynomial:
    return LaurentPolynomial(f.field, f.n + extra, {e + (0,) * extra: c for e, c in f.terms.items()})


def laurent_ideal_basis(gens: Sequence[LaurentPolynomial], S: Optional[Lattice], k: Field, *,
                        order: Optional[MonomialOrder] = None, n: Optional[int] = None,
                        max_pairs: int = MAX_PAIRS) -> GroebnerBasis:
    """Basis of (gens) + aug(S) in the model k[x_1..x_n, t]/(t·x_1···x_n - 1).

    The default order eliminates t, so the basis elements free of t generate
    the corresponding ideal of k[x_1..x_n].
    """
    gens = list(gens)
    if n is None:
        if S is not None:
            n = S.n
        elif gens:
            n = gens[0].n
        else:
            raise InvalidInput("rank must be given when there are no generators and no subgroup")
    for g in gens:
        if g.field != k or g.n != n:
            raise FieldMismatch(f"generator {g} does not live in k[Z^{n}] over {k}")
    if S is not None and S.n != n:
        raise FieldMismatch(f"subgroup rank {S.n} differs from {n}")
    order = order or MonomialOrder(ELIMINATION, n)

    ring = []
    for g in gens:
        if not g.is_zero():
            ring.append(_extend(_nonnegative(g)))
    ring.append(LaurentPolynomial(k, n + 1, {(1,) * (n + 1): 1, (0,) * (n + 1): -1}))
    if S is not None:
        for s in S.columns:
            pos = tuple(max(x, 0) for x in s) + (0,)
            neg = tuple(max(-x, 0) for x in s) + (0,)
            if pos != neg:
                ring.append(LaurentPolynomial(k, n + 1, {pos: 1, neg: -1}))
    return buchberger(ring, order, max_pairs=max_pairs)


def staircase_dimension(gb: GroebnerBasis, variables: Optional[Sequence[int]] = None):
    """Number of standard monomials in the given variables (``math.inf`` if unbounded).

    Only basis elements involving no other variable are used; with an
    elimination order these form a basis of the elimination ideal.
    """
    if variables is None:
        variables = range(gb.nvars)
    variables = list(variables)
    others = [i for i in range(gb.nvars) if i not in variables]
    key = gb.order.key
    lms = []
    for g in gb.polys:
        if any(e[i] for e in g.terms for i in others):
            continue
        lm = max(g.terms, key=key)
        lms.append(tuple(lm[i] for i in variables))
    if any(not any(m) for m in lms):
        return 0
    bounds = []
    for v in range(len(variables)):
        pure = [m[v] for m in lms if all(x == 0 for i, x in enumerate(m) if i != v)]
        if not pure:
            return math.inf
        bounds.append(min(pure))
    count = 0
    for mono in itertools.product(*(range(b) for b in bounds)):
        if not any(_divides(m, mono) for m in lms):
            count += 1
    return count


def groebner_dim(gens, S: Lattice, k: Field, *, max_pairs: int = MAX_PAIRS):
    gb = laurent_ideal_basis(gens, S, k, n=S.n, max_pairs=max_pairs)
    return staircase_dimension(gb, range(S.n))


@dataclass(frozen=True)
class CrossCheckReport:
    field: str
    ideal: Tuple[str, ...]
    subgroup: str
    index: int
    engine_dim: int
    groebner_dim: int
    engine_millis: float
    groebner_millis: float

    @property
    def agree(self) -> bool:
        return self.engine_dim == self.groebner_dim

    def to_dict(self, timing: bool = True) -> dict:
        return {
            "schema": "metabetti.crosscheck/1",
            "field": self.field,
            "ideal": list(self.ideal),
            "subgroup": self.subgroup,
            "index": self.index,
            "engine_dim": self.engine_dim,
            "groebner_dim": self.groebner_dim,
            "agree": self.agree,
            "engine_millis": round(self.engine_millis, 3) if timing else None,
            "groebner_millis": round(self.groebner_millis, 3) if timing else None,
        }


def crosscheck_dim(gens, S: Lattice, k: Field, *, variables=None, subgroup=None,
                   max_cosets: int = MAX_COSETS, max_pairs: int = MAX_PAIRS) -> CrossCheckReport:
    """Compute the coinvariant dimension with both engines; raise if they differ."""
    from .coinvariants import coinvariant_dim

    report = coinvariant_dim(gens, S, k, variables=variables, subgroup=subgroup, max_cosets=max_cosets)
    start = time.perf_counter()
    gdim = groebner_dim(gens, S, k, max_pairs=max_pairs)
    gms = (time.perf_counter() - start) * 1000
    result = CrossCheckReport(report.field, report.ideal, report.subgroup, report.index,
                              report.dimension, gdim, report.millis, gms)
    if not result.agree:
        raise CrossCheckFailure("coinvariant engine and Groebner staircase disagree",
                                engine=report.dimension, groebner=gdim,
                                ideal=report.ideal, subgroup=report.subgroup, field=report.field)
    return result


def gb_variable_names(n: int, variables=None) -> Tuple[str, ...]:
    names = tuple(variables) if variables else default_variables(n)
    return names + ("t",)
