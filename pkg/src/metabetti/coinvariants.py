"""Coinvariants of cyclic modules kQ/I over finite-index subgroups S of Q = Z^n.

Everything happens inside the finite group algebra k[Q/S]: the quotient
kQ/(I + aug(S)) is k[Q/S] modulo the k-span of all coset translates of the
projected generators, so its dimension is ``index(S) - rank`` of that span.

The span is kept in semi-echelon form keyed on the *highest* coset index of
each row.  With the coset order of :mod:`metabetti.lattice` (first
coordinate fastest) this eliminates the last variable first, which keeps
fill-in low for ideals of the shape ``y - g(x)``.
"""

from __future__ import annotations

import heapq
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CrossCheckFailure, FieldMismatch, InvalidInput
from .fields import PRIME, RATIONALS, Field
from .lattice import MAX_COSETS, CosetTable, Lattice, congruence_lattice, cosets
from .laurent import LaurentPolynomial, default_variables

ENGINE = "group-algebra"
SCHEMA = "metabetti.dimreport/1"
CSV_COLUMNS = ("field", "ideal", "subgroup", "index", "dim", "betti", "engine", "millis")


@dataclass(frozen=True)
class GroupAlgebraElement:
    table: CosetTable = field(repr=False)
    coeffs: Tuple

    def support(self) -> List[int]:
        return [i for i, c in enumerate(self.coeffs) if c]

    def as_sparse(self, F: Field) -> Dict[int, object]:
        return {i: c for i, c in enumerate(self.coeffs) if not F.is_zero(c)}


def _check_inputs(polys, S: Lattice, k: Field):
    for f in polys:
        if f.field != k:
            raise FieldMismatch(f"generator {f} lives over {f.field}, expected {k}")
        if f.n != S.n:
            raise FieldMismatch(f"generator {f} has rank {f.n}, subgroup has rank {S.n}")


def _project_sparse(f: LaurentPolynomial, table: CosetTable, shift=None) -> Dict[int, object]:
    F = f.field
    out = {}
    reduce = table.reduce
    for e, c in f.terms.items():
        if shift is not None:
            e = tuple(a + b for a, b in zip(e, shift))
        i = reduce(e)
        if i in out:
            s = F.add(out[i], c)
            if F.is_zero(s):
                del out[i]
            else:
                out[i] = s
        else:
            out[i] = c
    return out


def project(f: LaurentPolynomial, table: CosetTable) -> GroupAlgebraElement:
    """Image of ``f`` under kQ -> k[Q/S]."""
    if f.n != table.lattice.n:
        raise FieldMismatch(f"polynomial rank {f.n} differs from subgroup rank {table.lattice.n}")
    F = f.field
    coeffs = [F.zero] * len(table)
    for i, c in _project_sparse(f, table).items():
        coeffs[i] = c
    return GroupAlgebraElement(table, tuple(coeffs))


# -- sparse semi-echelon forms ----------------------------------------------------


class _Echelon:
    """Rows stored by leading (largest) column; every other entry of a row is smaller."""

    def __init__(self, field: Field):
        self.field = field
        self.pivots: Dict[int, Dict[int, object]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _prepare(self, vec):
        return dict(vec)

    def _eliminate(self, vec, col, row, push):
        F = self.field
        c = vec[col]
        for k, v in row.items():
            if k in vec:
                nv = F.sub(vec[k], F.mul(c, v))
                if F.is_zero(nv):
                    del vec[k]
                else:
                    vec[k] = nv
            else:
                vec[k] = F.neg(F.mul(c, v))
                push(k)

    def _finish(self, vec, lead):
        F = self.field
        inv = F.inv(vec[lead])
        return {k: F.mul(inv, v) for k, v in vec.items()}

    def _reduce(self, vec):
        heap = [-k for k in vec]
        heapq.heapify(heap)
        pivots = self.pivots

        def push(k):
            heapq.heappush(heap, -k)

        while heap:
            col = -heapq.heappop(heap)
            if col not in vec:
                continue
            row = pivots.get(col)
            if row is None:
                return col
            self._eliminate(vec, col, row, push)
        return None

    def insert(self, vec) -> bool:
        vec = self._prepare(vec)
        lead = self._reduce(vec)
        if lead is None:
            return False
        self.pivots[lead] = self._finish(vec, lead)
        return True

    def contains(self, vec) -> bool:
        vec = self._prepare(vec)
        return self._reduce(vec) is None

    def field_rows(self) -> Dict[int, Dict[int, object]]:
        return self.pivots


class _ModPEchelon(_Echelon):
    def _eliminate(self, vec, col, row, push):
        p = self.field.p
        c = vec[col]
        for k, v in row.items():
            if k in vec:
                nv = (vec[k] - c * v) % p
                if nv:
                    vec[k] = nv
                else:
                    del vec[k]
            else:
                vec[k] = -c * v % p
                push(k)

    def _finish(self, vec, lead):
        p = self.field.p
        inv = pow(vec[lead], -1, p)
        return {k: v * inv % p for k, v in vec.items()}


class _FractionFreeEchelon(_Echelon):
    """Rational rows kept as primitive integer vectors (denominators cleared on entry)."""

    def _prepare(self, vec):
        den = 1
        for v in vec.values():
            den = lcm(den, Fraction(v).denominator)
        return {k: int(Fraction(v) * den) for k, v in vec.items()}

    def _eliminate(self, vec, col, row, push):
        a = row[col]
        b = vec[col]
        g = gcd(a, b)
        a //= g
        b //= g
        if a != 1:
            for k in vec:
                vec[k] *= a
        for k, v in row.items():
            if k in vec:
                nv = vec[k] - b * v
                if nv:
                    vec[k] = nv
                else:
                    del vec[k]
            else:
                vec[k] = -b * v
                push(k)

    def _finish(self, vec, lead):
        g = 0
        for v in vec.values():
            g = gcd(g, v)
        if vec[lead] < 0:
            g = -g
        return {k: v // g for k, v in vec.items()}

    def field_rows(self):
        rows = {}
        for lead, row in self.pivots.items():
            a = row[lead]
            rows[lead] = {k: Fraction(v, a) for k, v in row.items()}
        return rows


def _make_echelon(F: Field, method: str = "auto") -> _Echelon:
    if method == "auto":
        if F.kind == PRIME:
            return _ModPEchelon(F)
        if F.kind == RATIONALS:
            return _FractionFreeEchelon(F)
        return _Echelon(F)
    if method == "generic":
        return _Echelon(F)
    if method == "fraction-free":
        if F.kind != RATIONALS:
            raise InvalidInput("fraction-free elimination is only for the rationals")
        return _FractionFreeEchelon(F)
    raise InvalidInput(f"unknown elimination method {method!r}")


# -- ideal images ---------------------------------------------------------------------


class IdealImage:
    """The image of the ideal generated by ``generators`` inside k[Q/S]."""

    def __init__(self, table: CosetTable, generators, field: Field, echelon: _Echelon):
        self.table = table
        self.generators = tuple(generators)
        self.field = field
        self._echelon = echelon
        self._basis = None

    @property
    def lattice(self) -> Lattice:
        return self.table.lattice

    @property
    def rank(self) -> int:
        return self._echelon.rank

    @property
    def index(self) -> int:
        return len(self.table)

    @property
    def basis(self) -> Tuple[Tuple, ...]:
        """Reduced row-echelon basis, as dense rows ordered by leading (largest) column.

        Each leading entry is 1 and no row has a nonzero entry in another
        row's leading column, so the basis depends only on the span.
        """
        if self._basis is None:
            F = self.field
            rows = {lead: dict(row) for lead, row in self._echelon.field_rows().items()}
            leads = sorted(rows)
            for i, c in enumerate(leads):
                row_c = rows[c]
                for c2 in leads[i + 1 :]:
                    row2 = rows[c2]
                    coef = row2.get(c)
                    if coef is None or F.is_zero(coef):
                        continue
                    for k, v in row_c.items():
                        nv = F.sub(row2.get(k, F.zero), F.mul(coef, v))
                        if F.is_zero(nv):
                            row2.pop(k, None)
                        else:
                            row2[k] = nv
            dense = []
            for lead in sorted(rows, reverse=True):
                line = [F.zero] * self.index
                for k, v in rows[lead].items():
                    line[k] = v
                dense.append(tuple(line))
            self._basis = tuple(dense)
        return self._basis

    def contains(self, element) -> bool:
        if isinstance(element, LaurentPolynomial):
            _check_inputs([element], self.lattice, self.field)
            vec = _project_sparse(element, self.table)
        elif isinstance(element, GroupAlgebraElement):
            vec = element.as_sparse(self.field)
        else:
            raise InvalidInput(f"cannot test membership of {element!r}")
        return self._echelon.contains(vec)


def ideal_image(gens: Sequence[LaurentPolynomial], S: Lattice, k: Field, *,
                max_cosets: int = MAX_COSETS, method: str = "auto") -> IdealImage:
    gens = list(gens)
    _check_inputs(gens, S, k)
    table = cosets(S, max_cosets)
    ech = _make_echelon(k, method)
    index = len(table)
    for g in gens:
        if g.is_zero():
            continue
        for rep in table.representatives:
            if ech.rank == index:
                break
            ech.insert(_project_sparse(g, table, rep))
    return IdealImage(table, gens, k, ech)


# -- reports ---------------------------------------------------------------------------


@dataclass
class DimReport:
    field: str
    ideal: Tuple[str, ...]
    subgroup: str
    index: int
    dimension: int
    n: int
    betti: Optional[int] = None
    engine: str = ENGINE
    millis: Optional[float] = None
    extra: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.dimension <= self.index:
            raise CrossCheckFailure("dimension outside [0, index]", dimension=self.dimension, index=self.index)

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "schema": SCHEMA,
            "field": self.field,
            "ideal": list(self.ideal),
            "subgroup": self.subgroup,
            "rank": self.n,
            "index": self.index,
            "dim": self.dimension,
            "betti": self.betti,
            "engine": self.engine,
            "millis": round(self.millis, 3) if timing and self.millis is not None else None,
        }
        d.update(self.extra)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=False)

    def csv_row(self, timing: bool = True) -> list:
        d = self.to_dict(timing)
        d["ideal"] = "; ".join(self.ideal)
        return ["" if d[c] is None else d[c] for c in CSV_COLUMNS]


def _names(gens, n, variables):
    variables = variables or default_variables(n)
    return tuple(g.to_string(variables) for g in gens)


def coinvariant_dim(gens: Sequence[LaurentPolynomial], S: Lattice, k: Field, *,
                    variables=None, subgroup: Optional[str] = None,
                    max_cosets: int = MAX_COSETS, self_check: bool = False) -> DimReport:
    """dim_k of kQ/(I + aug(S)), with I generated by ``gens``."""
    start = time.perf_counter()
    image = ideal_image(gens, S, k, max_cosets=max_cosets)
    if self_check and k.kind == RATIONALS:
        other = ideal_image(gens, S, k, max_cosets=max_cosets, method="generic")
        if other.rank != image.rank:
            raise CrossCheckFailure("fraction-free and rational elimination ranks differ",
                                    fraction_free=image.rank, rational=other.rank)
    millis = (time.perf_counter() - start) * 1000
    return DimReport(
        field=str(k),
        ideal=_names(gens, S.n, variables),
        subgroup=subgroup or S.descriptor(),
        index=image.index,
        dimension=image.index - image.rank,
        n=S.n,
        millis=millis,
    )


def betti_split(gens, S: Lattice, k: Field, **kwargs) -> DimReport:
    """First Betti number of (kQ/I) ⋊ S: coinvariant dimension plus the rank of S."""
    report = coinvariant_dim(gens, S, k, **kwargs)
    report.betti = report.dimension + S.n
    return report


def direct_sum_betti(modules: Sequence[Sequence[LaurentPolynomial]], S: Lattice, k: Field, **kwargs) -> DimReport:
    """Betti number for A = ⊕ kQ/I_j: the coinvariant dimensions add up."""
    if not modules:
        raise InvalidInput("need at least one summand")
    reports = [coinvariant_dim(gens, S, k, **kwargs) for gens in modules]
    first = reports[0]
    dim = sum(r.dimension for r in reports)
    report = DimReport(
        field=first.field,
        ideal=tuple(" | ".join(r.ideal) or "0" for r in reports),
        subgroup=first.subgroup,
        index=first.index * len(reports),
        dimension=dim,
        n=S.n,
        betti=dim + S.n,
        millis=sum(r.millis or 0.0 for r in reports),
    )
    report.extra["summands"] = len(reports)
    return report


def module_dim_bound(gens, S: Lattice, k: Field, d: int, **kwargs) -> DimReport:
    """Upper bound d·dim for a module generated by d elements with annihilator I."""
    if d < 1:
        raise InvalidInput(f"module generator count must be >= 1, got {d}")
    report = coinvariant_dim(gens, S, k, **kwargs)
    report.extra["module_generators"] = d
    report.extra["dim_upper_bound"] = d * report.dimension
    report.extra["betti_upper_bound"] = d * report.dimension + S.n
    return report


def member_of_Jm(f: LaurentPolynomial, gens, S: Lattice, k: Field, *, max_cosets: int = MAX_COSETS) -> bool:
    """Is ``f`` in the ideal (gens) + aug(S) of kQ?"""
    image = ideal_image(gens, S, k, max_cosets=max_cosets)
    return image.contains(f)


def ideal_equal_Jm_Jmr(gens, m: int, r: int, k: Field, n: Optional[int] = None, *,
                       max_cosets: int = MAX_COSETS) -> bool:
    """Decide J_m == J_{mr} where J_m = (gens, Q^m - 1).

    J_{mr} is contained in J_m, so equality holds exactly when every
    x_i^m - 1 already lies in J_{mr}.
    """
    if m < 1 or r < 1:
        raise InvalidInput(f"need m, r >= 1, got m={m}, r={r}")
    gens = list(gens)
    if n is None:
        if not gens:
            raise InvalidInput("rank must be given when there are no generators")
        n = gens[0].n
    if r == 1:
        return True
    image = ideal_image(gens, congruence_lattice(m * r, n), k, max_cosets=max_cosets)
    for i in range(n):
        e = [0] * n
        e[i] = m
        f = LaurentPolynomial.monomial(k, e) - 1
        if not image.contains(f):
            return False
    return True
