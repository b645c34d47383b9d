"""Dimension scans over congruence subgroups, stabilization checks and the packaged demos."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from ._intmath import primes_upto, totient
from .coinvariants import DimReport, betti_split, coinvariant_dim, ideal_equal_Jm_Jmr
from .errors import CrossCheckFailure, DomainError, InvalidInput, MetabettiError, ResourceLimit
from .fields import QQ, Field, prime_field
from .lattice import MAX_COSETS, congruence_lattice, kernel_lattice_prop53
from .laurent import LaurentPolynomial, default_variables, parse_polynomial

STABILIZED = "stabilized"
GROWING = "growing"
INCONCLUSIVE = "inconclusive"

PROP51_GENERATOR = "y - x^2 + x - 1"
PROP53_GENERATOR = "x2 - x1 - 1"
PROP53_VARIABLES = ("x1", "x2")


@dataclass
class StabilizationReport:
    ideal: Tuple[str, ...]
    field: str
    n: int
    M: int
    dims: List[Tuple[int, int, Optional[int]]]
    claim2_checks: List[Tuple[int, int, Optional[bool]]] = field(default_factory=list)
    verdict: str = INCONCLUSIVE
    witness_chain: Tuple[int, ...] = ()
    errors: Dict[int, str] = field(default_factory=dict)

    def dim_at(self, m: int) -> Optional[int]:
        for mm, _, d in self.dims:
            if mm == m:
                return d
        return None

    @property
    def computed(self) -> List[Tuple[int, int]]:
        return [(m, d) for m, _, d in self.dims if d is not None]

    @property
    def sup_observed(self) -> Optional[int]:
        values = [d for _, d in self.computed]
        return max(values) if values else None

    @property
    def argmax(self) -> Optional[int]:
        sup = self.sup_observed
        for m, d in self.computed:
            if d == sup:
                return m
        return None

    def monotonicity_violations(self) -> List[Tuple[int, int]]:
        """Pairs m | m' with dim(m) > dim(m'); always empty for correct data."""
        comp = dict(self.computed)
        return [(a, b) for a in comp for b in comp
                if a < b and b % a == 0 and comp[a] > comp[b]]

    def to_dict(self) -> dict:
        return {
            "schema": "metabetti.stabilization/1",
            "ideal": list(self.ideal),
            "field": self.field,
            "rank": self.n,
            "M": self.M,
            "dims": [{"m": m, "index": idx, "dim": d} for m, idx, d in self.dims],
            "sup_observed": self.sup_observed,
            "argmax": self.argmax,
            "claim2_checks": [{"m": m, "r": r, "equal": eq} for m, r, eq in self.claim2_checks],
            "verdict": self.verdict,
            "witness_chain": list(self.witness_chain),
            "errors": {str(k): v for k, v in self.errors.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def csv_rows(self) -> List[list]:
        return [[m, idx, "" if d is None else d] for m, idx, d in self.dims]


def _increasing_chain(dims: Dict[int, int], last: int) -> Tuple[int, ...]:
    """Longest chain m_1 | m_2 | ... | last along which dims strictly increase."""
    best: Dict[int, Tuple[int, ...]] = {}
    for m in sorted(dims):
        chain = (m,)
        for d in sorted(dims):
            if d >= m:
                break
            if m % d == 0 and dims[d] < dims[m] and len(best[d]) + 1 > len(chain):
                chain = best[d] + (m,)
        best[m] = chain
    return best.get(last, ())


def dim_sequence(gens: Sequence[LaurentPolynomial], k: Field, M: int, *, n: Optional[int] = None,
                 variables=None, max_cosets: int = MAX_COSETS,
                 claim2_factors: Sequence[int] = (2, 3)) -> StabilizationReport:
    """dim of kQ/(I + aug(Q^m)) for m = 1..M, plus the ideal-equality checks at the first argmax."""
    if M < 1:
        raise InvalidInput(f"scan limit must be >= 1, got {M}")
    gens = list(gens)
    if n is None:
        if not gens:
            raise InvalidInput("rank must be given when there are no generators")
        n = gens[0].n
    names = tuple(g.to_string(variables or default_variables(n)) for g in gens)
    report = StabilizationReport(names, str(k), n, M, [])
    for m in range(1, M + 1):
        index = m**n
        try:
            r = coinvariant_dim(gens, congruence_lattice(m, n), k, max_cosets=max_cosets)
            report.dims.append((m, index, r.dimension))
        except ResourceLimit as exc:
            report.dims.append((m, index, None))
            report.errors[m] = str(exc)

    m_star = report.argmax
    if m_star is None:
        return report
    for r in claim2_factors:
        try:
            eq = ideal_equal_Jm_Jmr(gens, m_star, r, k, n, max_cosets=max_cosets)
        except ResourceLimit as exc:
            eq = None
            report.errors[m_star * r] = str(exc)
        report.claim2_checks.append((m_star, r, eq))

    checks = [eq for _, _, eq in report.claim2_checks]
    dims = dict(report.computed)
    last = max(dims)
    chain = _increasing_chain(dims, last)
    if checks and all(eq is True for eq in checks):
        report.verdict = STABILIZED
    elif len(chain) >= 2 and any(eq is False for eq in checks):
        report.verdict = GROWING
        report.witness_chain = chain
    return report


# -- univariate helpers for the substitution oracle --------------------------------------


def _trim(a, F):
    while a and F.is_zero(a[-1]):
        a.pop()
    return a


def _poly_rem(a, b, F):
    a = _trim(list(a), F)
    inv = F.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = F.mul(a[-1], inv)
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, bc))
        _trim(a, F)
    return a


def _poly_gcd(a, b, F):
    a = _trim(list(a), F)
    b = _trim(list(b), F)
    while b:
        a, b = b, _poly_rem(a, b, F)
    return a


def _cyclic_mul(a, b, m, F):
    out = [F.zero] * m
    for i, x in enumerate(a):
        if F.is_zero(x):
            continue
        for j, y in enumerate(b):
            if not F.is_zero(y):
                k = (i + j) % m
                out[k] = F.add(out[k], F.mul(x, y))
    return out


def substitution_oracle_dim(g: LaurentPolynomial, m: int) -> int:
    """deg gcd(x^m - 1, g(x)^m - 1): the dimension of k[x^±, y^±]/(y - g(x), x^m - 1, y^m - 1)."""
    if g.n != 1:
        raise InvalidInput(f"substitution needs a univariate g, got rank {g.n}")
    if g.is_zero():
        raise DomainError("g = 0 is not a unit, so y = g(x) is impossible")
    if m < 1:
        raise InvalidInput(f"need m >= 1, got {m}")
    F = g.field
    base = [F.zero] * m
    for (e,), c in g.terms.items():
        base[e % m] = F.add(base[e % m], c)
    power = [F.zero] * m
    power[0] = F.one
    k = m
    while k:
        if k & 1:
            power = _cyclic_mul(power, base, m, F)
        base = _cyclic_mul(base, base, m, F)
        k >>= 1
    power[0] = F.sub(power[0], F.one)
    xm1 = [F.neg(F.one)] + [F.zero] * (m - 1) + [F.one]
    return len(_poly_gcd(xm1, power, F)) - 1


# -- the bound on possible root-of-unity orders ----------------------------------------------


@dataclass(frozen=True)
class M0Bound:
    d: int
    feasible_orders: Tuple[int, ...]
    search_limit: int

    @property
    def b(self) -> int:
        return max(self.feasible_orders)

    @property
    def m0_factorial(self) -> int:
        return factorial(self.b)

    @property
    def m0_lcm(self) -> int:
        out = 1
        for s in self.feasible_orders:
            out = lcm(out, s)
        return out

    def to_dict(self) -> dict:
        return {
            "schema": "metabetti.m0bound/1",
            "d": self.d,
            "feasible_orders": list(self.feasible_orders),
            "search_limit": self.search_limit,
            "b": self.b,
            "m0_factorial": self.m0_factorial,
            "m0_lcm": self.m0_lcm,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _ratio(q: int, p: int, k: int) -> Fraction:
    # φ(p^k)^2 / p^k
    phi = p ** (k - 1) * (p - 1)
    return Fraction(phi * phi, q)


def m0_search_limit(d: int) -> int:
    """An s_max such that φ(s)^2 <= d·s forces s <= s_max.

    φ(s)^2/s is multiplicative.  On odd prime powers it is >= 4/3, and on
    powers of 2 it is >= 1/2, so the odd part of a solution has ratio
    product <= 2d and its 2-part has ratio <= d.  Both sets are finite and
    enumerated here.
    """
    cap = 2 * d
    odd_max = 1

    def walk(primes, start, value, ratio):
        nonlocal odd_max
        odd_max = max(odd_max, value)
        for idx in range(start, len(primes)):
            p = primes[idx]
            q, k = p, 1
            if ratio * _ratio(q, p, k) > cap:
                # ratio(p) grows with p, so larger primes fail too
                break
            while ratio * _ratio(q, p, k) <= cap:
                walk(primes, idx + 1, value * q, ratio * _ratio(q, p, k))
                q *= p
                k += 1

    walk([p for p in primes_upto(cap + 3) if p > 2], 0, 1, Fraction(1))
    two_max = 1
    k = 1
    while _ratio(2**k, 2, k) <= d:
        two_max = 2**k
        k += 1
    return odd_max * two_max


def m0_candidates(d: int) -> M0Bound:
    """Every s with φ(s)^2 <= d·s, by exhaustive search below a proven limit."""
    if not isinstance(d, int) or d < 1:
        raise InvalidInput(f"module generator count d must be a positive integer, got {d!r}")
    limit = m0_search_limit(d)
    orders = tuple(s for s in range(1, limit + 1) if totient(s) ** 2 <= d * s)
    return M0Bound(d, orders, limit)


# -- demos -------------------------------------------------------------------------------------


def demo_prop51(p: int, m: int, *, max_cosets: int = MAX_COSETS) -> DimReport:
    """Betti number of (F_p Q/(y - x^2 + x - 1)) ⋊ Q^(p^m); always p^m + 2."""
    F = prime_field(p)
    if m < 1:
        raise InvalidInput(f"need m >= 1, got {m}")
    g = parse_polynomial(PROP51_GENERATOR, F, ("x", "y"))
    q = p**m
    report = betti_split([g], congruence_lattice(q, 2), F, max_cosets=max_cosets)
    report.extra["expected"] = q + 2
    if report.betti != q + 2:
        raise CrossCheckFailure("Betti number differs from p^m + 2", betti=report.betti, expected=q + 2)
    return report


def demo_prop53(p: int, r: int, *, crosscheck: bool = False, max_cosets: int = MAX_COSETS) -> DimReport:
    """Betti number over the kernel of Z^2 -> F_{p^r}^*; at least r + 2, index prime to p."""
    F = prime_field(p)
    S = kernel_lattice_prop53(p, r)
    g = parse_polynomial(PROP53_GENERATOR, F, PROP53_VARIABLES)
    report = betti_split([g], S, F, variables=PROP53_VARIABLES,
                         subgroup=f"prop53:{p},{r}", max_cosets=max_cosets)
    report.extra["lattice"] = S.descriptor()
    report.extra["lower_bound"] = r + 2
    if report.index != p**r - 1 or gcd(report.index, p) != 1:
        raise CrossCheckFailure("subgroup index is not p^r - 1 coprime to p", index=report.index)
    if report.betti < r + 2:
        raise CrossCheckFailure("Betti number below r + 2", betti=report.betti, bound=r + 2)
    if crosscheck:
        from .groebner import groebner_dim

        gdim = groebner_dim([g], S, F)
        report.extra["groebner_dim"] = gdim
        if gdim != report.dimension:
            raise CrossCheckFailure("engines disagree", engine=report.dimension, groebner=gdim)
    return report


def demo_wreath(m: int, *, max_cosets: int = MAX_COSETS) -> DimReport:
    """Z wr Z: the index-m subgroup has first Betti number m + 1."""
    if m < 1:
        raise InvalidInput(f"need m >= 1, got {m}")
    report = betti_split([], congruence_lattice(m, 1), QQ, max_cosets=max_cosets)
    report.extra["expected"] = m + 1
    if report.betti != m + 1:
        raise CrossCheckFailure("Betti number differs from m + 1", betti=report.betti, expected=m + 1)
    return report
