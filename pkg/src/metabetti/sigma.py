"""Sigma-complement of cyclic modules k[Z^2]/(f), 2-tameness and the presentability verdict.

For a principal ideal over a field the complement consists of the classes
[χ] whose minimum over supp(f) is attained at two or more support points,
i.e. the inner normals of the edges of the Newton polygon.  Split
extensions (k[Z^2]/(f)) ⋊ Z^2 are finitely presented exactly when that set
has no antipodal pair.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import FrozenSet, List, Optional, Sequence, Tuple

from .errors import DomainError, UnsupportedRank
from .laurent import CharacterClass, LaurentPolynomial, newton_polygon, sort_classes

SCHEMA = "metabetti.sigma/1"

__all__ = [
    "CharacterClass",
    "SigmaReport",
    "sigma_complement_principal",
    "sigma_complement_bruteforce",
    "is_two_tame",
]


def _check(f: LaurentPolynomial):
    if f.n != 2:
        raise UnsupportedRank(f"sigma invariants are computed in rank 2 only, got rank {f.n}")
    if f.is_zero():
        raise DomainError("sigma is undefined for the zero generator")


def sigma_complement_principal(f: LaurentPolynomial) -> FrozenSet[CharacterClass]:
    _check(f)
    if f.is_monomial():
        return frozenset()
    return frozenset(e.normal for e in newton_polygon(f).edges)


def sigma_complement_bruteforce(f: LaurentPolynomial, bound: Optional[int] = None) -> FrozenSet[CharacterClass]:
    """Same set by direct minimization over every primitive χ with |entries| <= bound.

    The default bound (twice the support diameter, at least 2) exceeds the
    entries of every edge normal, since those come from differences of
    support points.
    """
    _check(f)
    support = f.support
    if bound is None:
        diam = max(max(abs(a[i] - b[i]) for i in range(2)) for a in support for b in support)
        bound = max(2, 2 * diam)
    found = set()
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            if gcd(a, b) != 1:
                continue
            values = [a * p[0] + b * p[1] for p in support]
            low = min(values)
            if values.count(low) >= 2:
                found.add(CharacterClass((a, b)))
    return frozenset(found)


@dataclass(frozen=True)
class SigmaReport:
    generator: LaurentPolynomial
    complement: Tuple[CharacterClass, ...]
    antipodal_pairs: Tuple[Tuple[CharacterClass, CharacterClass], ...]

    @property
    def two_tame(self) -> bool:
        return not self.antipodal_pairs

    @property
    def fp_verdict(self) -> bool:
        # split metabelian case only: (k[Z^2]/(f)) ⋊ Z^2
        return self.two_tame

    def to_dict(self, variables: Optional[Sequence[str]] = None) -> dict:
        return {
            "schema": SCHEMA,
            "generator": self.generator.to_string(variables),
            "field": str(self.generator.field),
            "complement": [list(c.vector) for c in self.complement],
            "antipodal_pairs": [[list(a.vector), list(b.vector)] for a, b in self.antipodal_pairs],
            "two_tame": self.two_tame,
            "finitely_presented": self.fp_verdict,
        }

    def to_json(self, variables=None) -> str:
        return json.dumps(self.to_dict(variables))


def is_two_tame(f: LaurentPolynomial) -> SigmaReport:
    complement = sort_classes(sigma_complement_principal(f))
    members = set(complement)
    pairs: List[Tuple[CharacterClass, CharacterClass]] = []
    for chi in complement:
        if -chi in members and chi not in [b for _, b in pairs]:
            pairs.append((chi, -chi))
    return SigmaReport(f, tuple(complement), tuple(pairs))
