"""Finite-index subgroups of Z^n in Hermite normal form, and their coset tables.

Convention: the generators of a lattice are the *columns* of its basis
matrix.  The canonical form is lower triangular with a positive diagonal,
and every entry left of the diagonal lies in ``[0, diagonal)`` of its row.
With that convention, coset representatives are exactly the vectors whose
``i``-th coordinate lies in ``[0, d_i)``, enumerated with coordinate 0
varying fastest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Sequence, Tuple

from .errors import InvalidInput, ResourceLimit, UnsupportedRank
from .fields import discrete_log, make_extension_field, multiplicative_generator

MAX_RANK = 4
MAX_COSETS = 100_000


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _check_rank(n: int, max_rank: int) -> None:
    if n < 1:
        raise InvalidInput("lattice rank must be at least 1")
    if n > max_rank:
        raise UnsupportedRank(f"rank {n} exceeds the configured cap of {max_rank}")


def hnf_columns(generators: Sequence[Sequence[int]], n: int) -> Tuple[Tuple[int, ...], ...]:
    """Lower-triangular HNF of the subgroup generated by ``generators``.

    Returns the ``n`` basis columns.  Raises InvalidInput when the generators
    do not span a finite-index subgroup.
    """
    cols = [list(map(int, g)) for g in generators]
    for c in cols:
        if len(c) != n:
            raise InvalidInput(f"generator {c} does not have length {n}")
    if len(cols) < n:
        raise InvalidInput(f"{len(cols)} generators cannot span a finite-index subgroup of Z^{n}")

    for i in range(n):
        piv = cols[i]
        for j in range(i + 1, len(cols)):
            other = cols[j]
            b = other[i]
            if b == 0:
                continue
            a = piv[i]
            g, s, t = _xgcd(a, b)
            ag, bg = a // g, b // g
            new_piv = [s * x + t * y for x, y in zip(piv, other)]
            cols[j] = [ag * y - bg * x for x, y in zip(piv, other)]
            piv = new_piv
        if piv[i] == 0:
            raise InvalidInput("matrix is singular: the subgroup has infinite index")
        if piv[i] < 0:
            piv = [-x for x in piv]
        cols[i] = piv
    cols = cols[:n]

    for i in range(n):
        d = cols[i][i]
        for j in range(i):
            q = cols[j][i] // d
            if q:
                cols[j] = [x - q * y for x, y in zip(cols[j], cols[i])]
    return tuple(tuple(c) for c in cols)


@dataclass(frozen=True)
class Lattice:
    """A finite-index subgroup of Z^n; ``basis`` holds rows of the HNF matrix."""

    n: int
    basis: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_generators(cls, generators, n=None, max_rank=MAX_RANK) -> "Lattice":
        generators = [tuple(g) for g in generators]
        if n is None:
            if not generators:
                raise InvalidInput("no generators given")
            n = len(generators[0])
        _check_rank(n, max_rank)
        cols = hnf_columns(generators, n)
        rows = tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))
        return cls(n, rows)

    @property
    def columns(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(row[j] for row in self.basis) for j in range(self.n))

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.basis[i][i] for i in range(self.n))

    @property
    def index(self) -> int:
        return prod(self.diagonal)

    def reduce(self, v: Sequence[int]) -> Tuple[int, ...]:
        """Canonical coset representative of ``v``."""
        w = list(v)
        basis = self.basis
        n = self.n
        for i in range(n):
            d = basis[i][i]
            q = w[i] // d
            if q:
                for k in range(i, n):
                    w[k] -= q * basis[k][i]
        return tuple(w)

    def __contains__(self, v) -> bool:
        return not any(self.reduce(v))

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(c in self for c in other.columns)

    def descriptor(self) -> str:
        d = self.basis[0][0]
        if all(self.basis[i][j] == (d if i == j else 0) for i in range(self.n) for j in range(self.n)):
            return f"m:{d}"
        return ";".join(",".join(map(str, c)) for c in self.columns)

    def __str__(self):
        return self.descriptor()


def hnf(M: Sequence[Sequence[int]], max_rank=MAX_RANK) -> Lattice:
    """Lattice spanned by the columns of the square integer matrix ``M`` (given as rows)."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise InvalidInput("hnf expects a square matrix")
    cols = [[M[i][j] for i in range(n)] for j in range(n)]
    return Lattice.from_generators(cols, n, max_rank=max_rank)


def identity_lattice(n: int) -> Lattice:
    return congruence_lattice(1, n)


def congruence_lattice(m: int, n: int, max_rank=MAX_RANK) -> Lattice:
    """The subgroup m·Z^n of m-th powers."""
    if not isinstance(m, int) or m <= 0:
        raise InvalidInput(f"congruence modulus must be a positive integer, got {m!r}")
    _check_rank(n, max_rank)
    return Lattice(n, tuple(tuple(m if i == j else 0 for j in range(n)) for i in range(n)))


def kernel_lattice_prop53(p: int, r: int) -> Lattice:
    """Kernel of Z^2 -> F_{p^r}^*, (1,0) -> w, (0,1) -> w + 1, for the canonical generator w."""
    if not isinstance(r, int) or r < 2:
        raise InvalidInput(f"need extension degree r >= 2, got {r!r}")
    F = make_extension_field(p, r)
    w = multiplicative_generator(F)
    L = discrete_log(F, w, w + 1)
    q1 = F.size - 1
    return Lattice.from_generators([(q1, 0), (-L, 1)], 2)


@dataclass(frozen=True)
class CosetTable:
    lattice: Lattice
    representatives: Tuple[Tuple[int, ...], ...] = field(repr=False)
    radices: Tuple[int, ...] = field(repr=False)

    def __len__(self):
        return len(self.representatives)

    def reduce(self, v: Sequence[int]) -> int:
        """Position of the coset of ``v`` in :attr:`representatives`."""
        w = self.lattice.reduce(v)
        return sum(x * r for x, r in zip(w, self.radices))


def cosets(S: Lattice, max_cosets=MAX_COSETS) -> CosetTable:
    index = S.index
    if index > max_cosets:
        raise ResourceLimit(f"subgroup {S} has index {index}, above the coset limit {max_cosets}")
    diag = S.diagonal
    radices = []
    acc = 1
    for d in diag:
        radices.append(acc)
        acc *= d
    reps = []
    for idx in range(index):
        v = []
        for d in diag:
            idx, rem = divmod(idx, d)
            v.append(rem)
        reps.append(tuple(v))
    return CosetTable(S, tuple(reps), tuple(radices))
