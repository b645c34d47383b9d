"""Exact coefficient fields: the rationals, prime fields and small extension fields.

A :class:`Field` is an immutable descriptor that also carries the arithmetic.
Raw element values are plain Python objects so that the polynomial and
linear-algebra code can work on them without wrapping:

* rationals: :class:`fractions.Fraction`
* ``F_p``: ``int`` in ``range(p)``
* ``F_{p^r}``: tuple of ``r`` ints, coefficients of ``1, u, ..., u^(r-1)``
  modulo the defining polynomial.

:class:`FieldElement` wraps a raw value together with its field for the
user-facing API (generators, discrete logarithms).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Iterator, Optional, Tuple

from ._intmath import factorize, smallest_divisor
from .errors import DomainError, FieldMismatch, InvalidInput, UnsupportedField

RATIONALS = "rationals"
PRIME = "prime"
EXTENSION = "extension"


def _check_prime(p) -> None:
    if not isinstance(p, int) or isinstance(p, bool) or p < 2:
        raise InvalidInput(f"characteristic must be a prime integer >= 2, got {p!r}")
    d = smallest_divisor(p)
    if d != p:
        raise InvalidInput(f"{p} is not prime: divisible by {d}")


# -- univariate polynomials over F_p, coefficient lists low-degree first ------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _polymod_p(a, b, p):
    """Remainder of a by b over F_p (b nonzero, lists low-degree first)."""
    a = _trim([x % p for x in a])
    inv_lead = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bc in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bc) % p
        _trim(a)
    return a


def is_irreducible_mod_p(modulus, p) -> bool:
    """Brute-force irreducibility test for a monic polynomial over F_p.

    Tries every monic divisor of degree 1..deg/2; fine for desk-sized fields.
    """
    deg = len(modulus) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _polymod_p(list(modulus), list(low) + [1], p):
                return False
    return True


@dataclass(frozen=True)
class Field:
    kind: str
    p: int = 0
    r: int = 1
    modulus: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.p != 0 or self.r != 1 or self.modulus is not None:
                raise InvalidInput("the rationals take no characteristic or modulus")
        elif self.kind == PRIME:
            _check_prime(self.p)
            if self.r != 1 or self.modulus is not None:
                raise InvalidInput("a prime field has degree 1 and no modulus")
        elif self.kind == EXTENSION:
            _check_prime(self.p)
            if self.r < 2:
                raise InvalidInput("extension degree must be >= 2 (use the prime field)")
            mod = self.modulus
            if mod is None or len(mod) != self.r + 1 or mod[-1] != 1:
                raise InvalidInput(f"modulus must be monic of degree {self.r}")
            if any(not 0 <= c < self.p for c in mod):
                raise InvalidInput("modulus coefficients must lie in range(p)")
            if not is_irreducible_mod_p(mod, self.p):
                raise InvalidInput(f"modulus {mod} is reducible over F_{self.p}")
        else:
            raise InvalidInput(f"unknown field kind {self.kind!r}")

    # -- descriptors ---------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind != RATIONALS

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def size(self) -> Optional[int]:
        return None if self.kind == RATIONALS else self.p**self.r

    def __str__(self):
        if self.kind == RATIONALS:
            return "Q"
        if self.kind == PRIME:
            return f"F{self.p}"
        return f"GF({self.p}^{self.r})"

    def __repr__(self):
        return f"Field({self})"

    # -- raw-value arithmetic ------------------------------------------------

    @property
    def zero(self):
        if self.kind == RATIONALS:
            return Fraction(0)
        if self.kind == PRIME:
            return 0
        return (0,) * self.r

    @property
    def one(self):
        if self.kind == RATIONALS:
            return Fraction(1)
        if self.kind == PRIME:
            return 1
        return (1,) + (0,) * (self.r - 1)

    def from_int(self, n: int):
        if self.kind == RATIONALS:
            return Fraction(n)
        if self.kind == PRIME:
            return n % self.p
        return (n % self.p,) + (0,) * (self.r - 1)

    def normalize(self, value):
        """Coerce ``value`` (int, Fraction, tuple or FieldElement) into a raw value."""
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch(f"element of {value.field} used in {self}")
            return value.value
        if self.kind == RATIONALS:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
        elif self.kind == PRIME:
            if isinstance(value, int):
                return value % self.p
            if isinstance(value, Fraction):
                return self.div(value.numerator % self.p, value.denominator % self.p)
        else:
            if isinstance(value, int):
                return self.from_int(value)
            if isinstance(value, Fraction):
                return self.div(self.from_int(value.numerator), self.from_int(value.denominator))
            if isinstance(value, (tuple, list)) and len(value) == self.r:
                return tuple(int(c) % self.p for c in value)
        raise InvalidInput(f"cannot interpret {value!r} as an element of {self}")

    def is_zero(self, a) -> bool:
        if self.kind == EXTENSION:
            return not any(a)
        return a == 0

    def add(self, a, b):
        if self.kind == RATIONALS:
            return a + b
        p = self.p
        if self.kind == PRIME:
            return (a + b) % p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.kind == RATIONALS:
            return a - b
        p = self.p
        if self.kind == PRIME:
            return (a - b) % p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        if self.kind == RATIONALS:
            return -a
        p = self.p
        if self.kind == PRIME:
            return -a % p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        if self.kind == RATIONALS:
            return a * b
        p = self.p
        if self.kind == PRIME:
            return a * b % p
        r = self.r
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        mod = self.modulus
        for k in range(2 * r - 2, r - 1, -1):
            c = prod[k] % p
            if c:
                for i in range(r):
                    prod[k - r + i] -= c * mod[i]
        return tuple(c % p for c in prod[:r])

    def inv(self, a):
        if self.is_zero(a):
            raise DomainError(f"division by zero in {self}")
        if self.kind == RATIONALS:
            return 1 / a
        if self.kind == PRIME:
            return pow(a, -1, self.p)
        return self.pow(a, self.size - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def elements(self) -> Iterator:
        """All elements in lexicographic order of their coefficient vectors."""
        if self.kind == RATIONALS:
            raise UnsupportedField("the rationals cannot be enumerated")
        if self.kind == PRIME:
            return iter(range(self.p))
        return itertools.product(range(self.p), repeat=self.r)

    def format(self, a) -> str:
        if self.kind == RATIONALS:
            return str(a)
        if self.kind == PRIME:
            return str(a)
        terms = []
        for i, c in enumerate(a):
            if not c:
                continue
            mono = "" if i == 0 else ("u" if i == 1 else f"u^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(reversed(terms)) if terms else "0"

    def element(self, value) -> "FieldElement":
        return FieldElement(self, self.normalize(value))


@dataclass(frozen=True)
class FieldElement:
    field: Field
    value: object

    def _other(self, other):
        return self.field.normalize(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.field, self.field.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElement(self.field, self.field.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.normalize(other)
        except (InvalidInput, FieldMismatch):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"FieldElement({self.field}, {self})"


QQ = Field(RATIONALS)


@lru_cache(maxsize=None)
def prime_field(p: int) -> Field:
    return Field(PRIME, p)


@lru_cache(maxsize=None)
def make_extension_field(p: int, r: int) -> Field:
    """``F_{p^r}`` with the lexicographically smallest monic irreducible modulus.

    Coefficient tuples are compared low-degree first, so the choice is
    reproducible.  ``r == 1`` returns the prime field.
    """
    _check_prime(p)
    if not isinstance(r, int) or r < 1:
        raise InvalidInput(f"extension degree must be a positive integer, got {r!r}")
    if r == 1:
        return prime_field(p)
    for low in itertools.product(range(p), repeat=r):
        modulus = low + (1,)
        if low[0] and is_irreducible_mod_p(modulus, p):
            return Field(EXTENSION, p, r, modulus)
    raise AssertionError("irreducible polynomials exist in every degree")


def _require_finite(F: Field) -> None:
    if not F.is_finite:
        raise UnsupportedField(f"{F} has no finite multiplicative group")


def multiplicative_order(F: Field, a) -> int:
    _require_finite(F)
    a = F.normalize(a)
    if F.is_zero(a):
        raise DomainError("zero has no multiplicative order")
    order = F.size - 1
    for q in factorize(order):
        while order % q == 0 and F.pow(a, order // q) == F.one:
            order //= q
    return order


def _is_generator(F: Field, a) -> bool:
    n = F.size - 1
    if F.is_zero(a):
        return False
    return all(F.pow(a, n // q) != F.one for q in factorize(n))


def multiplicative_generator(F: Field) -> FieldElement:
    """Lexicographically smallest element of order ``|F| - 1``."""
    _require_finite(F)
    for value in F.elements():
        if _is_generator(F, value):
            return FieldElement(F, value)
    raise AssertionError("finite fields have cyclic unit groups")


def discrete_log(F: Field, base, a) -> int:
    """The unique ``L`` in ``[0, |F| - 1)`` with ``base**L == a`` (baby-step/giant-step)."""
    _require_finite(F)
    base = F.normalize(base)
    a = F.normalize(a)
    if F.is_zero(a):
        raise DomainError("discrete logarithm of zero is undefined")
    if not _is_generator(F, base):
        raise InvalidInput(f"{F.format(base)} does not generate the unit group of {F}")
    n = F.size - 1
    step = isqrt(n - 1) + 1 if n > 1 else 1
    baby = {}
    cur = F.one
    for j in range(step):
        baby.setdefault(cur, j)
        cur = F.mul(cur, base)
    giant = F.pow(base, -step)
    gamma = a
    for i in range(step + 1):
        j = baby.get(gamma)
        if j is not None:
            return (i * step + j) % n
        gamma = F.mul(gamma, giant)
    raise AssertionError("baby-step/giant-step missed a logarithm of a generator")
