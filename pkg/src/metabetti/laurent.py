"""Laurent polynomials k[x_1^{±1}, ..., x_n^{±1}] over an exact field.

Also hosts the expression parser and the rank-2 Newton polygon, whose edge
normals feed the sigma-invariant computation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from math import gcd
from types import MappingProxyType
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import DomainError, FieldMismatch, InvalidInput, ParseError, UnsupportedRank
from .fields import RATIONALS, Field

EXPONENT_BOUND = 2**31 - 1
MAX_PARSE_POWER = 1000

Exponent = Tuple[int, ...]


def default_variables(n: int) -> Tuple[str, ...]:
    if n == 2:
        return ("x", "y")
    return tuple(f"x{i + 1}" for i in range(n))


def _grlex_key(e: Exponent):
    return (sum(e), e)


class LaurentPolynomial:
    """Finite sum of monomials ``c * x^v`` with ``v`` in Z^n; zero coefficients are never stored."""

    __slots__ = ("field", "n", "_terms", "_hash")

    def __init__(self, field: Field, n: int, terms: Optional[Dict] = None):
        if n < 1:
            raise InvalidInput("polynomial rank must be at least 1")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != n:
                raise InvalidInput(f"exponent vector {exps} does not have length {n}")
            c = field.normalize(c)
            if not field.is_zero(c):
                clean[exps] = c
        self._init(field, n, clean)

    def _init(self, field, n, terms):
        self.field = field
        self.n = n
        self._terms = terms
        self._hash = None

    @classmethod
    def _raw(cls, field, n, terms) -> "LaurentPolynomial":
        obj = cls.__new__(cls)
        obj._init(field, n, terms)
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: Field, n: int) -> "LaurentPolynomial":
        return cls._raw(field, n, {})

    @classmethod
    def constant(cls, field: Field, n: int, c=1) -> "LaurentPolynomial":
        return cls(field, n, {(0,) * n: c})

    @classmethod
    def monomial(cls, field: Field, exps: Sequence[int], c=1) -> "LaurentPolynomial":
        return cls(field, len(exps), {tuple(exps): c})

    @classmethod
    def variable(cls, field: Field, n: int, i: int) -> "LaurentPolynomial":
        e = [0] * n
        e[i] = 1
        return cls._raw(field, n, {tuple(e): field.one})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    @property
    def support(self) -> Tuple[Exponent, ...]:
        return tuple(sorted(self._terms))

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), self.field.zero)

    def min_exponents(self) -> Exponent:
        if not self._terms:
            return (0,) * self.n
        return tuple(min(e[i] for e in self._terms) for i in range(self.n))

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.field == other.field and self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPolynomial.constant(self.field, self.n, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.n, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            if other.field != self.field:
                raise FieldMismatch(f"cannot combine polynomials over {self.field} and {other.field}")
            if other.n != self.n:
                raise FieldMismatch(f"cannot combine polynomials of rank {self.n} and {other.n}")
            return other
        return LaurentPolynomial.constant(self.field, self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.field
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = F.add(terms[e], c) if e in terms else c
            if F.is_zero(s):
                terms.pop(e, None)
            else:
                terms[e] = s
        return LaurentPolynomial._raw(F, self.n, terms)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return LaurentPolynomial._raw(F, self.n, {e: F.neg(c) for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        F = self.field
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = F.mul(c1, c2)
                if e in terms:
                    c = F.add(terms[e], c)
                terms[e] = c
        return LaurentPolynomial._raw(F, self.n, {e: c for e, c in terms.items() if not F.is_zero(c)})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise DomainError("only monomials are units and may be raised to negative powers")
            (e, c), = self._terms.items()
            return LaurentPolynomial._raw(
                self.field, self.n, {tuple(k * x for x in e): self.field.pow(c, k)}
            )
        result = LaurentPolynomial.constant(self.field, self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "LaurentPolynomial":
        F = self.field
        c = F.normalize(c)
        if F.is_zero(c):
            return LaurentPolynomial.zero(F, self.n)
        return LaurentPolynomial._raw(F, self.n, {e: F.mul(c, v) for e, v in self._terms.items()})

    def translate(self, v: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the unit monomial ``x^v``."""
        if len(v) != self.n:
            raise FieldMismatch(f"shift {tuple(v)} does not have length {self.n}")
        return LaurentPolynomial._raw(
            self.field,
            self.n,
            {tuple(a + b for a, b in zip(e, v)): c for e, c in self._terms.items()},
        )

    def evaluate(self, point: Sequence):
        """Value at a point of (k^*)^n, coordinates given as raw field values."""
        F = self.field
        total = F.zero
        for e, c in self._terms.items():
            val = c
            for x, k in zip(point, e):
                val = F.mul(val, F.pow(x, k))
            total = F.add(total, val)
        return total

    # -- printing ----------------------------------------------------------

    def to_string(self, variables: Optional[Sequence[str]] = None) -> str:
        variables = tuple(variables) if variables else default_variables(self.n)
        if len(variables) != self.n:
            raise InvalidInput(f"need {self.n} variable names, got {len(variables)}")
        if not self._terms:
            return "0"
        F = self.field
        out = []
        for e in sorted(self._terms, key=_grlex_key, reverse=True):
            c = self._terms[e]
            negative = F.kind == RATIONALS and c < 0
            if negative:
                c = -c
            mono = "*".join(
                name if k == 1 else f"{name}^{k}" for name, k in zip(variables, e) if k
            )
            cstr = F.format(c)
            if F.kind not in ("rationals", "prime") and cstr != "1" and len(cstr) > 1:
                cstr = f"({cstr})"
            if not mono:
                piece = cstr
            elif c == F.one:
                piece = mono
            else:
                piece = f"{cstr}*{mono}"
            if not out:
                out.append(f"-{piece}" if negative else piece)
            else:
                out.append(f" - {piece}" if negative else f" + {piece}")
        return "".join(out)

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"LaurentPolynomial({self.field}, {self.to_string()!r})"


# -- parser -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            tok = m.group(3)
            if tok not in "+-*/^()":
                raise ParseError(f"unexpected character {tok!r}", text, m.start(3))
            tokens.append(("op", tok, m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, field, variables):
        self.text = text
        self.field = field
        self.variables = list(variables)
        self.n = len(self.variables)
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return ParseError(message, self.text, tok[2])

    def expect(self, value):
        tok = self.advance()
        if tok[1] != value or tok[0] == "int":
            raise self.error(f"expected {value!r}", tok)

    def parse(self):
        poly = self.expression()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        _check_exponents(poly, self.text)
        return poly

    def expression(self):
        sign = None
        if self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            sign = self.advance()[1]
        result = self.term()
        if sign == "-":
            result = -result
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.advance()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self):
        result = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            op_tok = self.advance()
            rhs = self.factor()
            if op_tok[1] == "*":
                result = result * rhs
            else:
                (e, c), = rhs.terms.items() if rhs.is_monomial() else ((None, None),)
                if e is None or any(e):
                    raise ParseError("can only divide by a nonzero constant", self.text, op_tok[2])
                result = result.scale(self.field.inv(c))
        return result

    def signed_int(self):
        tok = self.advance()
        sign = 1
        if tok[0] == "op" and tok[1] in ("+", "-"):
            sign = -1 if tok[1] == "-" else 1
            tok = self.advance()
        if tok[0] != "int":
            raise self.error("expected an integer exponent", tok)
        value = sign * int(tok[1])
        if abs(value) > EXPONENT_BOUND:
            raise ParseError(f"exponent {value} exceeds the bound {EXPONENT_BOUND}", self.text, tok[2])
        return value

    def factor(self):
        tok = self.advance()
        kind, value, pos = tok
        if kind == "int":
            return LaurentPolynomial.constant(self.field, self.n, int(value))
        if kind == "name":
            if value not in self.variables:
                raise ParseError(f"unknown variable {value!r}", self.text, pos)
            e = [0] * self.n
            e[self.variables.index(value)] = 1
            if self.peek()[1] == "^" and self.peek()[0] == "op":
                self.advance()
                e[self.variables.index(value)] = self.signed_int()
            return LaurentPolynomial.monomial(self.field, e)
        if kind == "op" and value == "(":
            inner = self.expression()
            self.expect(")")
            if self.peek()[1] == "^" and self.peek()[0] == "op":
                caret = self.advance()
                k = self.signed_int()
                if k < 0 and not inner.is_monomial():
                    raise ParseError("negative powers need a monomial base", self.text, caret[2])
                if abs(k) > MAX_PARSE_POWER and not inner.is_monomial():
                    raise ParseError(f"power {k} is above {MAX_PARSE_POWER}", self.text, caret[2])
                inner = inner**k
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected token {value!r}", tok)


def _check_exponents(poly, text):
    for e in poly.terms:
        if any(abs(k) > EXPONENT_BOUND for k in e):
            raise ParseError(f"exponent in {e} exceeds the bound {EXPONENT_BOUND}", text, 0)


def parse_polynomial(text: str, field: Field, variables: Optional[Sequence[str]] = None, n=None) -> LaurentPolynomial:
    """Parse an expression such as ``"y - x^2 + x - 1"`` or ``"x^-1 * (x^2 - x)"``.

    Integer literals are mapped into ``field``; ``/`` may only divide by a
    nonzero constant.
    """
    if variables is None:
        variables = default_variables(n if n is not None else 2)
    variables = [v.strip() for v in variables]
    if len(set(variables)) != len(variables) or not all(variables):
        raise InvalidInput(f"variable names must be distinct and nonempty: {variables}")
    return _Parser(text, field, variables).parse()


# -- characters and the Newton polygon ------------------------------------------


@dataclass(frozen=True)
class CharacterClass:
    """A ray [χ] in Hom(Z^2, R), stored as its primitive integer representative."""

    vector: Tuple[int, ...]

    def __post_init__(self):
        v = tuple(int(x) for x in self.vector)
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 0:
            raise InvalidInput("the zero character has no class")
        object.__setattr__(self, "vector", tuple(x // g for x in v))

    def __call__(self, v: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(self.vector, v))

    def __neg__(self):
        return CharacterClass(tuple(-x for x in self.vector))

    def __iter__(self):
        return iter(self.vector)

    def __repr__(self):
        return f"CharacterClass({self.vector})"


def _bearing_cmp(a: CharacterClass, b: CharacterClass) -> int:
    # clockwise from the positive y-axis
    def half(v):
        x, y = v.vector
        return 0 if x > 0 or (x == 0 and y > 0) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    (ax, ay), (bx, by) = a.vector, b.vector
    cross = ax * by - ay * bx
    return (cross > 0) - (cross < 0)


def sort_classes(classes: Iterable[CharacterClass]) -> List[CharacterClass]:
    """Deterministic order: by bearing, clockwise from (0, 1)."""
    return sorted(set(classes), key=cmp_to_key(_bearing_cmp))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Andrew's monotone chain; counterclockwise from the smallest point, no collinear vertices."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


@dataclass(frozen=True)
class Edge:
    start: Tuple[int, int]
    end: Tuple[int, int]
    normal: CharacterClass
    members: Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class NewtonPolygon:
    support: Tuple[Tuple[int, int], ...]
    hull: Tuple[Tuple[int, int], ...]
    edges: Tuple[Edge, ...]

    @property
    def normals(self) -> List[CharacterClass]:
        return sort_classes(e.normal for e in self.edges)


def newton_polygon(f: LaurentPolynomial) -> NewtonPolygon:
    if f.n != 2:
        raise UnsupportedRank(f"Newton polygons are only computed in rank 2, got rank {f.n}")
    if f.is_zero():
        raise DomainError("the zero polynomial has no Newton polygon")
    support = f.support
    hull = convex_hull(support)
    if len(hull) == 1:
        pairs = []
    elif len(hull) == 2:
        pairs = [(hull[0], hull[1]), (hull[1], hull[0])]
    else:
        pairs = list(zip(hull, hull[1:] + hull[:1]))
    edges = []
    for a, b in pairs:
        dx, dy = b[0] - a[0], b[1] - a[1]
        chi = CharacterClass((-dy, dx))
        level = chi(a)
        members = tuple(p for p in support if chi(p) == level)
        edges.append(Edge(a, b, chi, members))
    return NewtonPolygon(tuple(support), tuple(hull), tuple(edges))
