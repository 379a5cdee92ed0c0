"""Exact sparse polynomials in x, y over a prime field or the rationals."""

from __future__ import annotations

import contextlib
import contextvars
import math
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DegreeLimitExceeded, ZeroPolynomial
from .fields import Field, Scalar
from .parsing import parse_expression

NEG_INF = -math.inf
"""Degree of the zero polynomial."""

DEFAULT_DEGREE_LIMIT = 64
_degree_limit = contextvars.ContextVar("degree_limit", default=DEFAULT_DEGREE_LIMIT)


def degree_limit() -> int:
    return _degree_limit.get()


@contextlib.contextmanager
def max_degree(limit: int):
    """Temporarily change the degree bound enforced by products and substitution."""
    token = _degree_limit.set(limit)
    try:
        yield
    finally:
        _degree_limit.reset(token)


def _check_degree(d) -> None:
    if d > _degree_limit.get():
        raise DegreeLimitExceeded(f"degree {d} exceeds limit {_degree_limit.get()}")


class Poly2:
    """Immutable polynomial stored as ``{(i, j): coeff}`` with no zero entries."""

    __slots__ = ("field", "terms", "_deg", "_hash")

    def __init__(self, field: Field, terms: Mapping[tuple[int, int], Scalar] | None = None):
        self.field = field
        clean = {}
        if terms:
            for mon, c in terms.items():
                c = field(c)
                if c:
                    clean[mon] = c
        self.terms = clean
        self._deg = None
        self._hash = None

    @classmethod
    def _raw(cls, field: Field, terms: dict) -> "Poly2":
        # terms already canonical
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        obj._deg = None
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, field: Field) -> "Poly2":
        return cls._raw(field, {})

    @classmethod
    def const(cls, field: Field, c) -> "Poly2":
        return cls(field, {(0, 0): field(c)})

    @classmethod
    def monomial(cls, field: Field, i: int, j: int, c=1) -> "Poly2":
        return cls(field, {(i, j): field(c)})

    @classmethod
    def x(cls, field: Field) -> "Poly2":
        return cls.monomial(field, 1, 0)

    @classmethod
    def y(cls, field: Field) -> "Poly2":
        return cls.monomial(field, 0, 1)

    @classmethod
    def parse(cls, text: str, field: Field) -> "Poly2":
        return parse_expression(
            text, cls.x(field), cls.y(field), lambda s: cls.const(field, field.parse_scalar(s))
        )

    @classmethod
    def univariate(cls, field: Field, coeffs: Iterable[Scalar], var: str = "y") -> "Poly2":
        """Polynomial sum(c_k * var^k) from ascending coefficients."""
        if var == "x":
            return cls(field, {(k, 0): c for k, c in enumerate(coeffs)})
        return cls(field, {(0, k): c for k, c in enumerate(coeffs)})

    # -- basic queries -----------------------------------------------------

    def degree(self):
        if self._deg is None:
            self._deg = max((i + j for i, j in self.terms), default=NEG_INF)
        return self._deg

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, i: int, j: int) -> Scalar:
        return self.terms.get((i, j), self.field.zero)

    def leading_form(self) -> "Poly2":
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading form")
        d = self.degree()
        return Poly2._raw(self.field, {m: c for m, c in self.terms.items() if m[0] + m[1] == d})

    def homogeneous_part(self, d: int) -> "Poly2":
        return Poly2._raw(self.field, {m: c for m, c in self.terms.items() if m[0] + m[1] == d})

    def uses_x(self) -> bool:
        return any(i for i, _ in self.terms)

    def uses_y(self) -> bool:
        return any(j for _, j in self.terms)

    def evaluate(self, x0: Scalar, y0: Scalar) -> Scalar:
        fld = self.field
        acc = 0
        for (i, j), c in self.terms.items():
            acc += c * x0**i * y0**j
        return fld.reduce(acc) if fld.p is not None else fld(acc)

    # -- arithmetic --------------------------------------------------------

    def _same(self, other: "Poly2") -> None:
        self.field.check_same(other.field)

    def __add__(self, other):
        if not isinstance(other, Poly2):
            other = Poly2.const(self.field, other)
        self._same(other)
        out = dict(self.terms)
        p = self.field.p
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if p is not None:
                v %= p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly2._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        red = self.field.reduce
        return Poly2._raw(self.field, {m: red(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly2):
            other = Poly2.const(self.field, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "Poly2":
        c = self.field(c)
        if not c:
            return Poly2.zero(self.field)
        red = self.field.reduce
        return Poly2._raw(self.field, {m: red(v * c) for m, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            return self.scale(other)
        self._same(other)
        if not self.terms or not other.terms:
            return Poly2.zero(self.field)
        _check_degree(self.degree() + other.degree())
        out: dict = {}
        get = out.get
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                m = (i1 + i2, j1 + j2)
                out[m] = get(m, 0) + c1 * c2
        p = self.field.p
        if p is not None:
            out = {m: v % p for m, v in out.items() if v % p}
        else:
            out = {m: v for m, v in out.items() if v}
        return Poly2._raw(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        if self.terms:
            _check_degree(self.degree() * e)
        result = Poly2.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def substitute(self, u: "Poly2", v: "Poly2") -> "Poly2":
        """Replace x by ``u`` and y by ``v``."""
        return substitute(self, u, v)

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly2.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def key(self) -> tuple:
        """Canonical serialized form, usable as a dict key across processes."""
        return tuple(sorted(self.terms.items()))

    # -- text --------------------------------------------------------------

    def sorted_terms(self):
        """Terms by descending total degree, then descending power of x."""
        return sorted(self.terms.items(), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0]))

    def __str__(self):
        if not self.terms:
            return "0"
        fld = self.field
        parts = []
        for (i, j), c in self.sorted_terms():
            neg = fld.p is None and c < 0
            mag = -c if neg else c
            mono = "*".join(
                s for s in (
                    ("x" if i == 1 else f"x^{i}") if i else "",
                    ("y" if j == 1 else f"y^{j}") if j else "",
                ) if s
            )
            cs = fld.format_scalar(mag)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            parts.append(("- " if neg else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self):
        return f"Poly2({self.field.name}, {self})"


def poly_add(f: Poly2, g: Poly2) -> Poly2:
    return f + g


def poly_mul(f: Poly2, g: Poly2) -> Poly2:
    return f * g


def total_degree(f: Poly2):
    return f.degree()


def leading_form(f: Poly2) -> Poly2:
    return f.leading_form()


def substitute(f: Poly2, u: Poly2, v: Poly2) -> Poly2:
    """Expand f(u, v), reusing powers of u and v across terms."""
    f._same(u)
    f._same(v)
    fld = f.field
    if not f.terms:
        return Poly2.zero(fld)
    max_i = max(i for i, _ in f.terms)
    max_j = max(j for _, j in f.terms)
    one = Poly2.const(fld, 1)
    upow = [one]
    for _ in range(max_i):
        upow.append(upow[-1] * u)
    vpow = [one]
    for _ in range(max_j):
        vpow.append(vpow[-1] * v)
    # group by x-exponent so each u^i multiplies one accumulated polynomial in v
    by_i: dict[int, dict] = {}
    for (i, j), c in f.terms.items():
        by_i.setdefault(i, {})[j] = c
    acc: dict = {}
    p = fld.p
    for i, js in by_i.items():
        inner: dict = {}
        for j, c in js.items():
            for m, vc in vpow[j].terms.items():
                inner[m] = inner.get(m, 0) + c * vc
        inner_poly = Poly2(fld, inner)
        for m, val in (upow[i] * inner_poly).terms.items():
            acc[m] = acc.get(m, 0) + val
    if p is not None:
        acc = {m: c % p for m, c in acc.items() if c % p}
    else:
        acc = {m: c for m, c in acc.items() if c}
    return Poly2._raw(fld, acc)
