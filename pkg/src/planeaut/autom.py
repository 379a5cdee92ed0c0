"""Endomorphisms of K[x,y], elementary factors, and coefficient vectors.

Composition follows the right-action convention: for ``phi = (f1, g1)``
and ``psi = (f2, g2)``,

    compose(phi, psi) = (f2(f1, g1), g2(f1, g1)),

i.e. ``phi o psi (u) = phi(psi(u))`` with endomorphisms acting on
polynomials.  Ordinary function composition of the coordinate maps is not
provided on purpose.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DegreeTooHigh, LengthMismatch, ParseError, SingularAffine
from .fields import Field, Scalar
from .poly2 import Poly2


@dataclass(frozen=True, eq=False)
class Endo:
    """The endomorphism sending x to ``f`` and y to ``g``."""

    f: Poly2
    g: Poly2

    def __post_init__(self):
        self.f.field.check_same(self.g.field)

    @property
    def field(self) -> Field:
        return self.f.field

    @classmethod
    def identity(cls, field: Field) -> "Endo":
        return cls(Poly2.x(field), Poly2.y(field))

    @classmethod
    def parse(cls, f: str, g: str, field: Field) -> "Endo":
        return cls(Poly2.parse(f, field), Poly2.parse(g, field))

    def degree(self):
        return max(self.f.degree(), self.g.degree())

    def __eq__(self, other):
        if not isinstance(other, Endo):
            return NotImplemented
        return self.f == other.f and self.g == other.g

    def __hash__(self):
        return hash((self.f, self.g))

    def __iter__(self):
        return iter((self.f, self.g))

    def __str__(self):
        return f"({self.f}, {self.g})"

    def __repr__(self):
        return f"Endo({self.field.name}: {self})"


def compose(phi: Endo, psi: Endo) -> Endo:
    """Right-action composition ``phi o psi``; see the module docstring."""
    return Endo(psi.f.substitute(phi.f, phi.g), psi.g.substitute(phi.f, phi.g))


def compose_all(field: Field, factors: Sequence[Endo]) -> Endo:
    result = Endo.identity(field)
    for e in factors:
        result = compose(result, e)
    return result


def endo_degree(phi: Endo):
    return phi.degree()


# -- elementary factors ------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    """``(a1*x + b1*y + c1, a2*x + b2*y + c2)``."""

    field: Field
    a1: Scalar
    b1: Scalar
    c1: Scalar
    a2: Scalar
    b2: Scalar
    c2: Scalar

    @classmethod
    def identity(cls, field: Field) -> "AffineMap":
        return cls.of(field, 1, 0, 0, 0, 1, 0)

    @classmethod
    def of(cls, field: Field, *coeffs) -> "AffineMap":
        if len(coeffs) != 6:
            raise LengthMismatch("an affine map has 6 coefficients")
        return cls(field, *(field(c) for c in coeffs))

    @classmethod
    def from_endo(cls, phi: Endo) -> "AffineMap":
        if phi.degree() > 1:
            raise DegreeTooHigh(f"{phi} is not affine")
        f, g = phi.f, phi.g
        return cls(
            phi.field,
            f.coeff(1, 0), f.coeff(0, 1), f.coeff(0, 0),
            g.coeff(1, 0), g.coeff(0, 1), g.coeff(0, 0),
        )

    def coeffs(self) -> tuple:
        return (self.a1, self.b1, self.c1, self.a2, self.b2, self.c2)

    def det(self) -> Scalar:
        fld = self.field
        return fld.sub(fld.mul(self.a1, self.b2), fld.mul(self.a2, self.b1))

    def is_invertible(self) -> bool:
        return self.det() != 0

    def is_triangular(self) -> bool:
        return self.a2 == 0

    def to_endo(self) -> Endo:
        fld = self.field
        f = Poly2(fld, {(1, 0): self.a1, (0, 1): self.b1, (0, 0): self.c1})
        g = Poly2(fld, {(1, 0): self.a2, (0, 1): self.b2, (0, 0): self.c2})
        return Endo(f, g)

    def inverse(self) -> "AffineMap":
        fld = self.field
        d = self.det()
        if d == 0:
            raise SingularAffine("affine map is not invertible")
        di = fld.inv(d)
        # inverse coordinate map of v -> M v + t is v -> M^-1 v - M^-1 t
        m11, m12 = fld.mul(self.b2, di), fld.mul(fld.neg(self.b1), di)
        m21, m22 = fld.mul(fld.neg(self.a2), di), fld.mul(self.a1, di)
        t1 = fld.neg(fld.add(fld.mul(m11, self.c1), fld.mul(m12, self.c2)))
        t2 = fld.neg(fld.add(fld.mul(m21, self.c1), fld.mul(m22, self.c2)))
        return AffineMap(fld, m11, m12, t1, m21, m22, t2)


@dataclass(frozen=True)
class Alpha:
    """Coset representative in A_0: the identity when ``a is None``, else ``(y, x + a*y)``."""

    field: Field
    a: Scalar | None = None

    @property
    def is_iota(self) -> bool:
        return self.a is None

    def to_endo(self) -> Endo:
        fld = self.field
        if self.a is None:
            return Endo.identity(fld)
        return Endo(Poly2.y(fld), Poly2(fld, {(1, 0): 1, (0, 1): self.a}))

    def inverse_endo(self) -> Endo:
        fld = self.field
        if self.a is None:
            return Endo.identity(fld)
        return Endo(Poly2(fld, {(1, 0): fld.neg(self.a), (0, 1): 1}), Poly2.x(fld))


@dataclass(frozen=True)
class Beta:
    """``(x + h(y), y)`` with ``h = h2*y^2 + ... + hm*y^m`` and ``hm != 0``.

    ``h`` holds the coefficients ``(h2, ..., hm)`` in ascending order.
    """

    field: Field
    h: tuple

    def __post_init__(self):
        if len(self.h) < 1 or self.h[-1] == 0:
            raise ValueError("beta factor needs degree >= 2 and a nonzero top coefficient")

    @property
    def degree(self) -> int:
        return len(self.h) + 1

    def h_poly(self) -> Poly2:
        return Poly2(self.field, {(0, k + 2): c for k, c in enumerate(self.h)})

    def to_endo(self) -> Endo:
        return Endo(Poly2.x(self.field) + self.h_poly(), Poly2.y(self.field))

    def inverse_endo(self) -> Endo:
        return Endo(Poly2.x(self.field) - self.h_poly(), Poly2.y(self.field))


def from_factor(factor) -> Endo:
    """The literal pair of an :class:`Alpha`, :class:`Beta` or :class:`AffineMap`."""
    return factor.to_endo()


# -- coefficient vectors -------------------------------------------------------


def monomial_order(n: int) -> list[tuple[int, int]]:
    """Monomials of degree <= n: graded ascending, x before y within a degree."""
    return [(i, d - i) for d in range(n + 1) for i in range(d, -1, -1)]


@dataclass(frozen=True)
class CoeffVector:
    n: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != (self.n + 1) * (self.n + 2):
            raise LengthMismatch(
                f"expected {(self.n + 1) * (self.n + 2)} entries, got {len(self.entries)}"
            )

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator:
        return iter(self.entries)


def vectorize(phi: Endo, n: int) -> CoeffVector:
    if phi.degree() > n:
        raise DegreeTooHigh(f"degree {phi.degree()} > {n}")
    order = monomial_order(n)
    return CoeffVector(n, tuple(phi.f.coeff(*m) for m in order) + tuple(phi.g.coeff(*m) for m in order))


def unvectorize(v, n: int, field: Field) -> Endo:
    entries = tuple(v.entries if isinstance(v, CoeffVector) else v)
    order = monomial_order(n)
    half = len(order)
    if len(entries) != 2 * half:
        raise LengthMismatch(f"expected {2 * half} entries, got {len(entries)}")
    f = Poly2(field, dict(zip(order, entries[:half])))
    g = Poly2(field, dict(zip(order, entries[half:])))
    return Endo(f, g)


# -- JSON ------------------------------------------------------------------------


def poly_to_json(p: Poly2) -> list:
    fld = p.field
    return [[i, j, fld.format_scalar(c)] for (i, j), c in p.sorted_terms()]


def poly_from_json(data, field: Field) -> Poly2:
    try:
        return Poly2(field, {(int(i), int(j)): field.parse_scalar(str(c)) for i, j, c in data})
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad polynomial term list: {exc}") from None


def endo_to_json(phi: Endo) -> dict:
    return {"field": phi.field.name, "f": poly_to_json(phi.f), "g": poly_to_json(phi.g)}


def endo_from_json(data: dict | str, field: Field | None = None) -> Endo:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict) or not {"f", "g"} <= data.keys():
        raise ParseError("endomorphism JSON needs keys 'f' and 'g'")
    if "field" in data:
        declared = Field.parse(str(data["field"]))
        if field is not None and field != declared:
            raise ParseError(f"field flag {field.name} contradicts JSON field {declared.name}")
        field = declared
    if field is None:
        raise ParseError("no field given")
    return Endo(poly_from_json(data["f"], field), poly_from_json(data["g"], field))
