"""Noncommutative polynomials in K<x,y> and the Dicks commutator test.

Words are packed as ``(length, bits)`` with x = 0 and y = 1, most
significant letter first, so concatenation is a shift and an or.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .autom import Endo
from .errors import NotAutomorphism, ParseError
from .fields import Field, Scalar
from .jvdk import NormalForm
from .parsing import parse_expression
from .poly2 import NEG_INF, Poly2, _check_degree

Word = tuple  # (length, bits)

EMPTY: Word = (0, 0)
X: Word = (1, 0)
Y: Word = (1, 1)


def word(text: str) -> Word:
    bits = 0
    for ch in text:
        if ch not in "xy":
            raise ParseError(f"bad letter {ch!r} in word {text!r}")
        bits = (bits << 1) | (ch == "y")
    return (len(text), bits)


def word_str(w: Word) -> str:
    n, bits = w
    return "".join("y" if (bits >> (n - 1 - k)) & 1 else "x" for k in range(n))


def concat(u: Word, v: Word) -> Word:
    return (u[0] + v[0], (u[1] << v[0]) | v[1])


def letters(w: Word):
    n, bits = w
    for k in range(n - 1, -1, -1):
        yield (bits >> k) & 1


class NcPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: Mapping[Word, Scalar] | None = None):
        self.field = field
        self.terms = {}
        for w, c in (terms or {}).items():
            c = field(c)
            if c:
                self.terms[w] = c

    @classmethod
    def _raw(cls, field, terms):
        obj = cls.__new__(cls)
        obj.field = field
        obj.terms = terms
        return obj

    @classmethod
    def const(cls, field: Field, c=1) -> "NcPoly":
        return cls(field, {EMPTY: c})

    @classmethod
    def x(cls, field: Field) -> "NcPoly":
        return cls(field, {X: 1})

    @classmethod
    def y(cls, field: Field) -> "NcPoly":
        return cls(field, {Y: 1})

    @classmethod
    def parse(cls, text: str, field: Field) -> "NcPoly":
        return parse_expression(
            text, cls.x(field), cls.y(field), lambda s: cls.const(field, field.parse_scalar(s))
        )

    def degree(self):
        return max((w[0] for w in self.terms), default=NEG_INF)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, w) -> Scalar:
        if isinstance(w, str):
            w = word(w)
        return self.terms.get(w, self.field.zero)

    def _combine(self, other, sign):
        self.field.check_same(other.field)
        out = dict(self.terms)
        red = self.field.reduce
        for w, c in other.terms.items():
            v = red(out.get(w, 0) + sign * c)
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NcPoly._raw(self.field, out)

    def __add__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.const(self.field, other)
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.const(self.field, other)
        return self._combine(other, -1)

    def __neg__(self):
        red = self.field.reduce
        return NcPoly._raw(self.field, {w: red(-c) for w, c in self.terms.items()})

    def scale(self, c) -> "NcPoly":
        c = self.field(c)
        red = self.field.reduce
        return NcPoly._raw(self.field, {w: red(v * c) for w, v in self.terms.items() if red(v * c)})

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            return self.scale(other)
        return nc_mul(self, other)

    def __pow__(self, e: int):
        out = NcPoly.const(self.field, 1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, NcPoly) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-t[0][0], t[0][1]))

    def __str__(self):
        if not self.terms:
            return "0"
        fld = self.field
        parts = []
        for w, c in self.sorted_terms():
            neg = fld.p is None and c < 0
            cs = fld.format_scalar(-c if neg else c)
            ws = word_str(w)
            body = cs if not ws else (ws if cs == "1" else f"{cs}*{ws}")
            parts.append(("- " if neg else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"NcPoly({self.field.name}, {self})"

    def abelianize(self) -> Poly2:
        """Image in K[x,y] under the map sending each word to its commutative monomial."""
        out: dict = {}
        for (n, bits), c in self.terms.items():
            j = bin(bits).count("1")
            m = (n - j, j)
            out[m] = out.get(m, 0) + c
        return Poly2(self.field, out)


def _integral(terms: dict, fld: Field) -> tuple[dict, int]:
    """Scale rational coefficients to integers; returns (terms, denominator)."""
    if fld.p is not None:
        return terms, 1
    den = math.lcm(*(c.denominator for c in terms.values()))
    return {w: int(c * den) for w, c in terms.items()}, den


def _accumulate(out: dict, ft: dict, gt: dict, sign: int) -> None:
    by_len: dict = {}
    for (n2, b2), c2 in gt.items():
        by_len.setdefault(n2, []).append((b2, sign * c2))
    get = out.get
    for (n1, b1), c1 in ft.items():
        for n2, items in by_len.items():
            n = n1 + n2
            base = b1 << n2
            for b2, c2 in items:
                w = (n, base | b2)
                out[w] = get(w, 0) + c1 * c2


def _finish(fld: Field, out: dict, den: int) -> NcPoly:
    if fld.p is None:
        return NcPoly._raw(fld, {w: Fraction(c, den) for w, c in out.items() if c})
    p = fld.p
    return NcPoly._raw(fld, {w: c % p for w, c in out.items() if c % p})


def nc_mul(f: NcPoly, g: NcPoly) -> NcPoly:
    f.field.check_same(g.field)
    fld = f.field
    if not f.terms or not g.terms:
        return NcPoly._raw(fld, {})
    _check_degree(f.degree() + g.degree())
    # integer accumulation is far cheaper than Fraction arithmetic
    ft, df = _integral(f.terms, fld)
    gt, dg = _integral(g.terms, fld)
    out: dict = {}
    _accumulate(out, ft, gt, 1)
    return _finish(fld, out, df * dg)


def nc_substitute(f: NcPoly, u: NcPoly, v: NcPoly) -> NcPoly:
    """Replace every x by ``u`` and every y by ``v``, keeping letter order."""
    f.field.check_same(u.field)
    f.field.check_same(v.field)
    fld = f.field
    one = NcPoly.const(fld, 1)
    cache = {EMPTY: one}

    def image(w):
        # memoize prefixes so shared prefixes are expanded once
        if w in cache:
            return cache[w]
        n, bits = w
        prefix = (n - 1, bits >> 1)
        res = image(prefix) * (v if bits & 1 else u)
        cache[w] = res
        return res

    acc = NcPoly._raw(fld, {})
    for w, c in f.terms.items():
        acc = acc + image(w).scale(c)
    return acc


def commutator(f: NcPoly, g: NcPoly) -> NcPoly:
    """fg - gf, accumulated in one pass so the cancelling terms never materialize."""
    f.field.check_same(g.field)
    fld = f.field
    if not f.terms or not g.terms:
        return NcPoly._raw(fld, {})
    _check_degree(f.degree() + g.degree())
    ft, df = _integral(f.terms, fld)
    gt, dg = _integral(g.terms, fld)
    out: dict = {}
    _accumulate(out, ft, gt, 1)
    _accumulate(out, gt, ft, -1)
    return _finish(fld, out, df * dg)


@dataclass(frozen=True, eq=False)
class NcPair:
    f: NcPoly
    g: NcPoly

    @property
    def field(self) -> Field:
        return self.f.field

    def degree(self):
        return max(self.f.degree(), self.g.degree())

    def __eq__(self, other):
        return isinstance(other, NcPair) and self.f == other.f and self.g == other.g

    def __hash__(self):
        return hash((self.f, self.g))

    def __str__(self):
        return f"({self.f}, {self.g})"

    def abelianize(self) -> Endo:
        return Endo(self.f.abelianize(), self.g.abelianize())


def nc_identity(field: Field) -> NcPair:
    return NcPair(NcPoly.x(field), NcPoly.y(field))


def nc_compose(phi: NcPair, psi: NcPair) -> NcPair:
    """Same right-action convention as :func:`planeaut.autom.compose`."""
    return NcPair(nc_substitute(psi.f, phi.f, phi.g), nc_substitute(psi.g, phi.f, phi.g))


XY_BRACKET = {word("xy"): 1, word("yx"): -1}


def dicks_check(pair: NcPair) -> Scalar:
    """The nonzero a with [f, g] = a*(xy - yx), or raise NotAutomorphism."""
    fld = pair.field
    com = commutator(pair.f, pair.g)
    a = com.coeff(word("xy"))
    if a == 0 or com != NcPoly(fld, {word("xy"): a, word("yx"): fld.neg(a)}):
        raise NotAutomorphism("[f, g] is not a nonzero multiple of [x, y]")
    return a


def _poly_to_nc(p: Poly2) -> NcPoly:
    # only pure powers and linear terms occur in the elementary factors
    out = {}
    for (i, j), c in p.terms.items():
        if i and j:
            raise ValueError(f"mixed monomial x^{i}y^{j} has no canonical lift")
        out[(i + j, 0 if i else (1 << j) - 1)] = c
    return NcPoly(p.field, out)


def lift_endo_factor(e: Endo) -> NcPair:
    return NcPair(_poly_to_nc(e.f), _poly_to_nc(e.g))


def lift_tame(nf: NormalForm) -> NcPair:
    """Recompose ``nf`` inside K<x,y>, factor by factor."""
    result = nc_identity(nf.field)
    for e in nf.endos():
        result = nc_compose(result, lift_endo_factor(e))
    return result


def nc_dim_upto(n: int) -> int:
    """Length of the coefficient vector of pairs of degree <= n in K<x,y>."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return 2 ** (n + 2) - 2


# -- JSON ----------------------------------------------------------------------------


def nc_pair_to_json(pair: NcPair) -> dict:
    fmt = pair.field.format_scalar
    return {
        "field": pair.field.name,
        "f": {word_str(w): fmt(c) for w, c in pair.f.sorted_terms()},
        "g": {word_str(w): fmt(c) for w, c in pair.g.sorted_terms()},
    }


def nc_pair_from_json(data: dict | str, field: Field | None = None) -> NcPair:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
    if "field" in data:
        declared = Field.parse(str(data["field"]))
        if field is not None and field != declared:
            raise ParseError(f"field flag {field.name} contradicts JSON field {declared.name}")
        field = declared
    if field is None:
        raise ParseError("no field given")

    def poly(d):
        return NcPoly(field, {word(w): field.parse_scalar(str(c)) for w, c in d.items()})

    try:
        return NcPair(poly(data["f"]), poly(data["g"]))
    except (KeyError, AttributeError) as exc:
        raise ParseError(f"bad noncommutative pair JSON: {exc}") from None
