"""Canonical decomposition of plane automorphisms.

Every automorphism of K[x,y] factors uniquely as

    alpha_1 o beta_1 o alpha_2 o beta_2 o ... o alpha_k o beta_k o lambda

with ``alpha_i`` in ``A_0 = {iota} u {(y, x + a*y)}``, ``alpha_2..alpha_k``
different from the identity, ``beta_i = (x + h_i(y), y)`` with
``h_i in y^2 K[y]`` nonzero, and ``lambda`` affine.  ``decompose`` finds it
in two stages: ``peel`` strips leading forms until an affine map is left
(the constructive Jung--van der Kulk reduction), then ``normalize``
rewrites the resulting word into the reduced form of the amalgamated
product A *_C B.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .autom import AffineMap, Alpha, Beta, Endo, compose, compose_all
from .errors import InternalInvariant, NotAutomorphism, NotTriangular, SingularAffine
from .fields import Field, Scalar
from .poly2 import Poly2


@dataclass(frozen=True)
class NormalForm:
    field: Field
    factors: tuple  # of (Alpha, Beta) pairs
    lam: AffineMap

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(tuple(p) for p in self.factors))

    @property
    def k(self) -> int:
        return len(self.factors)

    def degree(self) -> int:
        d = 1
        for _, beta in self.factors:
            d *= beta.degree
        return d

    def beta_degrees(self) -> tuple:
        return tuple(beta.degree for _, beta in self.factors)

    def validate(self) -> None:
        if not self.lam.is_invertible():
            raise InternalInvariant("lambda is singular")
        for idx, (alpha, beta) in enumerate(self.factors):
            if not isinstance(alpha, Alpha) or not isinstance(beta, Beta):
                raise InternalInvariant("malformed factor pair")
            if idx > 0 and alpha.is_iota:
                raise InternalInvariant(f"alpha_{idx + 1} is the identity")
            if beta.degree < 2 or beta.h[-1] == 0:
                raise InternalInvariant(f"beta_{idx + 1} is degenerate")
            if alpha.field != self.field or beta.field != self.field:
                raise InternalInvariant("factor over a different field")
        if self.lam.field != self.field:
            raise InternalInvariant("lambda over a different field")

    def endos(self) -> list[Endo]:
        out = []
        for alpha, beta in self.factors:
            out.append(alpha.to_endo())
            out.append(beta.to_endo())
        out.append(self.lam.to_endo())
        return out


# -- elementary words -----------------------------------------------------------


@dataclass(frozen=True)
class Transvection:
    """``(x + c*y^s, y)`` when ``upper``, else ``(x, y + c*x^s)``."""

    field: Field
    upper: bool
    c: Scalar
    s: int

    def to_endo(self) -> Endo:
        fld = self.field
        if self.upper:
            return Endo(Poly2(fld, {(1, 0): 1, (0, self.s): self.c}), Poly2.y(fld))
        return Endo(Poly2.x(fld), Poly2(fld, {(0, 1): 1, (self.s, 0): self.c}))


@dataclass(frozen=True)
class Swap:
    field: Field

    def to_endo(self) -> Endo:
        return Endo(Poly2.y(self.field), Poly2.x(self.field))


@dataclass(frozen=True)
class ElementaryWord:
    """Factors composed left to right; ``peel`` puts the affine tail first."""

    field: Field
    factors: tuple

    def recompose(self) -> Endo:
        return compose_all(self.field, [f.to_endo() for f in self.factors])


# -- peeling --------------------------------------------------------------------


def _ratio(p: Poly2, q: Poly2) -> Scalar | None:
    """The scalar c with p == c*q for nonzero p, q, or None."""
    fld = p.field
    if p.terms.keys() != q.terms.keys():
        return None
    m = next(iter(q.terms))
    c = fld.div(p.terms[m], q.terms[m])
    for mon, qc in q.terms.items():
        if fld.mul(c, qc) != p.terms[mon]:
            return None
    return c


def _affine_tail(f: Poly2, g: Poly2) -> AffineMap:
    lam = AffineMap.from_endo(Endo(f, g))
    if not lam.is_invertible():
        raise NotAutomorphism(f"terminal affine pair ({f}, {g}) is singular")
    return lam


def peel(phi: Endo) -> ElementaryWord:
    """Reduce ``phi`` by leading forms to an affine map.

    Returns a word ``[lambda, t_m, ..., t_1]`` of an affine tail followed by
    transvections, whose composition is ``phi``.
    """
    fld = phi.field
    f, g = phi.f, phi.g
    steps = []
    while True:
        df, dg = f.degree(), g.degree()
        if df <= 1 and dg <= 1:
            lam = _affine_tail(f, g)
            break
        if df > dg:
            if dg < 1 or df % dg:
                raise NotAutomorphism(f"degrees {df}, {dg} admit no reduction")
            s = df // dg
            gs = g**s
            c = _ratio(f.leading_form(), gs.leading_form())
            if c is None:
                raise NotAutomorphism("leading forms are not proportional")
            f = f - gs.scale(c)
            steps.append(Transvection(fld, True, c, s))
        elif dg > df:
            if df < 1 or dg % df:
                raise NotAutomorphism(f"degrees {df}, {dg} admit no reduction")
            s = dg // df
            fs = f**s
            c = _ratio(g.leading_form(), fs.leading_form())
            if c is None:
                raise NotAutomorphism("leading forms are not proportional")
            g = g - fs.scale(c)
            steps.append(Transvection(fld, False, c, s))
        else:
            c = _ratio(f.leading_form(), g.leading_form())
            if c is None:
                raise NotAutomorphism("leading forms are not proportional")
            f = f - g.scale(c)
            steps.append(Transvection(fld, True, c, 1))
        if max(f.degree(), 0) + max(g.degree(), 0) >= max(df, 0) + max(dg, 0):
            raise NotAutomorphism("reduction step did not lower the degree")
    return ElementaryWord(fld, (lam, *reversed(steps)))


# -- coset splitting ------------------------------------------------------------


def _triangular_parts(tau: Endo):
    """Split ``(A*x + P(y), D*y + F)`` into ``(A, P, D, F)``."""
    f, g = tau.f, tau.g
    A = f.coeff(1, 0)
    if any(i > 0 and (i, j) != (1, 0) for i, j in f.terms) or A == 0:
        raise NotTriangular(f"{tau} is not triangular")
    D = g.coeff(0, 1)
    if any(m not in ((0, 1), (0, 0)) for m in g.terms) or D == 0:
        raise NotTriangular(f"{tau} is not triangular")
    return A, f - Poly2.monomial(f.field, 1, 0, A), D, g.coeff(0, 0)


def split_triangular(tau: Endo) -> tuple[Beta | None, AffineMap]:
    """``tau = beta o c`` with beta in B_0 (None for the identity) and c in C."""
    fld = tau.field
    A, P, D, Fc = _triangular_parts(tau)
    P0, P1 = P.coeff(0, 0), P.coeff(0, 1)
    top = int(max(P.degree(), 1))
    inv_a = fld.inv(A)
    h = tuple(fld.mul(P.coeff(0, k), inv_a) for k in range(2, top + 1))
    c = AffineMap(fld, A, P1, P0, fld.zero, D, Fc)
    return (Beta(fld, h) if h else None), c


def split_affine(lam: AffineMap) -> tuple[Alpha, AffineMap]:
    """``lam = alpha o c`` with alpha in A_0 and c triangular affine."""
    fld = lam.field
    if not lam.is_invertible():
        raise SingularAffine(f"{lam} is not invertible")
    if lam.a2 == 0:
        return Alpha(fld), lam
    a = fld.div(lam.b2, lam.a2)
    c = AffineMap(
        fld, fld.sub(lam.b1, fld.mul(a, lam.a1)), lam.a1, lam.c1, fld.zero, lam.a2, lam.c2
    )
    return Alpha(fld, a), c


# -- normalization ----------------------------------------------------------------


def _is_affine(e: Endo) -> bool:
    return e.degree() <= 1


def _is_triangular(e: Endo) -> bool:
    try:
        _triangular_parts(e)
    except NotTriangular:
        return False
    return True


def _in_c(e: Endo) -> bool:
    return _is_affine(e) and _is_triangular(e)


def _tagged(word: ElementaryWord) -> list[list]:
    fld = word.field
    sigma = Swap(fld).to_endo()
    items = []
    for factor in word.factors:
        if isinstance(factor, Transvection) and factor.s >= 2:
            if factor.upper:
                items.append(["B", factor.to_endo()])
            else:
                upper = Transvection(fld, True, factor.c, factor.s).to_endo()
                items += [["A", sigma], ["B", upper], ["A", sigma]]
        else:
            items.append(["A", factor.to_endo()])
    return items


def _reduce(items: list[list], field: Field) -> list[list]:
    """Merge to a fixpoint so tags alternate and no interior C elements remain."""
    ident = Endo.identity(field)
    while True:
        items = [it for it in items if it[1] != ident]
        in_c = [_in_c(e) for _, e in items]
        for idx, (tag, _) in enumerate(items):
            if not in_c[idx]:
                continue
            nbrs = [j for j in (idx - 1, idx + 1) if 0 <= j < len(items)]
            items[idx][0] = "B" if any(items[j][0] == "B" and not in_c[j] for j in nbrs) else "A"
        merged: list[list] = []
        for tag, e in items:
            if merged and merged[-1][0] == tag:
                merged[-1][1] = compose(merged[-1][1], e)
            else:
                merged.append([tag, e])
        if len(merged) == len(items):
            return merged
        items = merged


def normalize(word: ElementaryWord) -> NormalForm:
    fld = word.field
    items = _reduce(_tagged(word), fld)
    carry = AffineMap.identity(fld)
    pairs = []
    pending = None
    lam = None
    for idx, (tag, e) in enumerate(items):
        e = compose(carry.to_endo(), e)
        if tag == "A":
            if idx == len(items) - 1:
                lam = AffineMap.from_endo(e)
                break
            pending, carry = split_affine(AffineMap.from_endo(e))
        else:
            beta, carry = split_triangular(e)
            if beta is None:
                raise InternalInvariant("triangular factor collapsed into C")
            pairs.append((pending if pending is not None else Alpha(fld), beta))
            pending = None
    if lam is None:
        lam = carry
    nf = NormalForm(fld, tuple(pairs), lam)
    nf.validate()
    return nf


# -- public operations -------------------------------------------------------------


def decompose(phi: Endo) -> NormalForm:
    return normalize(peel(phi))


def recompose(nf: NormalForm) -> Endo:
    return compose_all(nf.field, nf.endos())


def is_automorphism(phi: Endo) -> bool:
    # peel succeeding already certifies phi as a composition of automorphisms
    try:
        peel(phi)
    except NotAutomorphism:
        return False
    return True


def invert_automorphism(phi: Endo) -> Endo:
    nf = decompose(phi)
    return invert_normal_form(nf)


def invert_normal_form(nf: NormalForm) -> Endo:
    fld = nf.field
    inverses = [nf.lam.inverse().to_endo()]
    for alpha, beta in reversed(nf.factors):
        inverses.append(beta.inverse_endo())
        inverses.append(alpha.inverse_endo())
    return compose_all(fld, inverses)


# -- JSON ---------------------------------------------------------------------------


def normal_form_to_json(nf: NormalForm) -> dict:
    fmt = nf.field.format_scalar
    return {
        "factors": [
            {"alpha": "iota" if alpha.is_iota else fmt(alpha.a), "beta": [fmt(c) for c in beta.h]}
            for alpha, beta in nf.factors
        ],
        "lambda": [fmt(c) for c in nf.lam.coeffs()],
    }


def normal_form_from_json(data: dict, field: Field) -> NormalForm:
    from .errors import ParseError

    try:
        pairs = []
        for entry in data["factors"]:
            a = entry["alpha"]
            alpha = Alpha(field) if a == "iota" else Alpha(field, field.parse_scalar(str(a)))
            h = tuple(field.parse_scalar(str(c)) for c in entry["beta"])
            pairs.append((alpha, Beta(field, h)))
        lam = AffineMap.of(field, *(field.parse_scalar(str(c)) for c in data["lambda"]))
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad normal form JSON: {exc}") from None
    nf = NormalForm(field, tuple(pairs), lam)
    try:
        nf.validate()
    except InternalInvariant as exc:
        raise ParseError(f"normal form violates its constraints: {exc}") from None
    return nf


# -- sampling -------------------------------------------------------------------------


def random_scalar(field: Field, rng: random.Random, nonzero: bool = False) -> Scalar:
    while True:
        if field.p is not None:
            c = rng.randrange(field.p)
        else:
            c = field(rng.randint(-5, 5)) / rng.randint(1, 4)
        if c or not nonzero:
            return field(c)


def degree_tuples(max_degree: int, max_k: int) -> list[tuple]:
    """All tuples (n_1..n_k), n_i >= 2, k <= max_k, with product <= max_degree."""
    out = [()]
    frontier = [()]
    for _ in range(max_k):
        nxt = []
        for t in frontier:
            prod = 1
            for d in t:
                prod *= d
            for d in range(2, max_degree // prod + 1):
                nxt.append(t + (d,))
        out += nxt
        frontier = nxt
    return out


def random_affine(field: Field, rng: random.Random) -> AffineMap:
    while True:
        lam = AffineMap(field, *(random_scalar(field, rng) for _ in range(6)))
        if lam.is_invertible():
            return lam


def random_beta(field: Field, rng: random.Random, m: int) -> Beta:
    h = [random_scalar(field, rng) for _ in range(m - 2)] + [random_scalar(field, rng, True)]
    return Beta(field, tuple(h))


def random_normal_form(
    field: Field, rng: random.Random, degrees: Iterable[int] | None = None, *,
    max_degree: int = 12, max_k: int = 3,
) -> NormalForm:
    """A uniformly parametrized normal form; ``degrees`` fixes the beta degrees."""
    if degrees is None:
        degrees = rng.choice(degree_tuples(max_degree, max_k))
    pairs = []
    for idx, m in enumerate(degrees):
        if idx == 0 and rng.random() < 0.25:
            alpha = Alpha(field)
        else:
            alpha = Alpha(field, random_scalar(field, rng))
        pairs.append((alpha, random_beta(field, rng, m)))
    return NormalForm(field, tuple(pairs), random_affine(field, rng))
