"""Parametrization of automorphisms of fixed degree and finite-field censuses.

For an ordered factorization ``n = n_1 * ... * n_k`` (``n_i >= 2``) the
automorphisms whose normal form has beta degrees ``(n_1, ..., n_k)`` are
parametrized by

    (a_1, ..., a_k, h^(1), ..., h^(k), lambda)

where ``a_1`` may be absent (alpha_1 the identity).  Counting the parameter
choices over F_q gives exact polynomials in q whose degree is the dimension
of the corresponding stratum.
"""

from __future__ import annotations

import csv
import io
import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from .autom import AffineMap, Alpha, Beta, Endo, monomial_order
from .errors import BudgetExceeded, ConstraintViolation, DegreeMismatch
from .fields import Field, Scalar
from .jvdk import NormalForm, is_automorphism, recompose
from .poly2 import Poly2

Factorization = tuple  # of ints >= 2

DEFAULT_BUDGET = 2**24


@dataclass(frozen=True)
class CensusConfig:
    bruteforce_budget: int = DEFAULT_BUDGET
    structured_budget: int = DEFAULT_BUDGET
    workers: int = 1


# -- factorizations and dimensions -------------------------------------------


def ordered_factorizations(n: int) -> list[Factorization]:
    """All ordered factorizations into parts >= 2, by length and then lexicographically."""
    if n < 2:
        raise ValueError("n must be at least 2")
    out = []

    def rec(rest, prefix):
        if rest == 1:
            out.append(prefix)
            return
        for d in range(2, rest + 1):
            if rest % d == 0:
                rec(rest // d, prefix + (d,))

    rec(n, ())
    return sorted(out, key=lambda t: (len(t), t))


def param_dimension(fact: Factorization, alpha1_free: bool) -> int:
    m = sum(fact) + 6
    return m if alpha1_free else m - 1


def dimension_degree(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    return max(param_dimension(f, True) for f in ordered_factorizations(n))


def dimension_upto(n: int) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    return max([6] + [dimension_degree(i) for i in range(2, n + 1)])


def dimension_coordinates(n: int) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    return 3 if n == 1 else n + 3


def max_factor_sum(limit: int) -> list[int]:
    """``best[n]`` = max of sum(parts) over ordered factorizations of n, for n <= limit."""
    best = [0, 0] + [0] * (limit - 1)
    for n in range(2, limit + 1):
        b = n
        d = 2
        while d * d <= n:
            if n % d == 0:
                b = max(b, d + best[n // d], n // d + best[d])
            d += 1
        best[n] = b
    return best


# -- counting polynomials ----------------------------------------------------------


class CountPoly:
    """Integer polynomial in q, coefficients lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[int] = ()):
        c = [int(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def q(cls) -> "CountPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> "CountPoly":
        return cls((c,))

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero counting polynomial has no degree")
        return len(self.coeffs) - 1

    def leading(self) -> int:
        return self.coeffs[-1]

    def _pad(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return (self.coeffs + (0,) * (n - len(self.coeffs)),
                other.coeffs + (0,) * (n - len(other.coeffs)))

    def __add__(self, other):
        if isinstance(other, int):
            other = CountPoly.const(other)
        a, b = self._pad(other)
        return CountPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = CountPoly.const(other)
        a, b = self._pad(other)
        return CountPoly([x - y for x, y in zip(a, b)])

    def __mul__(self, other):
        if isinstance(other, int):
            other = CountPoly.const(other)
        out = [0] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return CountPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = CountPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = CountPoly.const(other)
        return isinstance(other, CountPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"CountPoly({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mono = "" if d == 0 else ("q" if d == 1 else f"q^{d}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


_Q = CountPoly.q()
AFFINE_GROUP_ORDER = _Q**2 * (_Q**2 - 1) * (_Q**2 - _Q)


def count_normal_prefix(fact: Factorization) -> CountPoly:
    """Number of choices of ``alpha_1 beta_1 ... alpha_k beta_k`` for ``fact``."""
    total = (_Q + 1) * _Q ** (len(fact) - 1)
    for m in fact:
        total = total * (_Q - 1) * _Q ** (m - 2)
    return total


def count_factorization(fact: Factorization) -> CountPoly:
    return count_normal_prefix(fact) * AFFINE_GROUP_ORDER


def count_exact_degree(n: int) -> CountPoly:
    """Automorphisms of degree exactly n over F_q, as a polynomial in q."""
    if n < 2:
        raise ValueError("n must be at least 2")
    total = CountPoly()
    for fact in ordered_factorizations(n):
        total = total + count_factorization(fact)
    return total


def count_coordinates(n: int) -> CountPoly:
    """Coordinates of degree exactly n over F_q.

    In a degree-n automorphism ``psi o lambda`` (psi the alpha/beta prefix)
    the first component has degree n and the second degree < n exactly when
    ``a1 != 0`` and ``a2 = 0``; each coordinate carries ``q(q-1)``
    complements of lower degree.
    """
    if n == 1:
        return (_Q**2 - 1) * _Q
    total = CountPoly()
    for fact in ordered_factorizations(n):
        total = total + count_normal_prefix(fact)
    return total * (_Q - 1) * _Q**2


def census_degree_q(count: CountPoly) -> int:
    return count.degree()


def leading_factorizations(n: int) -> list[Factorization]:
    """The factorizations whose count polynomial reaches the top q-degree."""
    facts = ordered_factorizations(n)
    degs = {f: count_factorization(f).degree() for f in facts}
    top = max(degs.values())
    return [f for f in facts if degs[f] == top]


# -- parameter points -----------------------------------------------------------------


@dataclass(frozen=True)
class ParamPoint:
    """Structured coordinates of a normal form for a fixed factorization.

    ``betas[i]`` holds ``(h_2, ..., h_m)`` ascending; :meth:`vector` emits the
    flat point in the order ``a_1..a_k, (h_m..h_2) per beta, a1 b1 c1 a2 b2 c2``.
    """

    field: Field
    alpha1: Alpha
    alphas: tuple
    betas: tuple
    lam: AffineMap

    def vector(self) -> tuple:
        head = () if self.alpha1.is_iota else (self.alpha1.a,)
        body = tuple(self.alphas)
        for h in self.betas:
            body += tuple(reversed(h))
        return head + body + self.lam.coeffs()


def theta(nf: NormalForm) -> ParamPoint:
    if nf.k == 0:
        raise ValueError("affine automorphisms carry no factorization")
    alpha1 = nf.factors[0][0]
    alphas = tuple(a.a for a, _ in nf.factors[1:])
    betas = tuple(b.h for _, b in nf.factors)
    return ParamPoint(nf.field, alpha1, alphas, betas, nf.lam)


def theta_inverse(point: ParamPoint, fact: Factorization) -> NormalForm:
    fld = point.field
    if len(point.betas) != len(fact) or len(point.alphas) != len(fact) - 1:
        raise ConstraintViolation("parameter point does not match the factorization")
    for h, m in zip(point.betas, fact):
        if len(h) != m - 1:
            raise ConstraintViolation(f"beta of degree {m} needs {m - 1} coefficients")
        if h[-1] == 0:
            raise ConstraintViolation("top coefficient h_n must be nonzero")
    if any(a is None for a in point.alphas):
        raise ConstraintViolation("alpha_2..alpha_k must differ from the identity")
    if not point.lam.is_invertible():
        raise ConstraintViolation("affine part must satisfy a1*b2 != a2*b1")
    alphas = (point.alpha1,) + tuple(Alpha(fld, a) for a in point.alphas)
    betas = tuple(Beta(fld, tuple(h)) for h in point.betas)
    return NormalForm(fld, tuple(zip(alphas, betas)), point.lam)


# -- enumeration ----------------------------------------------------------------------


def _invertible_affines(fld: Field) -> list[AffineMap]:
    els = list(fld.elements())
    out = []
    for coeffs in itertools.product(els, repeat=6):
        lam = AffineMap(fld, *coeffs)
        if lam.is_invertible():
            out.append(lam)
    return out


def _betas(fld: Field, m: int) -> list[tuple]:
    els = list(fld.elements())
    return [lower + (top,) for lower in itertools.product(els, repeat=m - 2)
            for top in els if top]


def enumerate_param_points(n: int, q: int, budget: int = DEFAULT_BUDGET) -> Iterator[tuple]:
    """Yield ``(factorization, ParamPoint)`` over every admissible parameter tuple."""
    fld = Field(q)
    size = count_exact_degree(n)(q)
    if size > budget:
        raise BudgetExceeded(f"{size} parameter points exceed budget {budget}")
    lams = _invertible_affines(fld)
    els = list(fld.elements())
    alpha1s = [Alpha(fld)] + [Alpha(fld, a) for a in els]
    for fact in ordered_factorizations(n):
        beta_spaces = [_betas(fld, m) for m in fact]
        for alpha1 in alpha1s:
            for alphas in itertools.product(els, repeat=len(fact) - 1):
                for betas in itertools.product(*beta_spaces):
                    for lam in lams:
                        yield fact, ParamPoint(fld, alpha1, alphas, betas, lam)


def enumerate_degree_n(n: int, q: int, budget: int = DEFAULT_BUDGET) -> Iterator[Endo]:
    """Every automorphism of degree exactly n over F_q, each once."""
    for fact, point in enumerate_param_points(n, q, budget):
        yield recompose(theta_inverse(point, fact))


def enumerate_affine(q: int) -> Iterator[Endo]:
    for lam in _invertible_affines(Field(q)):
        yield lam.to_endo()


# -- brute force ------------------------------------------------------------------


def half_polys(n: int, q: int) -> list[Poly2]:
    """All polynomials of degree <= n over F_q, in coefficient-vector order."""
    fld = Field(q)
    order = monomial_order(n)
    out = []
    for vals in itertools.product(range(q), repeat=len(order)):
        out.append(Poly2._raw(fld, {m: v for m, v in zip(order, vals) if v}))
    return out


def _bruteforce_range(args):
    n, q, lo, hi = args
    polys = half_polys(n, q)
    counts: dict = {}
    for f in polys[lo:hi]:
        df = f.degree()
        for g in polys:
            phi = Endo(f, g)
            if is_automorphism(phi):
                d = max(df, g.degree())
                counts[d] = counts.get(d, 0) + 1
    return counts


def bruteforce_counts(n: int, q: int, config: CensusConfig = CensusConfig()) -> dict[int, int]:
    """Automorphisms among all pairs of degree <= n over F_q, keyed by exact degree."""
    size = q ** ((n + 1) * (n + 2))
    if size > config.bruteforce_budget:
        raise BudgetExceeded(f"{size} candidate pairs exceed budget {config.bruteforce_budget}")
    half = q ** ((n + 1) * (n + 2) // 2)
    chunks = max(1, config.workers) * 4
    bounds = [half * i // chunks for i in range(chunks + 1)]
    tasks = [(n, q, bounds[i], bounds[i + 1]) for i in range(chunks)]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            parts = list(pool.map(_bruteforce_range, tasks))
    else:
        parts = [_bruteforce_range(t) for t in tasks]
    total: dict = {}
    for part in parts:
        for d, c in part.items():
            total[d] = total.get(d, 0) + c
    return dict(sorted(total.items()))


def bruteforce_automorphisms(n: int, q: int, budget: int = DEFAULT_BUDGET) -> set[Endo]:
    """The set of all automorphisms of degree <= n over F_q, by exhaustive search."""
    size = q ** ((n + 1) * (n + 2))
    if size > budget:
        raise BudgetExceeded(f"{size} candidate pairs exceed budget {budget}")
    polys = half_polys(n, q)
    return {Endo(f, g) for f in polys for g in polys if is_automorphism(Endo(f, g))}


# -- coordinates ------------------------------------------------------------------------


def coordinate_census(n: int, q: int, budget: int = DEFAULT_BUDGET) -> int:
    """Distinct first components of degree n among automorphisms of degree n."""
    if n == 1:
        return len({e.f.key() for e in enumerate_affine(q)})
    seen = set()
    for phi in enumerate_degree_n(n, q, budget):
        if phi.f.degree() == n:
            seen.add(phi.f.key())
    return len(seen)


def complements(f: Poly2, max_degree: int) -> list[Poly2]:
    """All g of degree <= max_degree with (f, g) an automorphism, by search."""
    q = f.field.p
    return [g for g in half_polys(max_degree, q) if is_automorphism(Endo(f, g))]


def coordinate_census_search(n: int, q: int, budget: int = DEFAULT_BUDGET) -> int:
    """Count degree-n coordinates by searching a complement of degree < n for each f."""
    size = q ** ((n + 1) * (n + 2) // 2 + n * (n + 1) // 2)
    if size > budget:
        raise BudgetExceeded(f"{size} candidate pairs exceed budget {budget}")
    lower = half_polys(n - 1, q)
    count = 0
    for f in half_polys(n, q):
        if f.degree() == n and any(is_automorphism(Endo(f, g)) for g in lower):
            count += 1
    return count


# -- proof coordinates --------------------------------------------------------------------


@dataclass(frozen=True)
class ProofCoords:
    """Coefficients read off a degree-n pair (f, g).

    ``p[i]`` is the coefficient of x^i in f, ``q1`` of x^(n-1)*y in f, ``q2``
    of y in f; ``r1, r2, r3`` are the coefficients of x, y and 1 in g.
    """

    n: int
    p: tuple
    q1: Scalar
    q2: Scalar
    r1: Scalar
    r2: Scalar
    r3: Scalar


def proof_coords(phi: Endo, n: int) -> ProofCoords:
    if phi.degree() != n:
        raise DegreeMismatch(f"expected degree {n}, got {phi.degree()}")
    f, g = phi.f, phi.g
    return ProofCoords(
        n,
        tuple(f.coeff(i, 0) for i in range(n + 1)),
        f.coeff(n - 1, 1),
        f.coeff(0, 1),
        g.coeff(1, 0),
        g.coeff(0, 1),
        g.coeff(0, 0),
    )


def predicted_coords(point: ParamPoint, n: int) -> ProofCoords:
    """The coordinate values forced by a single-factor parameter point."""
    fld = point.field
    a = fld.zero if point.alpha1.is_iota else point.alpha1.a
    (h,) = point.betas
    lam = point.lam
    hs = {k + 2: c for k, c in enumerate(h)}
    p = [lam.c1, lam.b1] + [fld.mul(lam.a1, hs[i]) for i in range(2, n + 1)]
    return ProofCoords(
        n,
        tuple(p),
        fld.mul(fld.mul(fld(n), lam.a1), fld.mul(hs[n], a)),
        fld.add(lam.a1, fld.mul(lam.b1, a)),
        lam.b2,
        fld.add(lam.a2, fld.mul(lam.b2, a)),
        lam.c2,
    )


def in_open_set(point: ParamPoint) -> bool:
    """Whether h_n != 0, a1*b2 != a2*b1, a1 != 0 and b2 != 0."""
    lam = point.lam
    return all(h[-1] != 0 for h in point.betas) and lam.is_invertible() and lam.a1 != 0 and lam.b2 != 0


def recover_parameters(coords: ProofCoords, field: Field) -> ParamPoint:
    """Invert the coordinate functions on the open set.

    Requires ``n * p_n`` invertible and ``a1 != 0``; raises
    :class:`ConstraintViolation` otherwise (e.g. when the characteristic
    divides n).
    """
    fld = field
    n = coords.n
    npn = fld.mul(fld(n), coords.p[n])
    if npn == 0:
        raise ConstraintViolation("n * p_n vanishes; the recovery formulas degenerate")
    a = fld.div(coords.q1, npn)
    b1, c1 = coords.p[1], coords.p[0]
    a1 = fld.sub(coords.q2, fld.mul(b1, a))
    if a1 == 0:
        raise ConstraintViolation("a1 vanishes; the point lies outside the open set")
    h = tuple(fld.div(coords.p[i], a1) for i in range(2, n + 1))
    b2, c2 = coords.r1, coords.r3
    a2 = fld.sub(coords.r2, fld.mul(b2, a))
    lam = AffineMap(fld, a1, b1, c1, a2, b2, c2)
    return ParamPoint(fld, Alpha(fld, a), (), (h,), lam)


# -- reports ------------------------------------------------------------------------------


CSV_COLUMNS = ["n", "q", "count_formula", "count_bruteforce", "q_degree", "expected_dimension"]


@dataclass
class CensusRow:
    n: int
    q: int
    count_formula: int
    count_bruteforce: int | None
    q_degree: int
    expected_dimension: int
    extra: dict = dc_field(default_factory=dict)

    def as_csv_row(self) -> list:
        bf = "-" if self.count_bruteforce is None else self.count_bruteforce
        return [self.n, self.q, self.count_formula, bf, self.q_degree, self.expected_dimension]


def census_row(n: int, q: int, bruteforce: bool = False, coordinates: bool = False,
               config: CensusConfig = CensusConfig()) -> CensusRow:
    if coordinates:
        poly = count_coordinates(n)
        bf = coordinate_census_search(n, q, config.bruteforce_budget) if bruteforce else None
        return CensusRow(n, q, poly(q), bf, poly.degree(), dimension_coordinates(n))
    if n == 1:
        poly = AFFINE_GROUP_ORDER
        expected = 6
    else:
        poly = count_exact_degree(n)
        expected = dimension_degree(n)
    bf = bruteforce_counts(n, q, config).get(n, 0) if bruteforce else None
    return CensusRow(n, q, poly(q), bf, poly.degree(), expected)


def census_csv(rows: Sequence[CensusRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        w.writerow(row.as_csv_row())
    return buf.getvalue()
