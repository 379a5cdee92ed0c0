"""Catalan dimensions of the free nonassociative algebra and their series.

The homogeneous one-variable component of degree n has dimension the
Catalan number c_n, and automorphisms of degree n of the free algebra on
two generators form a set of dimension

    d_n = c_1 + ... + c_n + 4 + 2*eps

(eps = 1 unitary, eps = 0 nonunitary).  Series are truncated and exact.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BudgetExceeded, InternalInvariant

TREE_BUDGET = 16


def catalan_number(n: int) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    return math.comb(2 * n - 2, n - 1) // n


LEAF = ()


def _graft_all(tree):
    """Every tree obtained from ``tree`` by replacing one leaf with a cherry."""
    if tree == LEAF:
        yield (LEAF, LEAF)
        return
    left, right = tree
    for t in _graft_all(left):
        yield (t, right)
    for t in _graft_all(right):
        yield (left, t)


def trees_with_leaves(n: int) -> set:
    """All full binary tree shapes with n leaves, built by grafting."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > TREE_BUDGET:
        raise BudgetExceeded(f"tree enumeration is limited to {TREE_BUDGET} leaves")
    level = {LEAF}
    for _ in range(n - 1):
        level = {t for tree in level for t in _graft_all(tree)}
    return level


def count_tree_monomials(n: int) -> int:
    return len(trees_with_leaves(n))


def d_value(n: int, eps: int) -> int:
    if n < 1:
        raise ValueError("n must be at least 1")
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    return sum(catalan_number(i) for i in range(1, n + 1)) + 4 + 2 * eps


def d_value_from(dims: Sequence[int], n: int, eps: int) -> int:
    """d_n for an arbitrary dimension sequence ``dims[i-1] = c_i``."""
    return sum(dims[:n]) + 4 + 2 * eps


@dataclass(frozen=True)
class IntSeries:
    """Power series truncated after t^T, with exact rational coefficients."""

    T: int
    coeffs: tuple

    def __post_init__(self):
        c = tuple(Fraction(v) for v in self.coeffs)[: self.T + 1]
        object.__setattr__(self, "coeffs", c + (Fraction(0),) * (self.T + 1 - len(c)))

    @classmethod
    def t(cls, T: int) -> "IntSeries":
        return cls(T, (0, 1))

    @classmethod
    def const(cls, T: int, c) -> "IntSeries":
        return cls(T, (c,))

    def __getitem__(self, k):
        return self.coeffs[k]

    def _lift(self, other):
        if isinstance(other, IntSeries):
            if other.T != self.T:
                raise ValueError("truncation orders differ")
            return other
        return IntSeries.const(self.T, other)

    def __add__(self, other):
        other = self._lift(other)
        return IntSeries(self.T, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return IntSeries(self.T, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return IntSeries(self.T, [-a for a in self.coeffs])

    def __mul__(self, other):
        other = self._lift(other)
        T = self.T
        out = [Fraction(0)] * (T + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(T + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return IntSeries(T, out)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return IntSeries(self.T, [a / c for a in self.coeffs])

    def partial_sums(self) -> "IntSeries":
        """Division by (1 - t)."""
        out, acc = [], Fraction(0)
        for a in self.coeffs:
            acc += a
            out.append(acc)
        return IntSeries(self.T, out)

    def integers(self) -> list[int]:
        if any(a.denominator != 1 for a in self.coeffs):
            raise InternalInvariant("series has non-integer coefficients")
        return [int(a) for a in self.coeffs]


def sqrt_one_minus_4t(T: int) -> IntSeries:
    """sqrt(1 - 4t) through t^T from the generalized binomial series."""
    coeffs = []
    binom = Fraction(1)  # binom(1/2, k)
    for k in range(T + 1):
        coeffs.append(binom * (-4) ** k)
        binom = binom * (Fraction(1, 2) - k) / (k + 1)
    return IntSeries(T, coeffs)


def catalan_series(T: int) -> IntSeries:
    """c(t) = (1 - sqrt(1 - 4t)) / 2 = sum c_n t^n."""
    if T < 1:
        raise ValueError("T must be at least 1")
    return (1 - sqrt_one_minus_4t(T)) / 2


def d_series(T: int, eps: int) -> IntSeries:
    """(1 + 4(2 + eps)t - sqrt(1 - 4t)) / (2(1 - t)); the integrality guard raises on failure."""
    if T < 1:
        raise ValueError("T must be at least 1")
    if eps not in (0, 1):
        raise ValueError("eps must be 0 or 1")
    num = 1 + IntSeries.t(T) * (4 * (2 + eps)) - sqrt_one_minus_4t(T)
    out = (num / 2).partial_sums()
    out.integers()
    return out


def catalan_csv(T: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "c_n", "partial_sum", "d_n_eps0", "d_n_eps1"])
    partial = 0
    for n in range(1, T + 1):
        c = catalan_number(n)
        partial += c
        w.writerow([n, c, partial, partial + 4, partial + 6])
    return buf.getvalue()
