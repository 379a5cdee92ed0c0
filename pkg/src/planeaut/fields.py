"""Ground fields: prime fields F_p and the rationals.

Scalars are plain Python values so that the hot loops of the polynomial
code stay cheap: prime-field elements are ``int`` residues in ``[0, p)``,
rationals are ``fractions.Fraction`` (always reduced, positive denominator).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import FieldMismatch, ParseError, ZeroInversion

Scalar = Union[int, Fraction]

_MAX_P = 2**31


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """A prime field (``p`` set) or the rationals (``p is None``)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not isinstance(self.p, int) or not 2 <= self.p < _MAX_P:
                raise ValueError(f"modulus out of range: {self.p!r}")
            if not is_prime(self.p):
                raise ValueError(f"modulus {self.p} is not prime")

    @property
    def kind(self) -> str:
        return "rationals" if self.p is None else "prime-field"

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    def __repr__(self):
        return f"Field({self.name})"

    @classmethod
    def parse(cls, name: str) -> "Field":
        """Parse the field flag syntax ``Q`` or ``F<p>``."""
        name = name.strip()
        if name in ("Q", "QQ"):
            return QQ
        m = re.fullmatch(r"F_?(\d+)", name)
        if not m:
            raise ParseError(f"unknown field {name!r}; use Q or F<p>")
        try:
            return cls(int(m.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    # -- scalar arithmetic ------------------------------------------------

    def __call__(self, value) -> Scalar:
        """Coerce an int, Fraction or decimal string into a canonical scalar."""
        if isinstance(value, str):
            return self.parse_scalar(value)
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        return value % self.p

    def reduce(self, value: Scalar) -> Scalar:
        return value if self.p is None else value % self.p

    zero = property(lambda self: self(0))
    one = property(lambda self: self(1))

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self.reduce(a + b)

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.reduce(a - b)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self.reduce(a * b)

    def neg(self, a: Scalar) -> Scalar:
        return self.reduce(-a)

    def inv(self, a: Scalar) -> Scalar:
        if a == 0 or (self.p is not None and a % self.p == 0):
            raise ZeroInversion("zero has no inverse")
        if self.p is None:
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def elements(self) -> Iterator[int]:
        if self.p is None:
            raise ValueError("the rationals are infinite")
        return iter(range(self.p))

    def check_same(self, other: "Field") -> None:
        if self != other:
            raise FieldMismatch(f"{self.name} vs {other.name}")

    # -- text --------------------------------------------------------------

    def parse_scalar(self, text: str) -> Scalar:
        m = re.fullmatch(r"\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*", text)
        if not m:
            raise ParseError(f"bad scalar {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        if self.p is None:
            return Fraction(num, den)
        try:
            return self.div(num % self.p, den % self.p)
        except ZeroInversion:
            raise ParseError(f"denominator of {text!r} vanishes in {self.name}") from None

    def format_scalar(self, a: Scalar) -> str:
        if self.p is None:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(a % self.p)


QQ = Field(None)


def F(p: int) -> Field:
    return Field(p)


def scalar_invert(a: Scalar, field: Field) -> Scalar:
    return field.inv(a)
