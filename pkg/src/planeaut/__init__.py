"""Exact plane polynomial automorphisms: normal forms, censuses, and free-algebra companions."""

from .autom import AffineMap, Alpha, Beta, Endo, compose
from .fields import QQ, F, Field
from .jvdk import NormalForm, decompose, invert_automorphism, is_automorphism, recompose
from .poly2 import Poly2

__all__ = [
    "AffineMap", "Alpha", "Beta", "Endo", "F", "Field", "NormalForm", "Poly2", "QQ", "compose",
    "decompose", "invert_automorphism", "is_automorphism", "recompose",
]
