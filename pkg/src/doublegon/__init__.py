"""Gcd expansion, Veech-group stabilizers and separatrix tests on double (2n+1)-gons."""

from .field import ExtContext, ExtElement, FieldContext, FieldElement, FieldError, make_ext, make_field

__all__ = [
    "ExtContext",
    "ExtElement",
    "FieldContext",
    "FieldElement",
    "FieldError",
    "make_ext",
    "make_field",
]
