"""Oeljeklaus-Toma manifold data from number fields, with numerical verification."""

from .errors import OTLabError
from .number_field import AlgebraicNumber, NumberField, analyze_polynomial, embed, norm, trace

__version__ = "0.1.0"

__all__ = [
    "AlgebraicNumber",
    "NumberField",
    "OTLabError",
    "analyze_polynomial",
    "embed",
    "norm",
    "trace",
]
