"""Exact numeric substrate: Laurent polynomials and semifield values."""

from .rings import (
    ContextMismatch,
    InexactDivision,
    LaurentPoly,
    PolyContext,
    laurent_divexact,
)
from .semifield import (
    SFExpr,
    SubtractionFreeValue,
    TropicalValue,
    sf_eval,
    trop_add,
)

__all__ = [
    "ContextMismatch",
    "InexactDivision",
    "LaurentPoly",
    "PolyContext",
    "laurent_divexact",
    "SFExpr",
    "SubtractionFreeValue",
    "TropicalValue",
    "sf_eval",
    "trop_add",
]
