"""Exact multiple-zeta-value algebra and Drinfeld associator coefficients."""

from .families import AssociatorFamilies
from .reduction import ReductionTable, build_reduction_table, zeta_word
from .scalars import MzvExpr, Scalar, ZetaMonomial, render_scalar
from .series import NCSeries, series_inverse, series_mul
from .words import Composition, Word, parse_composition, parse_word

__version__ = "0.1.0"

__all__ = [
    "AssociatorFamilies",
    "Composition",
    "MzvExpr",
    "NCSeries",
    "ReductionTable",
    "Scalar",
    "Word",
    "ZetaMonomial",
    "build_reduction_table",
    "parse_composition",
    "parse_word",
    "render_scalar",
    "series_inverse",
    "series_mul",
    "zeta_word",
    "__version__",
]
