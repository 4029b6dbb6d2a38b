"""Exact q-series arithmetic: Laurent polynomials, Habiro elements, series."""

from .laurent import LaurentPoly, qpochhammer
from .series import FormalSeries, borel, log1p, log1p_series
from .habiro import (
    HabiroElement,
    StepFactor,
    eval_root,
    from_terms,
    habiro_eval,
    habiro_np_coeffs,
    habiro_taylor1,
)

__all__ = [
    "LaurentPoly", "qpochhammer", "FormalSeries", "borel", "log1p", "log1p_series",
    "HabiroElement", "StepFactor", "eval_root", "from_terms", "habiro_eval",
    "habiro_np_coeffs", "habiro_taylor1",
]
