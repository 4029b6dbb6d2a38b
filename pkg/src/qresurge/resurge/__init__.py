"""Numerical singularity analysis of coefficient sequences."""

from .sequence import CoeffSequence, FitConfig
from .accel import IllConditionedError, lstsq, richardson
from .radius import RadiusResult, radius_estimate
from .scan import DivergentScanError, Peak, angular_scan, find_peaks, scan_values
from .fit import FitRecord, asym_fit, residual_profile
from .gevrey import GevreyReport, gevrey_probe
from .expansion import (
    ExpansionReport,
    PreconditionError,
    check_precondition,
    coeff_expansion_check,
    exact_implies_pert_probe,
)
from .pade import PadeApproximant, SingularPadeError, pade_approximant
