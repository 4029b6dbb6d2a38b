"""Generators for knot, 3-manifold and sum-product coefficient sequences."""

from .knots import (
    FIGURE_EIGHT_SPEC,
    TREFOIL_SPEC,
    PolynomialSumProduct,
    SumProductSpec,
    TwistKnotData,
    frandom_element,
    habiro_from_spec,
    kashaev_31,
    kashaev_41,
    load_period_points,
    load_twist_data,
    lp_series,
    sigma_pi_numeric,
    sigma_pi_series,
    sum_product_seq,
    twist_knot_element,
)
from .wrt import lnp_s3_polylog, verlinde_residue, verlinde_sum, wrt_s3
from .multisum import BalancedTerm, apery_term, balanced_check, binomial_term, multisum
from .candidates import CandidateSet, singular_candidates, vol_41
from .trefoil import chi12, trefoil_decomposition_check
