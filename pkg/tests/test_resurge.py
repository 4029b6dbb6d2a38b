from fractions import Fraction
from math import factorial

import mpmath
import numpy as np
import pytest

from qresurge.knotgen import TREFOIL_SPEC, PolynomialSumProduct, frandom_element, sigma_pi_series
from qresurge.precision import PrecisionContext
from qresurge.qcore import FormalSeries, habiro_np_coeffs
from qresurge.resurge import (CoeffSequence, DivergentScanError, FitConfig, PreconditionError,
                              SingularPadeError, angular_scan, asym_fit, check_precondition,
                              coeff_expansion_check, exact_implies_pert_probe, find_peaks,
                              gevrey_probe, pade_approximant, radius_estimate, residual_profile,
                              richardson, scan_values)

CTX = PrecisionContext(256)
MP = CTX.mp
EXP_MINUS_VOL = 0.72392611187952434703


def circ(a, b):
    return abs((a - b + 0.5) % 1.0 - 0.5)


def synthetic(lam, alpha, n_terms=500, corr=(1, 1, 1)):
    lam, alpha = (MP.mpf(Fraction(x).numerator) / Fraction(x).denominator for x in (lam, alpha))
    out = [MP.mpf(0)]
    for n in range(1, n_terms):
        poly = MP.fsum(c * MP.mpf(n) ** -k for k, c in enumerate(corr))
        out.append(lam ** -n * MP.mpf(n) ** alpha * poly)
    return CoeffSequence(out)


def test_richardson_cancels_inverse_powers():
    seq = {m: MP.mpf(3) + MP.mpf(2) / m - MP.mpf(5) / m ** 2 for m in range(10, 40)}
    assert abs(richardson(seq, 20, 2, MP) - 3) < 1e-60


def test_radius_of_geometric_series():
    s = CoeffSequence([Fraction(1, 2 ** n) for n in range(200)])
    assert abs(radius_estimate(s, ctx=CTX).radius - 2) < 1e-12


def test_radius_of_factorial_is_zero_with_gevrey_flag():
    res = radius_estimate(CoeffSequence([factorial(n) for n in range(120)]), ctx=CTX)
    assert res.radius == 0.0
    assert "zero-radius" in res.flags and res.gevrey_order == 1


def test_radius_errors():
    with pytest.raises(ValueError, match="50"):
        radius_estimate(CoeffSequence([1] * 49))
    with pytest.raises(ValueError, match="vanish"):
        radius_estimate(CoeffSequence([1] + [0] * 99))


def test_fit_config_validation():
    with pytest.raises(ValueError, match="overlaps"):
        FitConfig(window=(10, 50), validation=(40, 60)).resolve(100)
    with pytest.raises(ValueError, match="order"):
        FitConfig(d=20, window=(10, 20)).resolve(100)


def test_asym_fit_recovers_growth_and_exponent():
    # 3^n n^(1/2) (1 + 1/n)
    s = synthetic(Fraction(1, 3), Fraction(1, 2), corr=(1, 1))
    fit = asym_fit(s, 0.0, FitConfig(), CTX)
    assert abs(fit.abs_lambda - 1 / 3) < 1e-8
    assert abs(fit.alpha - 0.5) < 1e-8
    assert abs(fit.c0 - 1) < 1e-6
    n = 480
    assert abs(fit.model(n, MP) / s[n] - 1) < 1e-8


def test_asym_fit_figure_eight(fig8_np_500, ctx256):
    fit = asym_fit(fig8_np_500, 0.0, FitConfig(), ctx256)
    assert abs(fit.abs_lambda - EXP_MINUS_VOL) < 1e-10


def test_residual_profile_decreases_on_clean_data():
    s = synthetic(Fraction(1, 2), Fraction(3, 2))
    res, monotone = residual_profile(s, 0.0, [0, 1, 2], FitConfig(), CTX)
    assert monotone and res[2] < res[0]


def test_residual_profile_is_a_diagnostic_only():
    # the frandom element has no clean growth; the profile must still return
    s = CoeffSequence(habiro_np_coeffs(frandom_element(), 120, PrecisionContext(128)))
    res, monotone = residual_profile(s, 0.0, [1, 2, 3], FitConfig(), PrecisionContext(128))
    assert len(res) == 3 and isinstance(monotone, bool)


def test_scan_geometric_series_single_peak():
    # sum e^(2 pi i n/5) z^n has its pole at z = e^(-2 pi i/5), that is t = 4/5
    s = CoeffSequence([MP.expjpi(2 * MP.mpf(n) / 5) for n in range(400)])
    peaks = angular_scan(s, 0.98, 4096, CTX)
    assert len(peaks) == 1
    assert circ(peaks[0].t0, 0.8) < 1e-4


def test_scan_two_poles():
    # 1/(1 - z) + 1/(1 - z e^(-2 pi i/24)) / 10, poles at t = 0 and t = 1/24.
    # At r = 0.98 the weaker maximum is pulled by about 5 cells, hence 2e-3.
    w = MP.expjpi(-MP.mpf(2) / 24)
    s = CoeffSequence([1 + w ** n / 10 for n in range(1000)])
    found = [p.t0 for p in angular_scan(s, 0.98, 4096, CTX)]
    assert len(found) == 2
    for target in (0.0, 1 / 24):
        assert min(circ(t, target) for t in found) < 2e-3


def test_scan_is_conjugation_covariant():
    s = CoeffSequence([MP.expjpi(2 * MP.mpf(n) / 7) * (1 + MP.mpf(1) / (n + 1)) for n in range(300)])
    a = [p.t0 for p in angular_scan(s, 0.97, 4096, CTX)]
    b = [p.t0 for p in angular_scan(s.conjugate(), 0.97, 4096, CTX)]
    assert len(a) == len(b) == 1
    assert circ(a[0], 1 - b[0]) < 1e-9


def test_scan_grid_refinement_is_stable():
    s = CoeffSequence([MP.expjpi(2 * MP.mpf(n) * 3 / 11) for n in range(400)])
    a = angular_scan(s, 0.98, 4096, CTX)
    b = angular_scan(s, 0.98, 8192, CTX)
    assert len(a) == len(b) == 1
    assert circ(a[0].t0, b[0].t0) < 1 / 4096


def test_scan_divergent_raises():
    with pytest.raises(DivergentScanError, match="smaller r"):
        scan_values(CoeffSequence([2 ** n for n in range(100)]), 0.9, 256)


def test_scan_is_deterministic():
    s = CoeffSequence([Fraction(n + 1, 2 ** n) for n in range(200)])
    assert np.array_equal(scan_values(s, 1.5, 1024, CTX), scan_values(s, 1.5, 1024, CTX))


def test_find_peaks_flat_input_has_no_peaks():
    assert find_peaks(np.ones(512)) == []


def test_trefoil_scan_with_500_coefficients(trefoil_np_500):
    # The 1/24 singularity is located to within a grid cell.  The weaker one
    # at t = 0 sits on the flank of the stronger and, at r = 0.98, its
    # maximum is pulled about 15 cells towards 1/24 even in the weighted
    # scan; a tolerance of 20 cells documents that.
    peaks = angular_scan(trefoil_np_500, 0.98, 4096, PrecisionContext(64), deriv=2)
    ts = [p.t0 for p in peaks]
    assert any(circ(t, 1 / 24) < 1 / 4096 for t in ts)
    assert any(circ(t, 0.0) < 20 / 4096 for t in ts)


def test_gevrey_probe_examples():
    rep = gevrey_probe(CoeffSequence([factorial(n) for n in range(120)]))
    assert (rep.r_est, rep.s_est) == (1, 1)
    rep = gevrey_probe(CoeffSequence([2 ** n for n in range(120)]))
    assert (rep.r_est, rep.s_est) == (0, 0) and abs(rep.C_est - 2) < 0.05
    rep = gevrey_probe(CoeffSequence([Fraction(factorial(n), 3 ** n) for n in range(120)]))
    assert (rep.r_est, rep.s_est) == (1, 1) and abs(rep.C_est - 3) < 0.1
    assert gevrey_probe(CoeffSequence([1, 0, 0, 0, 0, 0])).flags == ["too-few-terms"]
    with pytest.raises(ValueError):
        gevrey_probe(CoeffSequence([1.5, 2.5]))


def test_expansion_check_passes_for_linear_model():
    s = PolynomialSumProduct((0, 1))
    rep = exact_implies_pert_probe(s, K=4, window=(100, 200), ctx=CTX, step=5)
    assert rep.passed
    # residual tends to (K+1)! = 120
    assert abs(rep.residuals[-1][1] - 120) < 10
    assert check_precondition(s) == []


def test_expansion_check_small_K_is_reported():
    s = PolynomialSumProduct((0, 1))
    rep = coeff_expansion_check(s, sigma_pi_series(s, 3), 0, (50, 60))
    assert not rep.passed and "K too small" in rep.notes[0]


def test_expansion_precondition_violation_for_trefoil():
    assert check_precondition(TREFOIL_SPEC, samples=200)
    with pytest.raises(PreconditionError, match=r"\|F\(x\)\| > 1"):
        exact_implies_pert_probe(TREFOIL_SPEC)


def test_pade_of_exponential():
    s = FormalSeries([Fraction(1, factorial(k)) for k in range(6)])
    pa = pade_approximant(s, 1, 1, CTX)
    assert pa.p == [1, Fraction(1, 2)] and pa.q == [1, Fraction(-1, 2)]
    with mpmath.workdps(40):
        assert abs(pa(MP.mpf("0.1")) - (1 + 0.05) / (1 - 0.05)) < 1e-15


def test_pade_pole_of_geometric_series():
    pa = pade_approximant(FormalSeries([1] * 6), 1, 1, CTX)
    poles = pa.poles()
    assert abs(poles[0] - 1) < 1e-30


def test_pade_singular_system_suggests_smaller_entry():
    with pytest.raises(SingularPadeError, match=r"\[0/0\]"):
        pade_approximant(FormalSeries([1, 0, 1, 0]), 1, 1, CTX)
    with pytest.raises(ValueError):
        pade_approximant(FormalSeries([1, 2]), 2, 2, CTX)
