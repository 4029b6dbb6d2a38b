from fractions import Fraction

import mpmath
import pytest

from qresurge.precision import PrecisionContext
from qresurge.specialfn import (CutError, PrecisionBudgetError, bernoulli_number, bernoulli_poly,
                                inversion_residual, li_frac, li_int, rogers, zeta_real, zeta_with_bound)

CTX = PrecisionContext(256)
MP = CTX.mp
TOL = mpmath.mpf(10) ** -70


def ref(f):
    with mpmath.workdps(90):
        return f()


def test_bernoulli_numbers_against_mpmath():
    for n in range(0, 30):
        b = bernoulli_number(n)
        expected = -0.5 if n == 1 else float(mpmath.bernoulli(n))
        assert abs(float(b) - expected) < 1e-12 * max(1, abs(expected))


def test_bernoulli_polynomial_values():
    for k in range(1, 8):
        coeffs = bernoulli_poly(k)
        x = Fraction(3, 7)
        val = sum(c * x ** i for i, c in enumerate(coeffs))
        with mpmath.workdps(60):
            assert abs(mpmath.mpf(val.numerator) / val.denominator
                       - mpmath.bernpoly(k, mpmath.mpf(3) / 7)) < 1e-50


@pytest.mark.parametrize("s", ["2", "3.5", "1.25", "7/3"])
def test_zeta_against_mpmath(s):
    v = zeta_real(Fraction(s), CTX)
    x = Fraction(s)
    assert abs(v - ref(lambda: mpmath.zeta(mpmath.mpf(x.numerator) / x.denominator))) < TOL


def test_zeta_rejects_left_half():
    with pytest.raises(ValueError):
        zeta_real(1, CTX)


def test_zeta_bound_is_honest():
    value, bound = zeta_with_bound(mpmath.mpf("1.5"), CTX)
    assert abs(value - ref(lambda: mpmath.zeta(mpmath.mpf("1.5")))) <= bound + TOL


@pytest.mark.parametrize("k", [1, 2, 3, 5])
@pytest.mark.parametrize("z", ["0.3+0.1j", "-0.8+0.5j", "0.9j", "1.7-0.6j", "-4+2j", "0.99+0.2j"])
def test_li_int_against_mpmath(k, z):
    zz = mpmath.mpc(complex(z))
    got = li_int(k, zz, CTX)
    want = ref(lambda: mpmath.polylog(k, zz))
    assert abs(got - want) < TOL * max(1, abs(want))


def test_real_axis_beyond_one_needs_a_side():
    with pytest.raises(CutError):
        li_int(2, mpmath.mpf(3), CTX)
    above = li_int(2, mpmath.mpf(3), CTX, side=1)
    below = li_int(2, mpmath.mpf(3), CTX, side=-1)
    assert abs(above - MP.conj(below)) < TOL
    # jump across the cut is 2 pi i log z / (k-1)!
    assert abs((above - below) - 2j * MP.pi * MP.log(3)) < 1e-60


def test_inversion_residual_small_off_cut():
    for k in (2, 3, 4):
        assert inversion_residual(k, mpmath.mpc(1.3, 0.8), CTX) < mpmath.mpf(10) ** -60


def test_li_frac_against_mpmath():
    z = mpmath.mpc("0.4", "0.3")
    got = li_frac("3/2", z, CTX)
    want = ref(lambda: mpmath.polylog(mpmath.mpf(1.5), z))
    assert abs(got - want) < TOL


def test_li_frac_budget_and_domain():
    with pytest.raises(ValueError):
        li_frac("1/2", 1.0, CTX)
    with pytest.raises(PrecisionBudgetError):
        li_frac("1/2", mpmath.mpf("0.999999"), CTX, max_terms=1000)


def test_rogers_limits_and_reflection():
    assert abs(rogers(0, CTX, limit=True).value + MP.pi ** 2 / 6) < TOL
    assert abs(rogers(1, CTX, limit=True).value) < TOL
    with pytest.raises(ValueError):
        rogers(0, CTX)
    x = MP.mpf("0.3")
    total = rogers(x, CTX).value + rogers(1 - x, CTX).value
    assert abs(total + MP.pi ** 2 / 6) < TOL


def test_rogers_branch_shift():
    z = MP.mpc("0.4", "0.7")
    base = rogers(z, CTX).value
    moved = rogers(z, CTX, branch=(1, 0))
    assert moved.branch_data == (1, 0)
    assert abs(moved.value - base - 1j * MP.pi * MP.log(1 - z)) < TOL
