import cmath
from fractions import Fraction
from math import factorial

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qresurge.knotgen import kashaev_31, kashaev_41
from qresurge.precision import PrecisionContext
from qresurge.qcore import (FormalSeries, LaurentPoly, borel, eval_root, habiro_eval, habiro_np_coeffs,
                            habiro_taylor1, log1p, log1p_series, qpochhammer)
from qresurge.qcore.habiro import HabiroElement, StepFactor, from_terms

laurent = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)
X = Fraction(2, 7)


@given(laurent, laurent, laurent)
@settings(max_examples=60, deadline=None)
def test_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == LaurentPoly()


@given(laurent, laurent)
@settings(max_examples=60, deadline=None)
def test_product_matches_pointwise_evaluation(a, b):
    assert (a * b)(X) == a(X) * b(X)


@given(laurent, st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_divmod_reconstructs(a, n):
    d = qpochhammer(n)
    quo, rem = a.divmod(d)
    assert quo * d + rem == a


def test_parse_format_round_trip():
    p = LaurentPoly.parse("-2:3 0:1 5:-4")
    assert LaurentPoly.parse(p.format()) == p
    assert p.min_exp == -2 and p.max_exp == 5


def test_parse_rejects_garbage():
    with pytest.raises(ValueError, match="exponent:coefficient"):
        LaurentPoly.parse("1:2 x")


def test_qpochhammer_against_direct_product():
    q = Fraction(1, 3)
    direct = 1
    for k in range(1, 7):
        direct *= 1 - q ** k
    assert qpochhammer(6)(q) == direct


def test_exact_div_refuses_remainder():
    with pytest.raises(ValueError):
        (qpochhammer(3) + 1).exact_div(qpochhammer(2))


def test_residue_evaluation_matches_cmath():
    p = LaurentPoly.parse("-3:2 1:-1 7:5 12:1")
    ctx = PrecisionContext(128)
    for N in (1, 2, 5, 9):
        z = cmath.exp(2j * cmath.pi / N)
        direct = sum(c * z ** e for e, c in p.items())
        assert abs(complex(eval_root(p, N, ctx)) - direct) < 1e-12


def _kashaev_oracle(N, fig8):
    z = cmath.exp(2j * cmath.pi / N)
    total, prod = 0, 1
    for n in range(N):
        if n:
            prod *= 1 - z ** n
        total += abs(prod) ** 2 if fig8 else prod
    return total


@pytest.mark.parametrize("N", [1, 2, 3, 7, 20])
def test_kashaev_values_against_direct_sums(N):
    ctx = PrecisionContext(128)
    assert abs(complex(habiro_eval(kashaev_31(), N, ctx)) - _kashaev_oracle(N, False)) < 1e-9
    assert abs(complex(habiro_eval(kashaev_41(), N, ctx)) - _kashaev_oracle(N, True)) < 1e-9


def test_figure_eight_first_values():
    vals = habiro_np_coeffs(kashaev_41(), 3, PrecisionContext(128))
    assert [round(complex(v).real, 12) for v in vals] == [1, 1, 5, 13]


def test_adaptive_precision_agrees_across_bits():
    lo = habiro_eval(kashaev_31(), 90, PrecisionContext(128))
    hi = habiro_eval(kashaev_31(), 90, PrecisionContext(256))
    assert abs(lo - hi) < mpmath.mpf(2) ** -120 * abs(hi)


def test_generator_and_product_form_agree():
    f = kashaev_31()
    g = from_terms("gen", lambda n: LaurentPoly.const(1))
    ctx = PrecisionContext(128)
    for N in (3, 8):
        assert abs(habiro_eval(f, N, ctx) - habiro_eval(g, N, ctx)) < 1e-30


def test_levels_overflow_names_the_level():
    f = HabiroElement("short", step=StepFactor(), levels=3)
    with pytest.raises(IndexError, match="n=3"):
        f.summand(3)


def test_step_factor_must_vanish_at_one():
    with pytest.raises(ValueError):
        HabiroElement("bad", step=StepFactor(1, 0, ()))


def test_trefoil_taylor_coefficients():
    assert list(habiro_taylor1(kashaev_31(), 4).coeffs) == [1, -1, Fraction(3, 2), Fraction(-19, 6), Fraction(69, 8)]


def test_taylor_expansion_against_numeric_derivatives():
    K = 5
    exact = habiro_taylor1(kashaev_41(), K).coeffs
    mpmath.mp.dps = 40

    def f(h):
        total, prod = mpmath.mpf(0), mpmath.mpf(1)
        for n in range(K + 1):
            if n:
                prod *= (1 - mpmath.exp(n * h)) * (1 - mpmath.exp(-n * h))
            total += prod
        return total

    numeric = mpmath.taylor(f, 0, K)
    for a, b in zip(exact, numeric):
        assert abs(mpmath.mpf(a.numerator) / a.denominator - b) < mpmath.mpf(10) ** -25


def test_borel_of_factorial_series():
    s = FormalSeries([factorial(n) for n in range(8)])
    assert list(borel(s).coeffs) == [n + 1 for n in range(7)]


def test_log1p_against_mpmath():
    out = log1p(FormalSeries([0, 1, Fraction(1, 2), 0, 0, 0]))
    mpmath.mp.dps = 30
    ref = mpmath.taylor(lambda z: mpmath.log(1 + z + z ** 2 / 2), 0, 5)
    assert all(abs(float(a) - float(b)) < 1e-15 for a, b in zip(out.coeffs, ref))
    assert list(log1p_series(3).coeffs) == [0, 1, Fraction(-1, 2)]


def test_compose_rejects_constant_term():
    with pytest.raises(ValueError, match="invalid substitution"):
        log1p_series(4).compose(FormalSeries([1, 1, 0, 0]))
