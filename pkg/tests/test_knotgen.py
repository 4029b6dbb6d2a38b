import cmath
import json
import math
from fractions import Fraction
from math import comb, factorial

import mpmath
import pytest

from qresurge.knotgen import (FIGURE_EIGHT_SPEC, TREFOIL_SPEC, BalancedTerm, PolynomialSumProduct,
                              SumProductSpec, apery_term, balanced_check, binomial_term, chi12,
                              habiro_from_spec, kashaev_31, load_period_points, load_twist_data,
                              lp_series, multisum, sigma_pi_numeric, sigma_pi_series,
                              singular_candidates, sum_product_seq, trefoil_decomposition_check,
                              twist_knot_element, verlinde_residue, verlinde_sum, wrt_s3)
from qresurge.knotgen.multisum import UnboundedSumError
from qresurge.knotgen.wrt import (lnp_s3_polylog, lnp_s3_polylog_zeta_form, s3_series_direct,
                                 verlinde_poly_g2)
from qresurge.precision import PrecisionContext
from qresurge.qcore import habiro_eval, habiro_taylor1

CTX = PrecisionContext(256)


def test_wrt_s3_matches_closed_form():
    for n in range(0, 30):
        want = math.sqrt(2 / (n + 2)) * math.sin(math.pi / (n + 2))
        assert abs(float(wrt_s3(n, CTX)) - want) < 1e-15
    with pytest.raises(ValueError):
        wrt_s3(-1)


def test_s3_polylog_form_and_domain():
    z = CTX.mp.mpf("0.4")
    value, tail = lnp_s3_polylog(z, 30, CTX)
    assert abs(value - s3_series_direct(z, 300, CTX)) < 1e-40
    assert tail < 1e-40
    for bad in (0, 1.2):
        with pytest.raises(ValueError):
            lnp_s3_polylog(bad, 10, CTX)


def test_s3_zeta_variant_does_not_match():
    z = CTX.mp.mpf("0.4")
    assert abs(lnp_s3_polylog_zeta_form(z, 30, CTX) - s3_series_direct(z, 300, CTX)) > 1


@pytest.mark.parametrize("g", [0, 1, 2, 3])
def test_verlinde_against_float_sum(g):
    for n in range(0, 12):
        N = n + 2
        direct = sum((N / (2 * math.sin(math.pi * j / N) ** 2)) ** (g - 1) for j in range(1, N))
        assert abs(float(verlinde_sum(g, n)) - direct) < 1e-9 * max(1.0, direct)


def test_verlinde_genus_two_cubic_and_residue():
    for n in range(0, 15):
        assert verlinde_sum(2, n) == verlinde_poly_g2(n) == verlinde_residue(2, n)
    assert [verlinde_sum(2, n) for n in range(3)] == [1, 4, 10]
    assert verlinde_residue(5, 7) == verlinde_sum(5, 7)
    with pytest.raises(ValueError):
        verlinde_residue(1, 3)


def test_multisum_binomial_and_apery_against_comb():
    for n in range(0, 20):
        assert multisum(binomial_term(), n) == 2 ** n
    for n in range(0, 8):
        want = sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))
        assert multisum(apery_term(), n) == want
    assert balanced_check(binomial_term()) and balanced_check(apery_term())


def test_multisum_two_variables_against_comb():
    # multinomial n! / (k1! k2! (n-k1-k2)!) sums to 3^n
    t = BalancedTerm(1, [1, 1], [((1, 0, 0), 1), ((0, 1, 0), -1), ((0, 0, 1), -1), ((1, -1, -1), -1)])
    for n in range(0, 10):
        assert multisum(t, n) == 3 ** n


def test_multisum_unbounded_direction_is_named():
    t = BalancedTerm(1, [Fraction(1, 2)], [((0, 1), -1)])
    with pytest.raises(UnboundedSumError, match="k_1"):
        multisum(t, 3)


def test_balanced_term_load(tmp_path):
    good = tmp_path / "t.json"
    good.write_text(json.dumps({"C0": "1", "C": ["1"], "forms": [
        {"A": [1, 0], "sign": 1}, {"A": [0, 1], "sign": -1}, {"A": [1, -1], "sign": -1}]}))
    assert multisum(BalancedTerm.load(good), 6) == 64
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"C": []}))
    with pytest.raises(ValueError, match="malformed"):
        BalancedTerm.load(bad)
    with pytest.raises(ValueError):
        BalancedTerm(1, [1], [((1,), 1)])


def test_sum_product_spec_round_trip_and_errors():
    for text in ("1,0,1^1", "-1,-1,1^2", "1,2,1^1,3^2"):
        assert SumProductSpec.parse(text).format() == text
    assert SumProductSpec.parse("-1,-1,1^2") == FIGURE_EIGHT_SPEC
    for bad in ("1", "2,0,1^1", "1,0,x^1", "1,0,0^1"):
        with pytest.raises(ValueError):
            SumProductSpec.parse(bad)
    with pytest.raises(ValueError, match="c_r"):
        habiro_from_spec(SumProductSpec(1, 1, {}))


def test_sum_product_sequence_plus_one_is_habiro_value():
    f = habiro_from_spec(TREFOIL_SPEC)
    for n in (1, 2, 7, 30):
        assert abs(sum_product_seq(TREFOIL_SPEC, n, CTX) + 1 - habiro_eval(f, n, CTX)) < 1e-60
    # the trefoil spec reproduces the Kashaev element
    for n in (3, 11):
        assert abs(habiro_eval(kashaev_31(), n, CTX) - habiro_eval(f, n, CTX)) < 1e-60


def test_sum_product_sequence_direct_oracle():
    n = 9
    w = [cmath.exp(2j * math.pi * j / n) for j in range(n + 1)]
    total, prod = 0, 1
    for j in range(1, n + 1):
        prod *= -(w[j] ** -1) * (1 - w[j]) ** 2
        total += prod
    assert abs(complex(sum_product_seq(FIGURE_EIGHT_SPEC, n, CTX)) - total) < 1e-10


def test_sigma_pi_series_trefoil_matches_taylor():
    K = 8
    s = sigma_pi_series(TREFOIL_SPEC, K)
    t = habiro_taylor1(kashaev_31(), K + 1)
    assert s.var == "y"
    assert list(s.coeffs[1:]) == list(t.coeffs[1:K + 1])
    assert list(s.coeffs[:3]) == [0, -1, Fraction(3, 2)]
    num = sigma_pi_numeric(TREFOIL_SPEC, 3, CTX)
    assert abs(num[1] + 2j * CTX.mp.pi) < 1e-60


def test_sigma_pi_polynomial_model():
    # F(x) = x gives sum_n n!/x^n
    s = sigma_pi_series(PolynomialSumProduct((0, 1)), 7)
    assert list(s.coeffs) == [0] + [factorial(n) for n in range(1, 8)]
    with pytest.raises(ValueError):
        PolynomialSumProduct((1, 1))
    model = PolynomialSumProduct((0, Fraction(1, 2), Fraction(1, 2)))
    n = 5
    want = Fraction(0)
    prod = Fraction(1)
    for j in range(1, n + 1):
        x = Fraction(j, n)
        prod *= (x + x * x) / 2
        want += prod
    assert model.seq(n) == want


def test_lp_series_is_borel_of_taylor():
    s = lp_series(kashaev_31(), 6)
    t = habiro_taylor1(kashaev_31(), 6)
    assert list(s.coeffs) == [t.coeffs[k + 1] / factorial(k) for k in range(6)]
    with pytest.raises(ValueError):
        lp_series(kashaev_31(), 0)


def test_twist_loader(tmp_path):
    good = tmp_path / "twist.txt"
    good.write_text("p=1\n0:1\n0:1\n\n")
    d = load_twist_data(good)
    assert d.p == 1 and len(d.cyclotomic) == 2
    f = twist_knot_element(d)
    # at q = -1 the two levels give 1 + (1 - q)(1 - 1/q)
    q = -1
    assert abs(habiro_eval(f, 2, CTX) - (1 + (1 - q) * (1 - 1 / q))) < 1e-60
    bad = tmp_path / "bad.txt"
    bad.write_text("p=2\n0:1\n1:x\n")
    with pytest.raises(ValueError, match=r"bad.txt:3"):
        load_twist_data(bad)
    head = tmp_path / "head.txt"
    head.write_text("0:1\n")
    with pytest.raises(ValueError, match=r"head.txt:1"):
        load_twist_data(head)


def test_period_points_loader(tmp_path):
    p = tmp_path / "pts.json"
    p.write_text(json.dumps([{"re": 1, "im": "0.5", "label": "a"}]))
    assert load_period_points(p) == [{"re": 1.0, "im": 0.5, "label": "a"}]
    p.write_text(json.dumps([{"re": 1}]))
    with pytest.raises(ValueError, match="entry 0"):
        load_period_points(p)


def test_candidates_trefoil_and_symmetry():
    mp = CTX.mp
    cs = singular_candidates(TREFOIL_SPEC, ctx=CTX)
    assert cs.contains(mp.expjpi(mp.mpf(1) / 12))
    assert cs.heuristic
    # closed under conjugation of Lambda, which conjugates and inverts e^(Lambda/2 pi i)
    for e in cs.elambda[2:]:
        assert cs.contains(1 / mp.conj(e), 1e-20)
    with pytest.raises(ValueError):
        singular_candidates(TREFOIL_SPEC, branches=-1)


def test_candidates_figure_eight_moduli():
    mp = CTX.mp
    cs = singular_candidates(FIGURE_EIGHT_SPEC, ctx=CTX)
    with mpmath.workdps(40):
        vol = 2 * mpmath.im(mpmath.polylog(2, mpmath.expjpi(mpmath.mpf(1) / 3)))
        target = float(mpmath.exp(-vol / (2 * mpmath.pi)))
    assert any(abs(float(m) - target) < 1e-12 for m in cs.moduli())


def test_chi12_values():
    assert [chi12(m) for m in range(1, 13)] == [1, 0, 0, 0, -1, 0, -1, 0, 0, 0, 1, 0]
    assert chi12(13) == 1 and chi12(-1) == 1


def test_trefoil_decomposition_small_residual():
    assert trefoil_decomposition_check(40, 400, PrecisionContext(128)) < 1e-6
    with pytest.raises(ValueError):
        trefoil_decomposition_check(0)
