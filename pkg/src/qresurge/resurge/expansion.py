"""Checks of the expansion a_n ~ sum_k c_k n^-k for sum-product sequences.

For a sum-product sequence a_n = sum_k prod_{j<=k} F(j/n) with |F| < 1 on
(0, 1], the coefficients c_k of the formal series sum_n prod_{j<=n} F(j/x)
in 1/x describe a_n to all orders in 1/n.  That expansion is equivalent to
the statement that the "np" generating function is log(z) times the
continuation of the Borel-transformed "p" series plus a function analytic
at z = 0, so testing it coefficientwise is a practical proxy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from ..knotgen.knots import PolynomialSumProduct, SumProductSpec, sigma_pi_series, sum_product_seq
from ..precision import PrecisionContext, as_context
from ..qcore.series import FormalSeries, borel
from .sequence import CoeffSequence


class PreconditionError(ValueError):
    pass


@dataclass
class ExpansionReport:
    K: int
    window: tuple
    residuals: list = field(default_factory=list)
    first_half_max: float = float("nan")
    second_half_max: float = float("nan")
    passed: bool = False
    notes: list = field(default_factory=list)

    @property
    def ratio(self) -> float:
        return self.second_half_max / self.first_half_max if self.first_half_max else float("inf")


def _c_numeric(cks: FormalSeries, K: int, mp):
    """c_1..c_K as coefficients of 1/x^k (series in y = 2 pi i / x are rescaled)."""
    scale = mp.mpc(0, 2 * mp.pi) if cks.var == "y" else 1
    return [_to_mp(cks.coeffs[k], mp) * scale ** k if k < len(cks.coeffs) else mp.mpc(0)
            for k in range(K + 1)]


def _to_mp(x, mp):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / x.denominator
    return mp.mpc(x)


def _sequence_value(s, n, ctx):
    if isinstance(s, PolynomialSumProduct):
        return s.seq(n)
    if isinstance(s, SumProductSpec):
        return sum_product_seq(s, n, ctx)
    return s[n]


def coeff_expansion_check(s, cks: FormalSeries, K: int, window=(100, 400),
                          ctx: PrecisionContext | int | None = None, step: int = 1) -> ExpansionReport:
    """max over the window of n^(K+1) |a_n - sum_{k<=K} c_k n^-k|, split in halves.

    The residual is called bounded when the maximum over the upper half of
    the window is at most twice the maximum over the lower half.  ``s`` is a
    sum-product spec, a polynomial model, or a CoeffSequence indexed by n.
    """
    ctx = as_context(ctx)
    mp = ctx.mp
    n0, n1 = window
    report = ExpansionReport(K, (n0, n1))
    if K < 1:
        report.notes.append("K too small: with K = 0 the residual is n |a_n| and no expansion is tested")
        return report
    if cks.order < K:
        raise ValueError(f"expansion has order {cks.order} < K = {K}")
    if isinstance(s, CoeffSequence) and len(s) <= n1:
        raise ValueError(f"sequence has {len(s)} terms, window needs index {n1}")
    exact = isinstance(s, PolynomialSumProduct) and cks.kind == "exact"
    c = [Fraction(x) for x in cks.coeffs[: K + 1]] if exact else _c_numeric(cks, K, mp)
    mid = (n0 + n1) / 2
    lo, hi = mp.mpf(0), mp.mpf(0)
    for n in range(n0, n1 + 1, step):
        a = _sequence_value(s, n, ctx)
        if exact:
            tail = Fraction(a) - sum(c[k] / Fraction(n) ** k for k in range(1, K + 1))
            tail = abs(tail) * n ** (K + 1)
            value = mp.mpf(tail.numerator) / tail.denominator
        else:
            a = _to_mp(a, mp)
            model = mp.fsum(c[k] / mp.mpf(n) ** k for k in range(1, K + 1))
            value = abs(a - model) * mp.mpf(n) ** (K + 1)
        report.residuals.append((n, float(value)))
        if n <= mid:
            lo = max(lo, value)
        else:
            hi = max(hi, value)
    report.first_half_max = float(lo)
    report.second_half_max = float(hi)
    report.passed = bool(lo > 0 and hi <= 2 * lo) or bool(lo == 0 and hi == 0)
    if not report.passed:
        report.notes.append(f"residual grows across the window (ratio {report.ratio:.3g})")
    return report


def check_precondition(s, samples: int = 2000, tol: float = 1e-12,
                       ctx: PrecisionContext | int | None = None) -> list:
    """Sampled x in (0, 1] where |F(x)| exceeds 1 (up to tol).

    The tolerance lets F(x) = x pass with its boundary value F(1) = 1.
    """
    ctx = as_context(ctx)
    bad = []
    for i in range(1, samples + 1):
        x = Fraction(i, samples)
        if isinstance(s, PolynomialSumProduct):
            v = abs(float(s.F(x)))
        else:
            v = float(abs(s.F(ctx.mp.mpf(x.numerator) / x.denominator, ctx)))
        if v > 1 + tol:
            bad.append(float(x))
    return bad


def exact_implies_pert_probe(s, K: int = 4, window=(100, 400),
                             ctx: PrecisionContext | int | None = None, step: int = 1) -> ExpansionReport:
    """Coefficient-level probe of the np/p relation for a sum-product spec.

    Builds the Borel-transformed p series from the formal expansion, recovers
    c_k = (k-1)! b_{k-1} from it, and runs coeff_expansion_check.  Raises
    PreconditionError listing sampled points where |F| > 1.
    """
    bad = check_precondition(s, ctx=ctx)
    if bad:
        shown = ", ".join(f"{x:.4g}" for x in bad[:8])
        more = f" and {len(bad) - 8} more" if len(bad) > 8 else ""
        raise PreconditionError(f"|F(x)| > 1 at x = {shown}{more}")
    series = sigma_pi_series(s, K + 1)
    b = borel(series)
    coeffs = [0] + [b.coeffs[k - 1] * factorial(k - 1) for k in range(1, K + 1)]
    cks = FormalSeries(coeffs, var=series.var, kind=b.kind)
    report = coeff_expansion_check(s, cks, K, window, ctx, step=step)
    report.notes.append("p series rebuilt through the Borel transform")
    return report
