"""Empirical probe of the mixed Gevrey type (r, s) of an exact sequence.

Type (r, s) asks for |a_n| <= C^n n!^r and for the common denominator of
a_0/0!^s, ..., a_n/n!^s to be at most C^n.  Both conditions are monotone
(larger r and smaller s are weaker), so the probe reports the smallest r and
the largest s that the coefficients on the window support.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm, lgamma, log

import numpy as np

from .sequence import CoeffSequence


@dataclass
class GevreyReport:
    r_est: Fraction
    s_est: Fraction
    C_est: float
    r_raw: float
    flags: list = field(default_factory=list)


def _grid(den: int = 4, top: int = 4) -> list[Fraction]:
    return sorted({Fraction(p, q) for q in range(1, den + 1) for p in range(0, top * q + 1)})


def _fit(x_cols, y):
    A = np.column_stack(x_cols)
    coef, *_ = np.linalg.lstsq(A, np.asarray(y, dtype=float), rcond=None)
    return coef


def _log_abs(a: Fraction) -> float:
    return log(abs(a.numerator)) - log(a.denominator)


def _denominator_growth(coeffs, s: int, n0: int):
    """Fit log D_n = b0 + b1 n + b2 log n! for the running common denominator
    D_n of a_k / k!^s, over n >= n0.  Returns (b1, b2)."""
    D = 1
    ns, logs = [], []
    for k, a in enumerate(coeffs):
        D = lcm(D, (Fraction(a) / factorial(k) ** s).denominator)
        if k >= n0:
            ns.append(k)
            logs.append(log(D))
    ns = np.array(ns, dtype=float)
    lf = np.array([lgamma(n + 1) for n in ns])
    coef = _fit([np.ones_like(ns), ns, lf], logs)
    return float(coef[1]), float(coef[2])


def gevrey_probe(s: CoeffSequence, window: tuple[int, int] | None = None,
                 max_s: int = 4) -> GevreyReport:
    """Estimate (r, s, C) from exact rational coefficients.

    r: regression of log|a_n| on [1, n, log n!], snapped to the nearest
    rational with denominator at most 4.  s: the largest integer s <= max_s
    whose running denominators grow at most geometrically (the coefficient
    of log n! in their logarithm stays below 1/4).  Fractional s is not
    probed, because a_n / n!^s is then not a rational number.  C: the larger
    of the two fitted geometric bases.

    Problems are reported as flags ("inconclusive-r", "too-few-terms") rather
    than raised.
    """
    if not s.exact:
        raise ValueError("gevrey_probe needs exact rational coefficients")
    coeffs = [Fraction(c) for c in s.coeffs]
    nmax = len(coeffs) - 1
    n0, n1 = window if window else (max(2, nmax // 4), nmax)
    flags = []
    idx = [n for n in range(n0, n1 + 1) if coeffs[n] != 0]
    if len(idx) < 4:
        return GevreyReport(Fraction(0), Fraction(0), float("nan"), float("nan"), ["too-few-terms"])

    ns = np.array(idx, dtype=float)
    lf = np.array([lgamma(n + 1) for n in idx])
    y = [_log_abs(coeffs[n]) for n in idx]
    coef = _fit([np.ones_like(ns), ns, lf], y)
    r_raw = float(coef[2])
    r_est = min(_grid(), key=lambda g: abs(float(g) - max(r_raw, 0.0)))
    if abs(r_raw - float(r_est)) > 0.1:
        flags.append("inconclusive-r")
    # geometric base of the growth once n!^r is divided out
    rest = [yy - float(r_est) * l for yy, l in zip(y, lf)]
    growth_base = float(np.exp(_fit([np.ones_like(ns), ns], rest)[1]))

    s_est = 0
    den_base = 1.0
    for cand in range(0, max_s + 1):
        b1, b2 = _denominator_growth(coeffs[: n1 + 1], cand, n0)
        if b2 >= 0.25:
            break
        s_est = cand
        den_base = float(np.exp(max(b1, 0.0)))
    if s_est == max_s:
        flags.append("s-at-probe-limit")
    return GevreyReport(r_est, Fraction(s_est), max(growth_base, den_base), r_raw, flags)
