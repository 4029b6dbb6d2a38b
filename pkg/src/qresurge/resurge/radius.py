"""Radius of convergence from coefficient growth."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..precision import PrecisionContext, as_context
from .accel import richardson
from .sequence import CoeffSequence, FitConfig

log = logging.getLogger(__name__)


@dataclass
class RadiusResult:
    radius: float
    raw: float
    accelerated: float | None
    residual: float
    flags: list = field(default_factory=list)
    gevrey_order: float | None = None


def _log_abs(values, idx, mp):
    out_n, out_v = [], []
    for n in idx:
        v = values[n]
        if v == 0:
            log.debug("skipping zero coefficient at n=%d", n)
            continue
        out_n.append(n)
        out_v.append(float(mp.log(abs(v))))
    return np.array(out_n, dtype=float), np.array(out_v)


def raw_radius(values, window, mp) -> tuple[float, float, np.ndarray]:
    """Fit log|a_n| = c + b n + g log n on the window; radius is e^-b."""
    n, y = _log_abs(values, range(window[0], window[1] + 1), mp)
    if len(n) < 3:
        raise ValueError(f"window {window} has fewer than 3 nonzero coefficients")
    A = np.column_stack([np.ones_like(n), n, np.log(n)])
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    return float(np.exp(-coef[1])), coef


def gevrey_slope(values, window, mp) -> float:
    """Slope of log|a_n/a_{n-1}| against log n: about r for n!^r growth."""
    ns, ratios = [], []
    for n in range(max(window[0], 2), window[1] + 1):
        if values[n] != 0 and values[n - 1] != 0:
            ns.append(np.log(n))
            ratios.append(float(mp.log(abs(values[n] / values[n - 1]))))
    if len(ns) < 3:
        return 0.0
    return float(np.polyfit(ns, ratios, 1)[0])


def radius_estimate(s: CoeffSequence, cfg: FitConfig | None = None,
                    ctx: PrecisionContext | int | None = None) -> RadiusResult:
    """Estimate 1 / limsup |a_n|^(1/n).

    The raw estimate is a log-linear regression over the fit window.  When
    the coefficients near the end are nonvanishing, Richardson extrapolation
    of order d is applied to the ratio sequence a_{n-1}/a_n; it is kept when
    two neighbouring extrapolants agree, which fails for oscillating ratios
    (several singularities on the circle of convergence).
    """
    ctx = as_context(ctx)
    mp = ctx.mp
    cfg = cfg or FitConfig()
    if len(s) < 50:
        raise ValueError(f"radius estimation needs at least 50 coefficients, got {len(s)}")
    values = s.numeric(ctx)
    nmax = len(values) - 1
    window, validation = cfg.resolve(nmax)
    if all(values[n] == 0 for n in range(window[0], window[1] + 1)):
        raise ValueError(f"all coefficients in window {window} vanish")
    flags = []

    slope = gevrey_slope(values, (window[0], nmax), mp)
    if slope > 0.5:
        order = round(slope * 4) / 4
        flags.append(f"gevrey-{order:g}")
        flags.append("zero-radius")
        return RadiusResult(0.0, 0.0, None, 0.0, flags, gevrey_order=order)

    raw, coef = raw_radius(values, window, mp)
    vn, vy = _log_abs(values, range(validation[0], validation[1] + 1), mp)
    pred = coef[0] + coef[1] * vn + coef[2] * np.log(vn)
    residual = float(np.max(np.abs(pred - vy))) if len(vn) else float("nan")

    accelerated = None
    d = cfg.d
    start = nmax - d - 1
    tail_ok = all(values[m] != 0 for m in range(start - 1, nmax + 1))
    if tail_ok and start > 1:
        ratios = {m: values[m - 1] / values[m] for m in range(start - 1, nmax + 1)}
        r1 = richardson(ratios, start, d, mp)
        r0 = richardson(ratios, start - 1, d, mp)
        spread = abs(r1 - r0)
        if spread < mp.mpf(10) ** -4 * abs(r1):
            accelerated = float(abs(r1))
            residual_acc = float(spread)
            return RadiusResult(accelerated, raw, accelerated, residual_acc, flags)
        flags.append("acceleration-unstable")
    else:
        flags.append("acceleration-skipped")
    return RadiusResult(raw, raw, accelerated, residual, flags)
