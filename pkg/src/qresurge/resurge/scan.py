"""Blow-up scan of a truncated power series on a circle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..precision import PrecisionContext, as_context
from .sequence import CoeffSequence


class DivergentScanError(ValueError):
    pass


@dataclass
class Peak:
    t0: float
    strength: float
    merged: bool = False


def scan_values(s: CoeffSequence, r: float, grid: int, ctx: PrecisionContext | int | None = None) -> np.ndarray:
    """|sum_n a_n r^n e^{2 pi i n t}| at t = j/grid, via one FFT.

    Coefficients are scaled by r^n at the working precision before the
    conversion to double, and indices are folded mod grid when the series is
    longer than the grid.
    """
    ctx = as_context(ctx)
    mp = ctx.mp
    if grid < 64:
        raise ValueError("grid must have at least 64 points")
    if not 0 < r:
        raise ValueError("r must be positive")
    values = s.numeric(ctx)
    rr = mp.mpf(r)
    scaled = [complex(v * rr ** n) for n, v in enumerate(values)]
    logs = np.array([np.log(abs(c)) if c != 0 else np.nan for c in scaled])
    half = len(scaled) // 2
    idx = np.arange(half, len(scaled))
    ok = ~np.isnan(logs[half:])
    if ok.sum() >= 3:
        slope = np.polyfit(idx[ok], logs[half:][ok], 1)[0]
        if slope >= 0:
            raise DivergentScanError(
                f"terms |a_n| r^n do not decay at r={r} (tail slope {slope:.3g}); use a smaller r")
    folded = np.zeros(grid, dtype=complex)
    for n, c in enumerate(scaled):
        folded[n % grid] += c
    # sum_m C_m e^{2 pi i m j / grid} = grid * ifft(C)[j]
    return np.abs(np.fft.ifft(folded) * grid)


def find_peaks(mod: np.ndarray, k: float = 5.0, merge_cells: int = 3, width: int = 1) -> list[Peak]:
    """Circular local maxima above median + k * IQR, refined by a parabola
    through log|f| at the three nearest grid points.

    A candidate must be the largest value within ``width`` cells on either
    side; a width of about grid/N suppresses the ripple that truncating a
    series after N terms puts on the flanks of a strong peak.
    """
    grid = len(mod)
    q1, med, q3 = np.percentile(mod, [25, 50, 75])
    threshold = med + k * (q3 - q1)
    left = np.roll(mod, 1)
    right = np.roll(mod, -1)
    is_max = (mod > left) & (mod >= right) & (mod > threshold)
    for w in range(2, width + 1):
        is_max &= (mod >= np.roll(mod, w)) & (mod >= np.roll(mod, -w))
    peaks = []
    for j in np.where(is_max)[0]:
        ym, y0, yp = np.log(left[j]), np.log(mod[j]), np.log(right[j])
        denom = ym - 2 * y0 + yp
        delta = 0.5 * (ym - yp) / denom if denom < 0 else 0.0
        delta = float(np.clip(delta, -0.5, 0.5))
        peaks.append(Peak(((j + delta) / grid) % 1.0, float(mod[j])))
    if len(peaks) > 1:
        pos = np.array([p.t0 for p in peaks])
        for i, p in enumerate(peaks):
            gap = _circ(pos - p.t0) * grid
            gap[i] = np.inf
            p.merged = bool(np.min(gap) <= merge_cells)
    return sorted(peaks, key=lambda p: p.t0)


def _circ(dt):
    return np.abs((np.asarray(dt) + 0.5) % 1.0 - 0.5)


def _ripple_width(n_coeffs: int, grid: int) -> int:
    return max(1, int(round(grid / max(n_coeffs - 1, 1))))


def angular_scan(s: CoeffSequence, r: float, grid: int = 4096,
                 ctx: PrecisionContext | int | None = None, k: float = 5.0,
                 deriv: int = 0) -> list[Peak]:
    """Peaks of |z^m f^(m)(z)| on |z| = r for the truncated series f, m = deriv.

    With deriv = 0 this is the modulus of the series itself.  Weighting by
    n^m (up to lower-order terms, the same as scanning z^m f^(m)) leaves the
    singular directions unchanged but sharpens them relative to the smooth
    background.  This matters at finite r, where the maximum of |f| near a
    weak pole sitting on the flank of a strong singularity can be displaced
    by many grid cells.  Larger m needs more coefficients, since it also
    amplifies the truncation ripple.
    """
    ctx = as_context(ctx)
    if deriv < 0:
        raise ValueError("deriv must be nonnegative")
    if deriv:
        mp = ctx.mp
        s = CoeffSequence([v * mp.mpf(n) ** deriv for n, v in enumerate(s.numeric(ctx))], s.meta)
    width = _ripple_width(len(s), grid)
    return find_peaks(scan_values(s, r, grid, ctx), k=k, width=width)
