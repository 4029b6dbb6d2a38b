"""Asymptotic fits a_n ~ lambda^-n n^alpha (c_0 + c_1/n + ... + c_d/n^d)."""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from ..precision import PrecisionContext, as_context
from .accel import IllConditionedError, lstsq, richardson
from .sequence import CoeffSequence, FitConfig


@dataclass
class FitRecord:
    lam: complex
    alpha: float
    c: list
    d: int
    residual: float
    method: str
    t0: float
    flags: list = field(default_factory=list)

    @property
    def c0(self):
        return self.c[0] if self.c else None

    @property
    def abs_lambda(self) -> float:
        return abs(self.lam)

    @property
    def direction(self) -> float:
        """Argument of lambda as a fraction of a full turn, in [0, 1)."""
        t = (cmath.phase(self.lam) / (2 * cmath.pi)) % 1.0
        return 0.0 if t > 1 - 1e-12 else t

    def model(self, n: int, mp):
        """Complex model value lambda^-n n^alpha sum_k c_k n^-k."""
        nn = mp.mpf(n)
        poly = mp.fsum(mp.mpc(ck) * nn ** -k for k, ck in enumerate(self.c))
        return mp.mpc(self.lam) ** -n * nn ** mp.mpf(self.alpha) * poly


def _derotate(values, t0, mp):
    return [v * mp.expjpi(2 * mp.mpf(t0) * n) for n, v in enumerate(values)]


def _amplitudes(values, lam, alpha, window, d, mp, max_cond_bits, others=()):
    """Complex amplitudes c_k of a_n ~ lam^-n n^alpha sum_k c_k n^-k.

    Every other peak t_j enters as extra columns e^{2 pi i n (t - t_j)}
    n^(-alpha-p), p = 0..d, with t the direction of lam, so that an
    oscillating subdominant term does not leak into the c_k.
    """
    idx = range(window[0], window[1] + 1)
    t = mp.arg(lam) / (2 * mp.pi)

    def row(n):
        nn = mp.mpf(n)
        r = [nn ** -k for k in range(d + 1)]
        for tj in others:
            osc = mp.expjpi(2 * (t - tj) * n) * nn ** -alpha
            r += [osc * nn ** -p for p in range(d + 1)]
        return r

    rows = [row(n) for n in idx]
    rhs = [values[n] * lam ** n * mp.mpf(n) ** -alpha for n in idx]
    c, cond = lstsq(rows, rhs, mp, max_cond_bits=max_cond_bits)
    return c[:d + 1]


def _validation(values, lam, alpha, c, validation, mp, extra=None):
    worst = mp.mpf(0)
    for n in range(validation[0], validation[1] + 1):
        if values[n] == 0:
            continue
        if extra is not None:
            model_abs = extra(n)
        else:
            poly = mp.fsum(ck * mp.mpf(n) ** -k for k, ck in enumerate(c))
            model_abs = abs(lam) ** -n * mp.mpf(n) ** alpha * abs(poly)
        err = abs(model_abs - abs(values[n])) / abs(values[n])
        worst = max(worst, err)
    return worst


def _richardson_fit(values, t0, d, window, validation, mp, max_cond_bits):
    b = _derotate(values, t0, mp)
    n1 = window[1]
    lo = n1 - d - 1
    if lo < 2 or any(b[m] == 0 for m in range(lo - 1, n1 + 1)):
        raise ValueError("ratio sequence needs nonzero coefficients near the window end")
    rho = {m: b[m] / b[m - 1] for m in range(lo, n1 + 1)}
    inv = richardson(rho, n1 - d, d, mp)
    alpha_seq = {m: m * (rho[m] / inv - 1) for m in rho}
    alpha = richardson(alpha_seq, n1 - d, d, mp).real
    lam = mp.expjpi(2 * mp.mpf(t0)) / inv
    c = _amplitudes(values, lam, alpha, window, d, mp, max_cond_bits)
    res = _validation(values, lam, alpha, c, validation, mp)
    return lam, alpha, c, res


def _lsq_fit(values, t0, d, window, validation, mp, max_cond_bits, other_peaks):
    """Regress log|b_n| on [1, n, log n, n^-1..n^-d] plus, for every other
    peak t_j, n^-p cos and sin of 2 pi n (t0 - t_j) for p = 1, 2, 3.

    The unwrapped phase of b_n is regressed on the same columns; its slope
    in n corrects the direction of lambda away from the hint t0.
    """
    b = _derotate(values, t0, mp)

    def row(n):
        nn = mp.mpf(n)
        r = [mp.mpf(1), nn, mp.log(nn)] + [nn ** -k for k in range(1, d + 1)]
        for tj in other_peaks:
            dt = 2 * (mp.mpf(t0) - tj)
            for p in (1, 2, 3):
                r += [mp.cospi(dt * n) / nn ** p, mp.sinpi(dt * n) / nn ** p]
        return r

    idx = [n for n in range(window[0], window[1] + 1) if b[n] != 0]
    rows = [row(n) for n in idx]
    y = [mp.log(abs(b[n])) for n in idx]
    coef, _ = lstsq(rows, y, mp, max_cond_bits=max_cond_bits)
    coef = [x.real for x in coef]
    phase = [mp.arg(b[idx[0]])]
    for m, n in zip(idx, idx[1:]):
        phase.append(phase[-1] + mp.arg(b[n] / b[m]))
    pcoef, _ = lstsq(rows, phase, mp, max_cond_bits=max_cond_bits)
    lam_abs = mp.exp(-coef[1])
    alpha = coef[2]
    lam = lam_abs * mp.expj(2 * mp.pi * mp.mpf(t0) - pcoef[1].real)
    others = [mp.mpf(t) for t in other_peaks]
    c = _amplitudes(values, lam, alpha, window, min(d, 2), mp, max_cond_bits, others)

    def model_abs(n):
        return mp.exp(mp.fsum(ci * ri for ci, ri in zip(coef, row(n))))

    res = _validation(values, lam, alpha, c, validation, mp, extra=model_abs)
    return lam, alpha, c, res


def asym_fit(s: CoeffSequence, t0_hint: float = 0.0, cfg: FitConfig | None = None,
             ctx: PrecisionContext | int | None = None, other_peaks=(), method: str = "auto") -> FitRecord:
    """Fit the dominant singularity in direction t0_hint.

    ``method`` is "richardson" (accelerated ratios, order cfg.d), "lsq"
    (log-linear regression with orders up to min(cfg.d, 4), optionally with
    harmonic terms for ``other_peaks``) or "auto", which keeps whichever
    candidate has the smallest validation residual.  The residual is the
    largest relative error of |model| against |a_n| on the validation window.
    """
    ctx = as_context(ctx)
    mp = ctx.mp
    cfg = cfg or FitConfig()
    values = s.numeric(ctx)
    nmax = len(values) - 1
    window, validation = cfg.resolve(nmax)
    max_cond_bits = int(0.75 * ctx.bits)
    others = [mp.mpf(t) for t in other_peaks if abs(((t - t0_hint) + 0.5) % 1 - 0.5) > 1e-9]

    candidates = []
    errors = []
    if method in ("auto", "richardson"):
        try:
            lam, alpha, c, res = _richardson_fit(values, t0_hint, cfg.d, window, validation, mp, max_cond_bits)
            candidates.append((res, "richardson", cfg.d, lam, alpha, c))
        except (IllConditionedError, ValueError, ZeroDivisionError) as exc:
            errors.append(f"richardson: {exc}")
    if method in ("auto", "lsq"):
        for d in range(0, min(cfg.d, 4) + 1):
            try:
                lam, alpha, c, res = _lsq_fit(values, t0_hint, d, window, validation, mp, max_cond_bits, others)
                candidates.append((res, "lsq", d, lam, alpha, c))
            except (IllConditionedError, ValueError, ZeroDivisionError) as exc:
                errors.append(f"lsq d={d}: {exc}")
    if not candidates:
        raise IllConditionedError("no fit succeeded; " + "; ".join(errors))
    candidates.sort(key=lambda t: t[0])
    res, meth, d, lam, alpha, c = candidates[0]
    flags = [] if not errors else ["some-candidates-failed"]
    return FitRecord(complex(lam), float(alpha), [complex(x) for x in c], d, float(res), meth,
                     float(t0_hint), flags)


def residual_profile(s: CoeffSequence, t0_hint: float, orders, cfg: FitConfig | None = None,
                     ctx: PrecisionContext | int | None = None) -> tuple[list, bool]:
    """Richardson-fit validation residuals for each order, and whether they
    are non-increasing.  A failure of monotonicity is a diagnostic only."""
    cfg = cfg or FitConfig()
    out = []
    for d in orders:
        sub = FitConfig(d=d, window=cfg.window, validation=cfg.validation)
        try:
            out.append(asym_fit(s, t0_hint, sub, ctx, method="richardson").residual)
        except IllConditionedError:
            out.append(float("inf"))
    monotone = all(b <= a * (1 + 1e-9) + 1e-60 for a, b in zip(out, out[1:]))
    return out, monotone
