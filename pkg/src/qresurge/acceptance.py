"""Acceptance criteria as a registry of self-contained checks.

Each check returns a :class:`Outcome`; :func:`run_all` times them and is
shared by the test suite and ``qresurge check``.  Reference constants are
written out as decimal strings and converted at the working precision.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Callable

from .precision import PrecisionContext

VOL_41 = "2.02988321281930725004240510855"
EXP_MINUS_VOL = "0.72392611187952434703"
EXP_PLUS_VOL = "1.38135644451849779337"


@dataclass
class Outcome:
    passed: bool
    detail: str


@dataclass
class Criterion:
    number: int
    title: str
    check: Callable[[], Outcome]
    time_limit: float | None = None


@dataclass
class Result:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d}. {self.title}: {self.detail} ({self.elapsed:.2f} s)"


def _c1() -> Outcome:
    from .knotgen import vol_41

    ctx = PrecisionContext(256)
    mp = ctx.mp
    v = vol_41(ctx)
    rel = abs(v - mp.mpf(VOL_41)) / mp.mpf(VOL_41)
    return Outcome(rel < mp.mpf("1e-25"), f"Vol = {mp.nstr(v, 30)}, relative error {mp.nstr(rel, 3)}")


def _c2() -> Outcome:
    from .knotgen import vol_41

    ctx = PrecisionContext(256)
    mp = ctx.mp
    v = vol_41(ctx)
    lo = mp.exp(-v / (2 * mp.pi))
    hi = mp.exp(v / (2 * mp.pi))
    e1 = abs(lo - mp.mpf(EXP_MINUS_VOL))
    e2 = abs(hi - mp.mpf(EXP_PLUS_VOL))
    tol = mp.mpf("1e-20")
    return Outcome(e1 < tol and e2 < tol,
                   f"{mp.nstr(lo, 22)} (err {mp.nstr(e1, 3)}), {mp.nstr(hi, 22)} (err {mp.nstr(e2, 3)})")


def _c3() -> Outcome:
    from .knotgen import kashaev_31, lp_series
    from .resurge import CoeffSequence, FitConfig, radius_estimate

    ctx = PrecisionContext(256)
    mp = ctx.mp
    s = CoeffSequence(list(lp_series(kashaev_31(), 500).coeffs), {"object": "3_1", "model": "p"})
    res = radius_estimate(s, FitConfig(d=10), ctx)
    target = mp.pi ** 2 / 6
    raw_err = abs(res.raw - target)
    acc_err = abs(res.accelerated - target) if res.accelerated is not None else mp.inf
    ok = raw_err < 1e-3 and acc_err < 1e-6
    return Outcome(ok, f"raw {res.raw:.10f} (err {float(raw_err):.2e}), "
                       f"accelerated {res.accelerated} (err {float(acc_err):.2e}), target pi^2/6")


def _c4() -> Outcome:
    from .knotgen import kashaev_41, vol_41
    from .qcore import habiro_np_coeffs
    from .resurge import CoeffSequence, asym_fit

    ctx = PrecisionContext(256)
    mp = ctx.mp
    s = CoeffSequence(habiro_np_coeffs(kashaev_41(), 500, ctx), {"object": "4_1", "model": "np"})
    fit = asym_fit(s, 0.0, None, ctx)
    target = mp.exp(-vol_41(ctx) / (2 * mp.pi))
    err = abs(fit.abs_lambda - target)
    return Outcome(err < 1e-2, f"|lambda| = {fit.abs_lambda:.12f} via {fit.method} (err {float(err):.2e})")


def _c5() -> Outcome:
    from .knotgen import kashaev_31
    from .qcore import habiro_np_coeffs
    from .resurge import CoeffSequence, angular_scan, asym_fit

    ctx = PrecisionContext(64)
    grid = 4096
    s = CoeffSequence(habiro_np_coeffs(kashaev_31(), 1000, ctx), {"object": "3_1", "model": "np"})
    peaks = angular_scan(s, 0.98, grid, ctx, deriv=2)

    def near(t):
        return [p for p in peaks if abs(((p.t0 - t) + 0.5) % 1 - 0.5) * grid <= 1]

    at0, at24 = near(0.0), near(1 / 24)
    found = ", ".join(f"{p.t0 * grid:.2f}/{grid}" for p in peaks)
    if not (at0 and at24):
        return Outcome(False, f"peaks at t = {found}")
    others = [p.t0 for p in peaks if p is not at24[0]]
    fit = asym_fit(s, at24[0].t0, None, ctx, other_peaks=others)
    ok = abs(fit.alpha - 1.5) < 1e-2
    return Outcome(ok, f"peaks at t = {found}; alpha at 1/24 = {fit.alpha:.6f}")


def _c6() -> Outcome:
    from .knotgen import verlinde_residue, verlinde_sum

    bad = [(g, n) for g in (2, 3, 4) for n in range(1, 21) if verlinde_sum(g, n) != verlinde_residue(g, n)]
    poly = [n for n in range(1, 21)
            if verlinde_sum(2, n) != Fraction(n ** 3, 6) + n ** 2 + Fraction(11 * n, 6) + 1]
    return Outcome(not bad and not poly,
                   f"{60 - len(bad)}/60 sum = residue, {20 - len(poly)}/20 g=2 values on the cubic")


def _c7() -> Outcome:
    from .knotgen import lnp_s3_polylog
    from .knotgen.wrt import s3_series_direct

    ctx = PrecisionContext(256)
    mp = ctx.mp
    worst = mp.mpf(0)
    for z in (mp.mpf(1) / 2, mp.mpf("0.3") * mp.expjpi(mp.mpf(1) / 5)):
        direct = s3_series_direct(z, 200, ctx)
        value, _ = lnp_s3_polylog(z, 40, ctx)
        worst = max(worst, abs(direct - value))
    return Outcome(worst < 1e-10, f"max |direct - polylog form| = {mp.nstr(worst, 3)}")


def inversion_sample_points(mp) -> list:
    """20 points off the real axis with 1 < |z| < e^1.5."""
    pts = []
    for i in range(20):
        rho = mp.mpf(1 + i % 5) / 4          # log|z| in (0, 1.5)
        theta = mp.pi * (2 * i + 1) / 21     # never a multiple of pi
        pts.append(mp.exp(rho + 1j * theta))
    return pts


def _c8() -> Outcome:
    from .specialfn import inversion_residual

    ctx = PrecisionContext(256)
    mp = ctx.mp
    worst = max(inversion_residual(k, z, ctx) for k in (2, 3, 4) for z in inversion_sample_points(mp))
    return Outcome(worst < mp.mpf("1e-30"), f"max residual over 60 cases = {mp.nstr(worst, 3)}")


def _c9() -> Outcome:
    from .knotgen import trefoil_decomposition_check

    ctx = PrecisionContext(128)
    rel = {n: trefoil_decomposition_check(n, 400, ctx) for n in (50, 100, 200)}
    return Outcome(max(rel.values()) < 1e-6, ", ".join(f"n={n}: {v:.2e}" for n, v in rel.items()))


def _c10() -> Outcome:
    from .knotgen import FIGURE_EIGHT_SPEC, TREFOIL_SPEC, habiro_from_spec, sum_product_seq
    from .qcore import habiro_eval

    ctx = PrecisionContext(256)
    mp = ctx.mp
    worst = mp.mpf(0)
    for spec in (TREFOIL_SPEC, FIGURE_EIGHT_SPEC):
        f = habiro_from_spec(spec)
        for n in range(1, 101):
            worst = max(worst, abs(sum_product_seq(spec, n, ctx) + 1 - habiro_eval(f, n, ctx)))
    return Outcome(worst < mp.mpf("1e-20"), f"max discrepancy over n <= 100 = {mp.nstr(worst, 3)}")


def _c11() -> Outcome:
    from .knotgen import FIGURE_EIGHT_SPEC, TREFOIL_SPEC, singular_candidates, vol_41

    ctx = PrecisionContext(256)
    mp = ctx.mp
    tre = singular_candidates(TREFOIL_SPEC, ctx=ctx)
    want = [mp.mpc(0), mp.mpc(1), mp.expjpi(mp.mpf(1) / 12)]
    ok3 = all(tre.contains(w, 1e-10) for w in want)
    fig = singular_candidates(FIGURE_EIGHT_SPEC, ctx=ctx)
    v = vol_41(ctx) / (2 * mp.pi)
    mods = fig.moduli()
    ok4 = all(any(abs(m - t) < 1e-10 for m in mods) for t in (mp.exp(-v), mp.exp(v)))
    return Outcome(ok3 and ok4, f"trefoil {'contains' if ok3 else 'misses'} {{0, 1, e^(i pi/12)}}, "
                                f"figure-eight moduli {'contain' if ok4 else 'miss'} e^(+-Vol/2pi)")


def recovery_table(ctx: PrecisionContext | None = None) -> list[tuple]:
    """(|lambda|, alpha, radius error, |lambda| fit error, alpha fit error) for
    a_n = lambda^-n n^alpha (1 + 1/n + 1/n^2), 500 terms."""
    from .resurge import CoeffSequence, FitConfig, asym_fit, radius_estimate

    ctx = ctx or PrecisionContext(256)
    mp = ctx.mp
    rows = []
    for lam in (Fraction(1, 3), Fraction(1), Fraction(2)):
        for alpha in (Fraction(-1, 2), Fraction(0), Fraction(3, 2)):
            lm = mp.mpf(lam.numerator) / lam.denominator
            al = mp.mpf(alpha.numerator) / alpha.denominator
            a = [mp.mpf(0)] + [lm ** -n * mp.mpf(n) ** al * (1 + mp.mpf(1) / n + mp.mpf(1) / n ** 2)
                               for n in range(1, 500)]
            s = CoeffSequence(a)
            rad = radius_estimate(s, FitConfig(), ctx)
            fit = asym_fit(s, 0.0, FitConfig(), ctx)
            rows.append((lam, alpha, abs(rad.radius - float(lam)), abs(fit.abs_lambda - float(lam)),
                         abs(fit.alpha - float(alpha))))
    return rows


def _c12() -> Outcome:
    from .knotgen import apery_term, binomial_term, multisum
    from .resurge import CoeffSequence, gevrey_probe

    binom = all(multisum(binomial_term(), n) == 2 ** n for n in range(31))
    apery_oracle = sum(comb(2, k) ** 2 * comb(2 + k, k) ** 2 for k in range(3))
    apery = multisum(apery_term(), 2) == apery_oracle
    rows = recovery_table()
    worst = max(max(r[2:]) for r in rows)
    recovery = worst < 1e-6
    cases = {
        "n!": ([factorial(n) for n in range(120)], (1, 1)),
        "2^n": ([2 ** n for n in range(120)], (0, 0)),
        "n!/3^n": ([Fraction(factorial(n), 3 ** n) for n in range(120)], (1, 1)),
    }
    gev = {}
    for name, (seq, want) in cases.items():
        rep = gevrey_probe(CoeffSequence(seq))
        gev[name] = (rep.r_est, rep.s_est) == want
    gev_ok = all(gev.values()) and abs(gevrey_probe(CoeffSequence(cases["n!/3^n"][0])).C_est - 3) < 0.1
    ok = binom and apery and recovery and gev_ok
    return Outcome(ok, f"binomial {'ok' if binom else 'FAIL'}, Apery(2) {'ok' if apery else 'FAIL'}, "
                       f"recovery worst error {worst:.1e}, Gevrey {'ok' if gev_ok else gev}")


CRITERIA = [
    Criterion(1, "Vol(4_1) to 25 digits", _c1, 1.0),
    Criterion(2, "exp(-+Vol/2pi) to 20 digits", _c2, 1.0),
    Criterion(3, "radius of L^p(3_1) = pi^2/6", _c3, 300.0),
    Criterion(4, "|lambda| for 4_1 from 500 coefficients", _c4, 600.0),
    Criterion(5, "scan of L^np(3_1): peaks at 0 and 1/24, alpha = 3/2", _c5),
    Criterion(6, "Verlinde sum = residue form, g=2 cubic", _c6, 60.0),
    Criterion(7, "S^3 direct series vs polylog form", _c7, 60.0),
    Criterion(8, "polylog inversion residual", _c8),
    Criterion(9, "trefoil decomposition vs quadrature", _c9),
    Criterion(10, "sum-product sequence + 1 = Habiro evaluation", _c10),
    Criterion(11, "candidate singularity sets", _c11),
    Criterion(12, "property suites", _c12),
]


def run_one(c: Criterion) -> Result:
    start = time.perf_counter()
    try:
        out = c.check()
    except Exception as exc:  # a crash is a failure with its message
        out = Outcome(False, f"error: {type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - start
    passed, detail = out.passed, out.detail
    if c.time_limit is not None and elapsed > c.time_limit:
        passed = False
        detail += f"; exceeded the {c.time_limit:g} s budget"
    return Result(c.number, c.title, passed, detail, elapsed)


def run_all(numbers=None, echo: Callable[[str], None] | None = None) -> list[Result]:
    out = []
    for c in CRITERIA:
        if numbers and c.number not in numbers:
            continue
        r = run_one(c)
        if echo:
            echo(r.line())
        out.append(r)
    return out
