"""Heuristic singularity candidates of sum-product series.

For each root q* of phi(q) = 1 or phi(q) = 0 the candidate value is

    Lambda = sum_r (c_r / r) (Li_2(q*^r) - pi^2/6) - (c/2) l^2 - nu pi i l,
    l = log q* + 2 pi i k,

where Li_2(x) - pi^2/6 = L(x) - 1/2 log x log(1-x) in terms of the Rogers
dilogarithm L.  k runs over |k| <= branches and nu over integers of the
parity of the sign (odd for eps = -1, even for eps = +1).  Values are closed
under Lambda -> -Lambda and complex conjugation, reduced mod 4 pi^2 and mapped
to exp(Lambda / (2 pi i)).  The recipe reproduces the known sets for the
trefoil and the figure-eight knot but is not derived from first principles.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..precision import PrecisionContext, as_context
from ..qcore.laurent import LaurentPoly
from ..specialfn import li_int, rogers
from .knots import SumProductSpec


class RootFindingError(RuntimeError):
    pass


@dataclass
class CandidateSet:
    roots_phi1: list
    roots_phi0: list
    lambda_values: list
    elambda: list
    rogers_values: list = field(default_factory=list)
    heuristic: bool = True

    def contains(self, point, tol=1e-10) -> bool:
        return any(abs(e - point) < tol for e in self.elambda)

    def moduli(self) -> list:
        return [abs(e) for e in self.elambda]


def _roots(poly: LaurentPoly, ctx: PrecisionContext):
    """Roots of a polynomial (no negative powers) with multiplicity dropped.

    Exact zero roots are split off first.
    """
    mp = ctx.mp
    if poly.is_zero():
        raise RootFindingError("equation is identically satisfied")
    v = poly.min_exp
    out = [mp.mpc(0)] if v > 0 else []
    reduced = poly.shift(-v)
    deg = reduced.max_exp
    if deg == 0:
        return out
    coeffs = [reduced.coeff(e) for e in range(deg, -1, -1)]
    try:
        roots, err = mp.polyroots(coeffs, maxsteps=200, extraprec=2 * ctx.working_bits, error=True)
    except mp.NoConvergence as exc:
        raise RootFindingError(f"polyroots did not converge for coefficients {coeffs}: {exc}") from None
    tol = mp.mpf(2) ** (-ctx.bits // 2)
    for r in roots:
        r = mp.mpc(r)
        residual = abs(mp.polyval(coeffs, r))
        scale = mp.fsum(abs(c) * abs(r) ** i for i, c in enumerate(reversed(coeffs)))
        if residual > tol * max(scale, 1):
            raise RootFindingError(f"root {mp.nstr(r, 15)} has residual {mp.nstr(residual, 5)}")
        if all(abs(r - s) > tol for s in out):
            out.append(r)
    return out


def phi_equations(s: SumProductSpec) -> tuple[LaurentPoly, LaurentPoly]:
    """Polynomials whose roots solve phi = 1 and phi = 0 (q^c cleared)."""
    body = LaurentPoly.const(s.eps)
    for r, e in s.cr:
        body = body * LaurentPoly({0: 1, r: -1}) ** e
    if s.c >= 0:
        eq1 = body.shift(s.c) - 1
    else:
        eq1 = body - LaurentPoly.monomial(-s.c)
    eq0 = body
    return eq1, eq0


def _dilog_part(x, ctx: PrecisionContext):
    """Li_2(x) - pi^2/6, with the limit from above on the cut x > 1."""
    mp = ctx.mp
    x = mp.mpc(x)
    if x == 0:
        return -mp.pi ** 2 / 6
    side = 1 if (x.imag == 0 and x.real > 1) else 0
    return li_int(2, x, ctx, side=side) - mp.pi ** 2 / 6


def _reduce(lam, mp):
    period = 4 * mp.pi ** 2
    re = lam.real - period * mp.floor(lam.real / period + mp.mpf(1) / 2)
    if re <= -period / 2:
        re += period
    return mp.mpc(re, lam.imag)


def singular_candidates(s: SumProductSpec, branches: int = 2,
                        ctx: PrecisionContext | int | None = None) -> CandidateSet:
    ctx = as_context(ctx)
    mp = ctx.mp
    if branches < 0:
        raise ValueError("branches must be nonnegative")
    eq1, eq0 = phi_equations(s)
    roots1 = _roots(eq1, ctx)
    roots0 = []
    for r, _ in s.cr:
        for m in range(r):
            z = mp.expjpi(mp.mpf(2 * m) / r) if m else mp.mpc(1)
            if all(abs(z - w) > 1e-30 for w in roots0):
                roots0.append(z)
    if s.c > 0:
        roots0.append(mp.mpc(0))

    parity = 1 if s.eps == -1 else 0
    nus = [nu for nu in range(-(2 * branches + 1), 2 * branches + 2) if nu % 2 == parity]

    raw = []
    rogers_vals = []
    for q in roots1 + roots0:
        if q == 0:
            # logarithms diverge unless every l-dependent term drops out
            if s.c == 0 and parity == 0:
                raw.append(sum((mp.mpf(e) / r) * (-mp.pi ** 2 / 6) for r, e in s.cr))
            continue
        base = mp.mpc(0)
        for r, e in s.cr:
            x = q ** r
            if abs(x - 1) < mp.mpf(2) ** (-ctx.bits // 2):
                x = mp.mpc(1)
            base += (mp.mpf(e) / r) * _dilog_part(x, ctx)
            if x != 1:
                rogers_vals.append(rogers(x, ctx).value)
        lq = mp.log(q)
        for k in range(-branches, branches + 1):
            ell = lq + 2j * mp.pi * k
            for nu in nus:
                raw.append(base - mp.mpf(s.c) / 2 * ell ** 2 - nu * 1j * mp.pi * ell)

    lambdas = []
    for lam in raw:
        for v in (lam, -lam, mp.conj(lam), -mp.conj(lam)):
            v = _reduce(mp.mpc(v), mp)
            if all(abs(v - w) > 1e-25 for w in lambdas):
                lambdas.append(v)
    elambda = [mp.mpc(0), mp.mpc(1)]
    for lam in lambdas:
        e = mp.exp(lam / (2j * mp.pi))
        if all(abs(e - w) > 1e-25 for w in elambda):
            elambda.append(e)
    return CandidateSet(roots1, roots0, lambdas, elambda, rogers_vals)


def vol_41(ctx: PrecisionContext | int | None = None):
    """-i Li_2(e^{2 pi i/6}) + i Li_2(e^{-2 pi i/6})."""
    ctx = as_context(ctx)
    mp = ctx.mp
    w = mp.expjpi(mp.mpf(1) / 3)
    v = -1j * li_int(2, w, ctx) + 1j * li_int(2, mp.conj(w), ctx)
    return v.real


__all__ = ["CandidateSet", "RootFindingError", "singular_candidates", "phi_equations", "vol_41"]
