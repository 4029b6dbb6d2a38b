"""The trefoil Kashaev invariant as main term plus a Laplace integral.

With zeta_24 = e^{2 pi i/24} and the odd character chi of conductor 12,

    e^{pi i/(12 n)} Z_n = zeta_24^{3-n} n^{3/2} + 1 + I_n,
    I_n = int_0^inf e^{-n p} (-2 pi i) G(-2 pi i p) dp,
    G(z) = 3 pi / (2 sqrt 2) sum_m chi(m) m (m^2 pi^2/6 - z)^{-5/2}.

The integral is done in double precision with scipy; Z_n itself is exact up
to the working precision.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.integrate import quad

from ..precision import PrecisionContext, as_context
from ..qcore.habiro import habiro_eval
from .knots import kashaev_31


class QuadratureError(RuntimeError):
    pass


def chi12(m: int) -> int:
    r = m % 12
    if r in (1, 11):
        return 1
    if r in (5, 7):
        return -1
    return 0


def _chi_arrays(terms: int):
    m = np.array([k for k in range(1, terms + 1) if chi12(k)], dtype=float)
    signs = np.array([chi12(int(k)) for k in m], dtype=float)
    return m, signs


def G(z, terms: int = 400) -> complex:
    """Truncated character series, evaluated in complex128."""
    m, signs = _chi_arrays(terms)
    base = m * m * math.pi ** 2 / 6 - complex(z)
    return 3 * math.pi / (2 * math.sqrt(2)) * complex(np.sum(signs * m * base ** -2.5))


def laplace_integral(n: int, terms: int = 400) -> complex:
    m, signs = _chi_arrays(terms)
    w = signs * m
    a = m * m * math.pi ** 2 / 6
    pref = 3 * math.pi / (2 * math.sqrt(2))

    def integrand(p):
        g = pref * np.sum(w * (a + 2j * math.pi * p) ** -2.5)
        return math.exp(-n * p) * (-2j * math.pi) * g

    parts = []
    for lo, hi in ((0.0, 1.0), (1.0, np.inf)):
        val = 0j
        for fn, unit in ((lambda p: integrand(p).real, 1), (lambda p: integrand(p).imag, 1j)):
            res, err, info = quad(fn, lo, hi, limit=400, epsabs=1e-15, epsrel=1e-13, full_output=1)[:3]
            if err > 1e-9 * max(abs(res), 1e-300) and err > 1e-14:
                raise QuadratureError(f"quadrature on [{lo}, {hi}] did not converge (estimate {res}, error {err})")
            val += unit * res
        parts.append(val)
    return sum(parts)


def kashaev_31_value(n: int, ctx: PrecisionContext | int | None = None):
    return habiro_eval(kashaev_31(), n, ctx)


def trefoil_decomposition_check(n: int, terms: int = 400, ctx: PrecisionContext | int | None = None) -> float:
    """Relative residual |R_n - I_n| / |I_n| with R_n = e^{pi i/(12n)} Z_n - main - 1."""
    ctx = as_context(ctx)
    if n < 1 or terms < 1:
        raise ValueError("need n >= 1 and terms >= 1")
    mp = ctx.mp
    Z = kashaev_31_value(n, ctx)
    main = mp.expjpi(mp.mpf(3 - n) / 12) * mp.mpf(n) ** mp.mpf(1.5)
    R = mp.expjpi(mp.mpf(1) / (12 * n)) * Z - main - 1
    I = laplace_integral(n, terms)
    R = complex(R)
    return abs(R - I) / abs(I)


__all__ = ["chi12", "G", "laplace_integral", "kashaev_31_value", "trefoil_decomposition_check",
           "QuadratureError"]
