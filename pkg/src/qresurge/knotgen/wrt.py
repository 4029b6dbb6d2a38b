"""WRT invariants of S^3 and of S^1 x Sigma_g."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from ..precision import PrecisionContext, as_context
from ..qcore.series import FormalSeries
from ..specialfn import bernoulli_number, li_frac


def wrt_s3(n: int, ctx: PrecisionContext | int | None = None):
    """Z_{S^3, n} = sqrt(2/(n+2)) sin(pi/(n+2))."""
    ctx = as_context(ctx)
    if n < 0:
        raise ValueError("level n must be nonnegative")
    mp = ctx.mp
    N = mp.mpf(n + 2)
    return mp.sqrt(2 / N) * mp.sin(mp.pi / N)


def s3_series_direct(z, nmax: int, ctx: PrecisionContext | int | None = None):
    """sum_{n=0..nmax} Z_{S^3,n} z^n."""
    ctx = as_context(ctx)
    mp = ctx.mp
    z = mp.mpc(z)
    return mp.fsum(wrt_s3(n, ctx) * z ** n for n in range(nmax + 1))


def _s3_weights(K: int, mp):
    return [(-1) ** k * mp.pi ** (2 * k + 1) / mp.factorial(2 * k + 1) for k in range(K + 2)]


def lnp_s3_polylog(z, K: int, ctx: PrecisionContext | int | None = None):
    """The S^3 series through fractional polylogarithms.

    Expanding sin in Z_{S^3,n} and using sum_{n>=0} (n+2)^-s z^n =
    (Li_s(z) - z)/z^2 gives

        (sqrt 2 / z^2) sum_{k=0..K} (-1)^k pi^(2k+1)/(2k+1)! (Li_{2k+3/2}(z) - z).

    Returns ``(value, tail_bound)``.  Since |Li_s(z) - z| <= |z|^2 2^-s / (1 - |z|),
    the first omitted term is at most sqrt2 |w_{K+1}| 2^-(2K+7/2) / (1 - |z|),
    and the weights w_k decay factorially, so this bounds the whole tail up to
    a factor close to 1.
    """
    ctx = as_context(ctx)
    mp = ctx.mp
    z = mp.mpc(z)
    if z == 0:
        raise ValueError("z = 0 is a removable point of this formula; use the direct series")
    if abs(z) >= 1:
        raise ValueError("the polylogarithm form needs |z| < 1")
    if K < 1:
        raise ValueError("K must be at least 1")
    w = _s3_weights(K, mp)
    total = mp.mpc(0)
    for k in range(K + 1):
        s = Fraction(4 * k + 3, 2)
        total += w[k] * (li_frac(s, z, ctx) - z)
    value = mp.sqrt(2) / z ** 2 * total
    s_next = mp.mpf(2 * K + 2) + mp.mpf(3) / 2
    tail = mp.sqrt(2) * abs(w[K + 1]) * mp.power(2, -s_next) / (1 - abs(z))
    return value, tail


def lnp_s3_polylog_zeta_form(z, K: int, ctx: PrecisionContext | int | None = None):
    """Same sum with zeta(2k+3/2) subtracted instead of z.

    Kept only to show that this variant does not reproduce the direct series.
    """
    from ..specialfn import zeta_real

    ctx = as_context(ctx)
    mp = ctx.mp
    z = mp.mpc(z)
    w = _s3_weights(K, mp)
    total = mp.mpc(0)
    for k in range(K + 1):
        s = Fraction(4 * k + 3, 2)
        total += w[k] * (li_frac(s, z, ctx) - zeta_real(s, ctx))
    return mp.sqrt(2) / z ** 2 * total


# Verlinde numbers -----------------------------------------------------------

def verlinde_denominator_bound(g: int) -> int:
    return factorial(3 * g) * 6 ** (3 * g)


def verlinde_sum(g: int, n: int) -> Fraction:
    """sum_{j=1..n+1} ((n+2) / (2 sin^2(pi j/(n+2))))^(g-1), exactly.

    g = 0 and g = 1 are summed in closed form.  For g >= 2 the sum is
    evaluated with enough precision that rounding to the nearest fraction
    with denominator at most (3g)! 6^(3g) is certified: the numerical error
    is kept below 1/(4 D^2), less than half the gap between such fractions.
    """
    if g < 0 or n < 0:
        raise ValueError("need g >= 0 and n >= 0")
    if g == 0:
        return Fraction(1)
    if g == 1:
        return Fraction(n + 1)
    D = verlinde_denominator_bound(g)
    N = n + 2
    # crude magnitude bound: each term <= (N/(2 sin^2(pi/N)))^(g-1) <= N^(3(g-1))
    mag_bits = (3 * (g - 1)) * N.bit_length() + N.bit_length() + 4
    bits = mag_bits + 2 * D.bit_length() + 64
    ctx = PrecisionContext(bits=bits, guard_digits=5)
    mp = ctx.mp
    total = mp.fsum((N / (2 * mp.sin(mp.pi * j / N) ** 2)) ** (g - 1) for j in range(1, N))
    scale = 2 ** (2 * D.bit_length() + 8)
    approx = Fraction(int(mp.floor(total * scale)), scale)
    val = approx.limit_denominator(D)
    err = abs(mp.mpf(val.numerator) / val.denominator - total)
    if err > mp.mpf(1) / (4 * D * D):
        raise ArithmeticError(f"verlinde_sum(g={g}, n={n}): reconstruction not certified (err {mp.nstr(err, 5)})")
    return val


def _sin_over_x(order: int) -> FormalSeries:
    c = [Fraction(0)] * order
    for k in range(0, (order + 1) // 2):
        c[2 * k] = Fraction((-1) ** k, factorial(2 * k + 1))
    return FormalSeries(c, "x")


def _inverse(s: FormalSeries) -> FormalSeries:
    a = s.coeffs
    if a[0] == 0:
        raise ZeroDivisionError("series has no inverse")
    out = [Fraction(1) / a[0]]
    for k in range(1, s.order):
        out.append(-sum(a[i] * out[k - i] for i in range(1, k + 1)) / a[0])
    return FormalSeries(out, s.var)


def _xcot(N: int, order: int) -> FormalSeries:
    """N x cot(N x) = sum_k (-1)^k 4^k B_{2k} (N x)^{2k} / (2k)!."""
    c = [Fraction(0)] * order
    for k in range(0, (order + 1) // 2):
        c[2 * k] = (-1) ** k * 4 ** k * bernoulli_number(2 * k) * Fraction(N ** (2 * k), factorial(2 * k))
    return FormalSeries(c, "x")


def verlinde_residue(g: int, n: int) -> Fraction:
    """-(2n+4)^(g-1) Res_{x=0} (n+2) cot((n+2)x) / (2 sin x)^(2g-2).

    The residue is the x^(2g-2) coefficient of
    (N x cot N x) (x / sin x)^(2g-2) / 2^(2g-2) with N = n+2.
    """
    if g < 2:
        raise ValueError("the residue formula needs g >= 2")
    if n < 0:
        raise ValueError("n must be nonnegative")
    N = n + 2
    order = 2 * g - 1
    inv = _inverse(_sin_over_x(order))
    power = FormalSeries([1] + [0] * (order - 1), "x")
    for _ in range(2 * g - 2):
        power = power * inv
    prod = _xcot(N, order) * power
    res = prod.coeffs[2 * g - 2] / 2 ** (2 * g - 2)
    return -Fraction(2 * n + 4) ** (g - 1) * res


def verlinde_poly_g2(n) -> Fraction:
    """n^3/6 + n^2 + 11n/6 + 1."""
    n = Fraction(n)
    return n ** 3 / 6 + n ** 2 + Fraction(11, 6) * n + 1


__all__ = [
    "wrt_s3", "s3_series_direct", "lnp_s3_polylog", "lnp_s3_polylog_zeta_form",
    "verlinde_sum", "verlinde_residue", "verlinde_poly_g2",
]
