"""Polylogarithms, the Rogers dilogarithm, Bernoulli polynomials and zeta.

All functions take a :class:`~qresurge.precision.PrecisionContext` and return
mpmath numbers of that context.  Branches are principal unless a branch offset
is passed explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .precision import PrecisionContext, as_context


class CutError(ValueError):
    """Raised when a function is asked for a value on its branch cut."""


class PrecisionBudgetError(ValueError):
    """Raised when a series would need more terms than allowed."""


# Bernoulli numbers and polynomials -----------------------------------------

@lru_cache(maxsize=None)
def _bernoulli_list(m: int) -> tuple:
    B = [Fraction(1)]
    for n in range(1, m + 1):
        acc = sum(comb(n + 1, j) * B[j] for j in range(n))
        B.append(-acc / (n + 1))
    return tuple(B)


def bernoulli_number(n: int) -> Fraction:
    """B_n with the convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    size = max(16, 1 << (n.bit_length()))
    return _bernoulli_list(size)[n]


def bernoulli_poly(k: int) -> tuple:
    """Ascending exact coefficients of B_k(z) = sum_j C(k, j) B_j z^(k-j)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    coeffs = [Fraction(0)] * (k + 1)
    for j in range(k + 1):
        coeffs[k - j] = comb(k, j) * bernoulli_number(j)
    return tuple(coeffs)


def _poly_eval(coeffs, x, mp):
    acc = mp.mpc(0)
    for c in reversed(coeffs):
        acc = acc * x + mp.mpf(c.numerator) / c.denominator
    return acc


# zeta at real arguments ----------------------------------------------------

def _to_mpf(s, mp):
    if isinstance(s, Fraction):
        return mp.mpf(s.numerator) / s.denominator
    return mp.mpf(s)


def zeta_with_bound(s, ctx: PrecisionContext | int | None = None):
    """Euler-Maclaurin value of zeta(s) for real s > 1, with an error bound.

    The bound is the magnitude of the first omitted correction term, which
    dominates the remainder because the corrections decrease geometrically for
    the chosen cutoff.
    """
    ctx = as_context(ctx)
    mp = ctx.mp
    s = _to_mpf(s, mp)
    if s <= 1:
        raise ValueError("zeta_real needs s > 1")
    N = max(10, ctx.working_bits // 4)
    M = N
    total = mp.fsum(mp.power(n, -s) for n in range(1, N))
    Nf = mp.mpf(N)
    total += mp.power(Nf, 1 - s) / (s - 1) + mp.power(Nf, -s) / 2
    rising = s  # s (s+1) ... (s + 2j - 2)
    last = mp.mpf(0)
    for j in range(1, M + 1):
        B = bernoulli_number(2 * j)
        term = mp.mpf(B.numerator) / B.denominator / mp.factorial(2 * j) * rising * mp.power(Nf, -s - 2 * j + 1)
        total += term
        last = term
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    B = bernoulli_number(2 * M + 2)
    bound = abs(mp.mpf(B.numerator) / B.denominator / mp.factorial(2 * M + 2) * rising * mp.power(Nf, -s - 2 * M - 1))
    return total, max(bound, abs(last) * ctx.eps)


def zeta_real(s, ctx: PrecisionContext | int | None = None):
    """Riemann zeta at a real (typically rational) argument s > 1."""
    return zeta_with_bound(s, ctx)[0]


def _zeta_int(n: int, ctx: PrecisionContext):
    """zeta at an integer, including the trivial values at n <= 0."""
    mp = ctx.mp
    if n == 1:
        raise ValueError("zeta has a pole at 1")
    if n <= 0:
        # zeta(-j) = (-1)^j B_{j+1} / (j+1)
        j = -n
        v = (-1) ** j * bernoulli_number(j + 1) / (j + 1)
        return mp.mpf(v.numerator) / v.denominator
    return _zeta_int_pos(n, ctx.working_bits)


@lru_cache(maxsize=1024)
def _zeta_int_pos(n: int, prec: int):
    ctx = PrecisionContext(bits=max(53, prec), guard_digits=0)
    return zeta_real(n, ctx)


# integer-order polylogarithm -------------------------------------------------

def _li_direct(k: int, z, mp, eps):
    az = abs(z)
    total = mp.mpc(0)
    power = mp.mpc(1)
    n = 0
    while True:
        n += 1
        power *= z
        term = power / mp.power(n, k)
        total += term
        if az ** (n + 1) / (1 - az) < eps * max(abs(total), eps):
            return total


def li_logseries(k: int, z, ctx: PrecisionContext | int | None = None):
    """Li_k(z) from the expansion in mu = log z, valid for |log z| < 2 pi.

    Li_k(e^mu) = sum_{m != k-1} zeta(k-m) mu^m / m!
                 + mu^(k-1)/(k-1)! (H_{k-1} - log(-mu)).
    """
    ctx = as_context(ctx)
    mp = ctx.mp
    if k < 2:
        raise ValueError("log expansion is used for k >= 2")
    mu = mp.log(mp.mpc(z))
    amu = abs(mu)
    if amu >= 2 * mp.pi:
        raise ValueError("log expansion needs |log z| < 2 pi")
    eps = ctx.eps
    total = mp.mpc(0)
    H = mp.fsum(mp.mpf(1) / j for j in range(1, k))
    if mu == 0:
        return mp.mpc(_zeta_int(k, ctx))
    total += mu ** (k - 1) / mp.factorial(k - 1) * (H - mp.log(-mu))
    ratio = amu / (2 * mp.pi)
    m = 0
    power = mp.mpc(1)  # mu^m / m!
    while True:
        if m != k - 1:
            zv = _zeta_int(k - m, ctx)
            if zv:
                total += zv * power
        m += 1
        power = power * mu / m
        # |zeta(-j)| ~ 2 j! / (2 pi)^(j+1), so terms decay like ratio^m
        if m > k + 2 and ratio ** m * 4 < eps * max(abs(total), eps):
            return total


def _log_02pi(z, mp, side=0):
    """log z with argument in [0, 2 pi); ``side`` picks the limit on z > 0."""
    z = mp.mpc(z)
    if z.imag == 0 and z.real > 0:
        return mp.log(z.real) + (2j * mp.pi if side < 0 else 0)
    a = mp.arg(z)
    if a < 0:
        a += 2 * mp.pi
    return mp.log(abs(z)) + 1j * a


def li_int(k: int, z, ctx: PrecisionContext | int | None = None, side: int = 0):
    """Li_k(z) = sum z^n / n^k for integer k >= 1, principal branch.

    Real z > 1 lies on the cut and raises :class:`CutError` unless ``side`` is
    +1 or -1, which returns the limit from above or below.
    """
    ctx = as_context(ctx)
    mp = ctx.mp
    if k < 1:
        raise ValueError("li_int needs k >= 1")
    z = mp.mpc(z)
    if z == 0:
        return mp.mpc(0)
    on_cut = z.imag == 0 and z.real > 1
    if on_cut and side == 0:
        raise CutError(f"Li_{k}({mp.nstr(z.real, 10)}) lies on the branch cut [1, inf)")
    if z == 1:
        if k == 1:
            raise ValueError("Li_1 has a logarithmic singularity at 1")
        return mp.mpc(_zeta_int(k, ctx))
    if k == 1:
        if on_cut:
            return -mp.log(z.real - 1) + (1j * mp.pi if side > 0 else -1j * mp.pi)
        return -mp.log(1 - z)
    az = abs(z)
    if az <= 0.5:
        return _li_direct(k, z, mp, ctx.eps)
    if az <= 1:
        return li_logseries(k, z, ctx)
    # inversion: Li_k(z) + (-1)^k Li_k(1/z) = -(2 pi i)^k / k! B_k(L / (2 pi i))
    L = _log_02pi(z, mp, side=side)
    w = L / (2j * mp.pi)
    rhs = -((2j * mp.pi) ** k) / mp.factorial(k) * _poly_eval(bernoulli_poly(k), w, mp)
    inv = li_int(k, 1 / z, ctx)
    return rhs - (-1) ** k * inv


def inversion_residual(k: int, z, ctx: PrecisionContext | int | None = None):
    """|Li_k(z) + (-1)^k Li_k(1/z) + (2 pi i)^k/k! B_k(L/(2 pi i))| where
    both polylog values come from the log expansion, independent of the
    inversion branch of :func:`li_int`."""
    ctx = as_context(ctx)
    mp = ctx.mp
    z = mp.mpc(z)
    L = _log_02pi(z, mp)
    a = li_logseries(k, z, ctx)
    b = li_logseries(k, 1 / z, ctx)
    rhs = (2j * mp.pi) ** k / mp.factorial(k) * _poly_eval(bernoulli_poly(k), L / (2j * mp.pi), mp)
    return abs(a + (-1) ** k * b + rhs)


# fractional-order polylogarithm -------------------------------------------

def li_frac(alpha, z, ctx: PrecisionContext | int | None = None, delta=0, max_terms: int = 10**6,
            terms: int | None = None):
    """sum_{n>=1} z^n / n^alpha for rational alpha and |z| < 1.

    The sum stops once a geometric bound on the tail drops below the context
    error; ``terms`` forces a fixed number of terms instead (the tail is then
    not controlled).
    """
    ctx = as_context(ctx)
    mp = ctx.mp
    a = _to_mpf(Fraction(alpha) if not hasattr(alpha, "_mpf_") else alpha, mp)
    z = mp.mpc(z)
    az = abs(z)
    if az >= 1 - delta or az >= 1:
        raise ValueError(f"li_frac needs |z| < 1 - delta, got |z| = {mp.nstr(az, 8)}")
    if az == 0:
        return mp.mpc(0)
    eps = ctx.eps
    if terms is None:
        terms = _required_terms(a, az, eps, mp)
        if terms > max_terms:
            raise PrecisionBudgetError(
                f"li_frac at |z|={mp.nstr(az, 8)} needs {terms} terms (budget {max_terms})")
    total = mp.mpc(0)
    power = mp.mpc(1)
    for n in range(1, terms + 1):
        power *= z
        total += power * mp.power(n, -a)
    return total


def _required_terms(a, az, eps, mp):
    """Smallest M with tail bound t_{M+1}/(1 - rho) < eps, rho the term ratio bound."""
    log_az = mp.log(az)
    target = mp.log(eps) + mp.log(1 - az) - 2
    M = 1
    while True:
        rho = az * (mp.mpf(M + 2) / (M + 1)) ** max(-a, 0)
        if rho < 1:
            logt = (M + 1) * log_az - a * mp.log(M + 1)
            if logt - mp.log(1 - rho) < target:
                return M
        M = M * 2 if M < 64 else M + M // 4
        if M > 10**9:
            return M


# Rogers dilogarithm ---------------------------------------------------------

@dataclass(frozen=True)
class BranchedValue:
    """A value of a multivalued function with the branch offsets used.

    ``branch_data`` is (a, b): log z is shifted by 2 pi i a and log(1-z) by
    2 pi i b.  (0, 0) is the principal branch.
    """

    value: object
    branch_data: tuple = (0, 0)

    @property
    def principal(self) -> bool:
        return self.branch_data == (0, 0)


def rogers(z, ctx: PrecisionContext | int | None = None, limit: bool = False,
           branch: tuple = (0, 0)) -> BranchedValue:
    """L(z) = Li_2(z) + 1/2 log z log(1-z) - pi^2/6.

    At z = 0 and z = 1 the expression is defined only as a limit; pass
    ``limit=True`` to get the limits -pi^2/6 and 0.  A non-principal
    ``branch`` (a, b) adds pi i (a log(1-z) - b log z) + 2 pi^2 a b, the
    continuation along a path that first winds b times around 1 and then a
    times around 0.
    """
    ctx = as_context(ctx)
    mp = ctx.mp
    z = mp.mpc(z)
    a, b = branch
    if z == 0 or z == 1:
        if not limit:
            raise ValueError("rogers(z) at z in {0, 1} needs limit=True")
        if branch != (0, 0):
            raise ValueError("limits are provided on the principal branch only")
        val = -mp.pi ** 2 / 6 if z == 0 else mp.mpf(0)
        return BranchedValue(mp.mpc(val), (0, 0))
    side = 0
    if z.imag == 0 and z.real > 1:
        side = 1
    lz = mp.log(z)
    l1z = mp.log(1 - z) if side == 0 else mp.log(z.real - 1) - 1j * mp.pi
    val = li_int(2, z, ctx, side=side) + lz * l1z / 2 - mp.pi ** 2 / 6
    if a or b:
        val += 1j * mp.pi * (a * l1z - b * lz) + 2 * mp.pi ** 2 * a * b
    return BranchedValue(val, (a, b))


__all__ = [
    "CutError", "PrecisionBudgetError", "BranchedValue", "bernoulli_number", "bernoulli_poly",
    "zeta_real", "zeta_with_bound", "li_int", "li_logseries", "inversion_residual", "li_frac",
    "rogers",
]
