"""Pade approximants from truncated series."""

from __future__ import annotations

from fractions import Fraction

from ..precision import PrecisionContext, as_context
from ..qcore.series import FormalSeries


class SingularPadeError(ArithmeticError):
    pass


def _solve_exact(A, b):
    """Gaussian elimination over the rationals; raises on a singular matrix."""
    n = len(A)
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise SingularPadeError("singular system")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] / M[i][i] for i in range(n)]


class PadeApproximant:
    """The [m/n] entry P/Q of a series, with Q(0) = 1.

    ``p`` and ``q`` hold ascending coefficients; calling the object evaluates
    P(z)/Q(z) at the working precision.
    """

    def __init__(self, p, q, var="z", ctx: PrecisionContext | int | None = None):
        self.p = list(p)
        self.q = list(q)
        self.var = var
        self.ctx = as_context(ctx)

    def _num(self, c):
        mp = self.ctx.mp
        if isinstance(c, Fraction):
            return mp.mpf(c.numerator) / c.denominator
        return mp.mpmathify(c)

    def __call__(self, z):
        mp = self.ctx.mp
        z = mp.mpmathify(z)
        num = mp.polyval([self._num(c) for c in reversed(self.p)], z)
        den = mp.polyval([self._num(c) for c in reversed(self.q)], z)
        return num / den

    def poles(self) -> list:
        """Roots of Q, sorted by modulus (hints for singularities of the series)."""
        mp = self.ctx.mp
        q = list(self.q)
        while len(q) > 1 and q[-1] == 0:
            q.pop()
        if len(q) < 2:
            return []
        roots = mp.polyroots([self._num(c) for c in reversed(q)], maxsteps=200, extraprec=self.ctx.working_bits)
        return sorted(roots, key=lambda r: abs(r))


def pade_approximant(s: FormalSeries, m: int, n: int,
                     ctx: PrecisionContext | int | None = None) -> PadeApproximant:
    """[m/n] Pade approximant of ``s`` via the linear system for Q.

    Exact series are solved over the rationals; complex series at the
    working precision.
    """
    ctx = as_context(ctx)
    if m < 0 or n < 0:
        raise ValueError("m and n must be nonnegative")
    if s.order < m + n + 1:
        raise ValueError(f"series order {s.order} is below m + n + 1 = {m + n + 1}")
    c = list(s.coeffs)

    def coef(k):
        return c[k] if k >= 0 else 0

    # sum_{j=0..n} q_j c_{m+i-j} = 0 for i = 1..n, with q_0 = 1
    A = [[coef(m + i - j) for j in range(1, n + 1)] for i in range(1, n + 1)]
    b = [-coef(m + i) for i in range(1, n + 1)]
    try:
        if n == 0:
            qs = []
        elif s.kind == "exact":
            qs = _solve_exact(A, b)
        else:
            mp = ctx.mp
            qs = list(mp.lu_solve(mp.matrix(A), mp.matrix(b)))
    except (SingularPadeError, ZeroDivisionError) as exc:
        raise SingularPadeError(
            f"[{m}/{n}] system is singular; try [{max(m - 1, 0)}/{max(n - 1, 0)}]") from exc
    q = [1] + qs
    p = [sum(q[j] * coef(k - j) for j in range(0, min(k, n) + 1)) for k in range(m + 1)]
    return PadeApproximant(p, q, s.var, ctx)
