"""Truncated Habiro-ring elements f(q) = sum_n f_n(q) (q)_n.

An element is described either by a plain generator ``n -> f_n(q)`` or, for
the structured families used throughout the package, by a product form

    f_n(q) (q)_n = m_n(q) * prod_{j=1..n} s_j(q),
    s_j(q) = sign * q^(shift*j) * prod_r (1 - q^(r*j))^power_r,

where ``m_n`` is an optional multiplier.  The product form lets evaluation at
roots of unity and expansion at q = 1 run in linear or quadratic time without
ever expanding (q)_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Optional

from ..precision import PrecisionContext, as_context
from .laurent import LaurentPoly, binomial_row, qpochhammer
from .series import FormalSeries


@dataclass(frozen=True)
class StepFactor:
    """One step s_j of the product form; ``factors`` holds (r, power) pairs."""

    sign: int = 1
    shift: int = 0
    factors: tuple = ((1, 1),)

    def poly(self, j: int) -> LaurentPoly:
        p = LaurentPoly.monomial(self.shift * j, self.sign)
        for r, power in self.factors:
            p = p * LaurentPoly({0: 1, r * j: -1}) ** power
        return p

    @property
    def valuation(self) -> int:
        """Order of vanishing of s_j at q = 1."""
        return sum(power for _, power in self.factors)


@dataclass(frozen=True)
class HabiroElement:
    label: str
    generator: Optional[Callable[[int], LaurentPoly]] = None
    step: Optional[StepFactor] = None
    multiplier: Optional[Callable[[int], LaurentPoly]] = None
    levels: Optional[int] = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if (self.generator is None) == (self.step is None):
            raise ValueError("give exactly one of generator or step")
        if self.step is not None and self.step.valuation < 1:
            raise ValueError("step factor must vanish at q = 1 (total power >= 1)")

    def _check_level(self, n: int):
        if n < 0:
            raise ValueError("level must be nonnegative")
        if self.levels is not None and n >= self.levels:
            raise IndexError(f"{self.label}: no data for level n={n} (have {self.levels} levels)")

    def mult(self, n: int) -> LaurentPoly:
        self._check_level(n)
        return LaurentPoly.const(1) if self.multiplier is None else self.multiplier(n)

    def summand(self, n: int) -> LaurentPoly:
        """The exact level-n contribution f_n(q) (q)_n."""
        self._check_level(n)
        if self.generator is not None:
            return self.generator(n) * qpochhammer(n)
        p = self.mult(n)
        for j in range(1, n + 1):
            p = p * self.step.poly(j)
        return p

    def term(self, n: int) -> LaurentPoly:
        """f_n(q); in product form this is the exact quotient by (q)_n."""
        if n in self._cache:
            return self._cache[n]
        self._check_level(n)
        if self.generator is not None:
            t = self.generator(n)
        else:
            t = self.summand(n).exact_div(qpochhammer(n))
        self._cache[n] = t
        return t

    def truncation(self, N: int) -> LaurentPoly:
        """The exact partial sum over levels n < N."""
        out = LaurentPoly()
        for n in range(N):
            out = out + self.summand(n)
        return out


def from_terms(label: str, fn: Callable[[int], LaurentPoly], levels: int | None = None) -> HabiroElement:
    return HabiroElement(label=label, generator=fn, levels=levels)


# root-of-unity evaluation ---------------------------------------------------

@lru_cache(maxsize=256)
def _root_table(N: int, prec: int):
    from mpmath import MPContext

    mp = MPContext()
    mp.prec = prec
    table = [mp.mpc(1)]
    for k in range(1, N):
        # exact symmetric values keep conjugate pairs exactly conjugate
        table.append(mp.expjpi(mp.mpf(2 * k) / N))
    return tuple(table)


def root_powers(N: int, ctx: PrecisionContext):
    """Table of e^{2 pi i k/N} for k = 0..N-1 at the working precision."""
    if N < 1:
        raise ValueError("N must be at least 1")
    return _root_table(N, ctx.working_bits)


def eval_root(p: LaurentPoly, N: int, ctx: PrecisionContext | int | None = None):
    """Value of p at e^{2 pi i/N}.

    Exponents are first reduced mod N exactly, then the residue polynomial is
    evaluated by Horner's rule.
    """
    ctx = as_context(ctx)
    if N < 1:
        raise ValueError("N must be at least 1")
    mp = ctx.mp
    res = p.residues(N)
    if N == 1:
        return mp.mpc(res[0])
    if N == 2:
        return mp.mpc(res[0] - res[1])
    zeta = root_powers(N, ctx)[1]
    acc = mp.mpc(0)
    for c in reversed(res):
        acc = acc * zeta + c
    return +acc


def _eval_table(p: LaurentPoly, table, N, mp):
    acc = mp.mpc(0)
    for k, c in enumerate(p.residues(N)):
        if c:
            acc += c * table[k]
    return acc


def _habiro_sum(f: HabiroElement, N: int, ctx: PrecisionContext):
    """Return the level sum at e^{2 pi i/N} and the largest term modulus."""
    mp = ctx.mp
    table = root_powers(N, ctx)
    total = mp.mpc(0)
    biggest = mp.mpf(0)
    if f.generator is not None:
        poch = mp.mpc(1)
        for n in range(N):
            term = _eval_table(f.term(n), table, N, mp) * poch
            total += term
            biggest = max(biggest, abs(term))
            poch *= 1 - table[(n + 1) % N]
        return total, biggest
    step = f.step
    prod = mp.mpc(1)
    for n in range(N):
        if n:
            s = table[(step.shift * n) % N] * step.sign
            for r, power in step.factors:
                s *= (1 - table[(r * n) % N]) ** power
            prod *= s
        if prod == 0:
            break
        term = prod if f.multiplier is None else _eval_table(f.mult(n), table, N, mp) * prod
        total += term
        biggest = max(biggest, abs(term))
    return total, biggest


def _lost_bits(total, biggest, mp) -> float:
    if biggest == 0:
        return 0.0
    if total == 0:
        return float("inf")
    return max(0.0, float(mp.log(biggest / abs(total), 2)))


def habiro_eval(f: HabiroElement, N: int, ctx: PrecisionContext | int | None = None):
    """f(e^{2 pi i/N}) as the finite sum over levels n < N.

    The terms can exceed the sum by many orders of magnitude (about 0.47 N
    bits for the knots here).  When the cancellation eats into the guard
    digits the sum is recomputed with that many extra bits, so the result
    carries the full requested precision.
    """
    ctx = as_context(ctx)
    if N < 1:
        raise ValueError("N must be at least 1")
    guard = ctx.working_bits - ctx.bits
    total, biggest = _habiro_sum(f, N, ctx)
    lost = _lost_bits(total, biggest, ctx.mp)
    extra = 0
    attempts = 0
    while lost > guard - 4 and attempts < 3:
        # an exactly vanishing sum shows up as infinite loss; give up after a few doublings
        attempts += 1
        extra = int(lost if lost != float("inf") else 2 * (ctx.bits + extra)) + 32
        hi = PrecisionContext(bits=ctx.bits + extra, guard_digits=ctx.guard_digits)
        total, biggest = _habiro_sum(f, N, hi)
        lost_hi = _lost_bits(total, biggest, hi.mp)
        if lost_hi <= extra + guard - 4:
            break
        lost = lost_hi
    return ctx.mp.mpc(total)


def habiro_np_coeffs(f: HabiroElement, nmax: int, ctx: PrecisionContext | int | None = None) -> list:
    """Coefficients [1, f(e^{2 pi i}), f(e^{2 pi i/2}), ..., f(e^{2 pi i/nmax})]."""
    ctx = as_context(ctx)
    if nmax < 1:
        raise ValueError("nmax must be at least 1")
    return [ctx.mp.mpc(1)] + [habiro_eval(f, N, ctx) for N in range(1, nmax + 1)]


# expansion at q = 1 ---------------------------------------------------------

def mul_trunc(a: list, b: list, K: int) -> list:
    """Product of two coefficient lists truncated after index K."""
    out = [0] * (K + 1)
    nzb = [(j, y) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if not x:
            continue
        lim = K - i
        for j, y in nzb:
            if j > lim:
                break
            out[i + j] += x * y
    return out


@lru_cache(maxsize=8)
def stirling2_table(K: int) -> tuple:
    """Rows S(m, .) of Stirling numbers of the second kind for m <= K."""
    rows = [[1] + [0] * K]
    for m in range(1, K + 1):
        prev = rows[-1]
        row = [0] * (K + 1)
        for i in range(1, m + 1):
            row[i] = i * prev[i] + prev[i - 1]
        rows.append(row)
    return tuple(tuple(r) for r in rows)


def u_to_h(s: list, K: int) -> list[Fraction]:
    """Re-expand sum_i s_i u^i with u = e^h - 1 as a series in h up to h^K."""
    S2 = stirling2_table(K)
    fact = [factorial(i) for i in range(K + 1)]
    weighted = [s[i] * fact[i] for i in range(K + 1)]
    out = []
    for m in range(K + 1):
        row = S2[m]
        b = sum(weighted[i] * row[i] for i in range(m + 1) if row[i])
        out.append(Fraction(b, fact[m]))
    return out


def habiro_u_series(f: HabiroElement, K: int) -> list[int]:
    """Integer coefficients of f(1 + u) modulo u^(K+1)."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    total = [0] * (K + 1)
    if f.generator is not None:
        poch = [1] + [0] * K
        for n in range(K + 1):
            term = f.term(n).at_one_plus_u(K)
            total = [x + y for x, y in zip(total, mul_trunc(term, poch, K))]
            poch = mul_trunc(poch, LaurentPoly({0: 1, n + 1: -1}).at_one_plus_u(K), K)
        return total
    prod = [1] + [0] * K
    for n in range(K + 1):
        if n:
            prod = mul_trunc(prod, f.step.poly(n).at_one_plus_u(K), K)
        if f.multiplier is None:
            contrib = prod
        else:
            contrib = mul_trunc(f.mult(n).at_one_plus_u(K), prod, K)
        for i in range(K + 1):
            if contrib[i]:
                total[i] += contrib[i]
    return total


def habiro_taylor1(f: HabiroElement, K: int) -> FormalSeries:
    """Exact expansion of f(e^h) through h^K (levels n > K cannot contribute)."""
    return FormalSeries(u_to_h(habiro_u_series(f, K), K), var="h")


__all__ = [
    "StepFactor", "HabiroElement", "from_terms", "eval_root", "habiro_eval",
    "habiro_np_coeffs", "habiro_taylor1", "habiro_u_series", "root_powers",
    "mul_trunc", "u_to_h", "binomial_row",
]
