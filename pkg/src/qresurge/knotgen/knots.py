"""Knot and sum-product generators built on Habiro elements."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Sequence

from ..precision import PrecisionContext, as_context
from ..qcore.habiro import HabiroElement, StepFactor, habiro_taylor1, habiro_u_series, root_powers, u_to_h
from ..qcore.laurent import LaurentPoly
from ..qcore.series import FormalSeries, borel


def kashaev_31() -> HabiroElement:
    """Trefoil: f(q) = sum_n (q)_n, so every f_n is 1."""
    return HabiroElement("3_1", step=StepFactor(1, 0, ((1, 1),)))


def kashaev_41() -> HabiroElement:
    """Figure-eight: f(q) = sum_n (-1)^n q^(-n(n+1)/2) (q)_n^2."""
    return HabiroElement("4_1", step=StepFactor(-1, -1, ((1, 2),)))


def frandom_element() -> HabiroElement:
    """f(q) = sum_n q^(2^n) (q)_n, a candidate for a non-resurgent element."""
    return HabiroElement("frandom", step=StepFactor(1, 0, ((1, 1),)),
                         multiplier=lambda n: LaurentPoly.monomial(2 ** n))


# twist knots -----------------------------------------------------------------

@dataclass(frozen=True)
class TwistKnotData:
    p: int
    cyclotomic: tuple

    def __post_init__(self):
        if self.p == 0:
            raise ValueError("twist parameter p must be nonzero")


def load_twist_data(path) -> TwistKnotData:
    """Read a cyclotomic-coefficient file.

    The first line is ``p=<int>``; line n+1 holds C_n(q) as space separated
    ``exponent:coefficient`` pairs.  Trailing blank lines are ignored.
    """
    path = Path(path)
    lines = path.read_text().splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines or not lines[0].strip().startswith("p="):
        raise ValueError(f"{path}:1: expected header line 'p=<integer>'")
    try:
        p = int(lines[0].strip()[2:])
    except ValueError:
        raise ValueError(f"{path}:1: bad twist parameter {lines[0]!r}") from None
    polys = []
    for lineno, text in enumerate(lines[1:], start=2):
        try:
            polys.append(LaurentPoly.parse(text))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: {exc}") from None
    return TwistKnotData(p, tuple(polys))


def twist_knot_element(d: TwistKnotData) -> HabiroElement:
    """Level-n summand C_n(q) (q)_n (q^-1)_n from ingested C_n."""
    data = d.cyclotomic
    return HabiroElement(f"twist(p={d.p})", step=StepFactor(1, 0, ((1, 1), (-1, 1))),
                         multiplier=lambda n: data[n], levels=len(data))


def load_period_points(path) -> list[dict]:
    """Read a JSON list of {re, im, label} points computed elsewhere."""
    raw = json.loads(Path(path).read_text())
    if not isinstance(raw, list):
        raise ValueError(f"{path}: expected a JSON array of points")
    out = []
    for i, item in enumerate(raw):
        try:
            out.append({"re": float(item["re"]), "im": float(item["im"]),
                        "label": str(item.get("label", ""))})
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"{path}: entry {i} needs numeric 're' and 'im'") from None
    return out


# sum-product models -----------------------------------------------------------

@dataclass(frozen=True)
class SumProductSpec:
    """phi(q) = eps q^c prod_r (1 - q^r)^(c_r), F(x) = phi(e^{2 pi i x})."""

    eps: int
    c: int
    cr: tuple  # sorted ((r, c_r), ...)

    def __init__(self, eps: int, c: int, cr: Mapping[int, int] | Sequence):
        items = dict(cr).items() if not isinstance(cr, dict) else cr.items()
        cleaned = tuple(sorted((int(r), int(e)) for r, e in items if e))
        if eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        for r, e in cleaned:
            if r < 1 or e < 0:
                raise ValueError(f"need r >= 1 and c_r >= 0, got r={r}, c_r={e}")
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "c", int(c))
        object.__setattr__(self, "cr", cleaned)

    @property
    def weight(self) -> int:
        return sum(e for _, e in self.cr)

    def phi(self) -> LaurentPoly:
        p = LaurentPoly.monomial(self.c, self.eps)
        for r, e in self.cr:
            p = p * LaurentPoly({0: 1, r: -1}) ** e
        return p

    def F(self, x, ctx: PrecisionContext | int | None = None):
        ctx = as_context(ctx)
        mp = ctx.mp
        return self.phi()(mp.expjpi(2 * mp.mpf(x)))

    @classmethod
    def parse(cls, text: str) -> "SumProductSpec":
        """Parse ``EPS,C,R^P,R^P,...`` such as ``1,0,1^1`` or ``-1,-1,1^2``."""
        parts = [t.strip() for t in text.split(",") if t.strip()]
        if len(parts) < 2:
            raise ValueError(f"malformed sum-product spec {text!r}; expected EPS,C,R^P,...")
        try:
            eps, c = int(parts[0]), int(parts[1])
            cr: dict[int, int] = {}
            for tok in parts[2:]:
                r, e = tok.split("^") if "^" in tok else (tok, "1")
                cr[int(r)] = cr.get(int(r), 0) + int(e)
        except ValueError:
            raise ValueError(f"malformed sum-product spec {text!r}; expected EPS,C,R^P,...") from None
        return cls(eps, c, cr)

    def format(self) -> str:
        return ",".join([str(self.eps), str(self.c)] + [f"{r}^{e}" for r, e in self.cr])


TREFOIL_SPEC = SumProductSpec(1, 0, {1: 1})
FIGURE_EIGHT_SPEC = SumProductSpec(-1, -1, {1: 2})


def habiro_from_spec(s: SumProductSpec, label: str | None = None) -> HabiroElement:
    """Element whose level-n summand is prod_{j<=n} phi(q^j)."""
    if s.weight < 1:
        raise ValueError("sum-product spec needs sum of c_r >= 1 (otherwise F(0) != 0 and the sum diverges)")
    return HabiroElement(label or f"sp:{s.format()}", step=StepFactor(s.eps, s.c, s.cr))


def sum_product_seq(s: SumProductSpec, n: int, ctx: PrecisionContext | int | None = None):
    """a_n = sum_{k=1..n} prod_{j=1..k} F(j/n)."""
    ctx = as_context(ctx)
    if n < 1:
        raise ValueError("n must be at least 1")
    mp = ctx.mp
    table = root_powers(n, ctx)
    phi = s.phi()
    res_exps = sorted(phi.coeffs.items())
    total = mp.mpc(0)
    prod = mp.mpc(1)
    for j in range(1, n + 1):
        val = mp.mpc(0)
        for e, v in res_exps:
            val += v * table[(e * j) % n]
        prod *= val
        if prod == 0:
            break
        total += prod
    return +total


# polynomial models F(x) with F(0) = 0 ------------------------------------------

@dataclass(frozen=True)
class PolynomialSumProduct:
    """Sum-product model with a polynomial F(x) = sum_i coeffs[i] x^i, F(0) = 0."""

    coeffs: tuple
    label: str = "poly"

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coeffs)
        if not c or c[0] != 0:
            raise ValueError("polynomial model needs F(0) = 0")
        object.__setattr__(self, "coeffs", c)

    def F(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def seq(self, n: int) -> Fraction:
        """Exact a_n = sum_{k=1..n} prod_{j<=k} F(j/n)."""
        total = Fraction(0)
        prod = Fraction(1)
        for j in range(1, n + 1):
            prod *= self.F(Fraction(j, n))
            if prod == 0:
                break
            total += prod
        return total


def sigma_pi_series(s, K: int) -> FormalSeries:
    """Order-K truncation of sum_{n>=1} prod_{j<=n} F(j/x) (constant term 0).

    For a trigonometric spec the exact coefficients are returned in the
    variable y = 2 pi i / x, so the 1/x^k coefficient is coeffs[k] (2 pi i)^k.
    For a polynomial model the variable is 1/x itself.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    if isinstance(s, PolynomialSumProduct):
        return _poly_sigma_pi(s, K)
    f = habiro_from_spec(s)
    h = u_to_h(habiro_u_series(f, K), K)
    h[0] -= 1
    return FormalSeries(h, var="y")


def _poly_sigma_pi(s: PolynomialSumProduct, K: int) -> FormalSeries:
    total = [Fraction(0)] * (K + 1)
    prod = [Fraction(1)] + [Fraction(0)] * K
    for j in range(1, K + 1):
        # F(j/x) = sum_i coeffs[i] j^i x^-i
        step = [c * j ** i for i, c in enumerate(s.coeffs)][: K + 1]
        step += [Fraction(0)] * (K + 1 - len(step))
        new = [Fraction(0)] * (K + 1)
        for a, x in enumerate(prod):
            if x:
                for b in range(K + 1 - a):
                    if step[b]:
                        new[a + b] += x * step[b]
        prod = new
        total = [t + p for t, p in zip(total, prod)]
    return FormalSeries(total, var="1/x")


def sigma_pi_numeric(s, K: int, ctx: PrecisionContext | int | None = None) -> list:
    """Complex coefficients c_0..c_K of the 1/x^k expansion."""
    ctx = as_context(ctx)
    mp = ctx.mp
    ser = sigma_pi_series(s, K)
    scale = mp.mpc(1) if ser.var == "1/x" else 2j * mp.pi
    return [mp.mpf(c.numerator) / c.denominator * scale ** k for k, c in enumerate(ser.coeffs)]


__all__ = [
    "kashaev_31", "kashaev_41", "frandom_element", "TwistKnotData", "load_twist_data",
    "twist_knot_element", "load_period_points", "SumProductSpec", "TREFOIL_SPEC",
    "FIGURE_EIGHT_SPEC", "habiro_from_spec", "sum_product_seq", "PolynomialSumProduct",
    "sigma_pi_series", "sigma_pi_numeric", "lp_series",
]


def lp_series(f: HabiroElement, K: int) -> FormalSeries:
    """Borel transform of the expansion of f(e^h) at h = 0, through z^(K-1).

    These K exact coefficients are the "p" sequence of a knot element.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    return borel(habiro_taylor1(f, K))
