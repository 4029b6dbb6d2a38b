"""Truncated power series with exact or high-precision coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

EXACT = "exact"
COMPLEX = "complex"


class FormalSeries:
    """Truncated series ``sum_{k < order} coeffs[k] * var**k``.

    ``kind`` is ``"exact"`` when every coefficient is a ``Fraction`` (or an
    int, which is promoted) and ``"complex"`` when they are mpmath numbers.
    Arithmetic never extends the truncation order: combining two series keeps
    the smaller order.
    """

    __slots__ = ("coeffs", "var", "kind")

    def __init__(self, coeffs: Sequence, var: str = "z", kind: str | None = None):
        coeffs = list(coeffs)
        if kind is None:
            kind = EXACT if all(isinstance(c, (int, Fraction)) for c in coeffs) else COMPLEX
        if kind == EXACT:
            coeffs = [Fraction(c) for c in coeffs]
        elif kind != COMPLEX:
            raise ValueError(f"unknown series kind {kind!r}")
        self.coeffs = tuple(coeffs)
        self.var = var
        self.kind = kind

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return (self.var, self.kind, self.coeffs) == (other.var, other.kind, other.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if self.order > 6 else ""
        return f"FormalSeries([{head}{more}], var={self.var!r}, order={self.order})"

    def truncate(self, order: int) -> "FormalSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return FormalSeries(self.coeffs[:order], self.var, self.kind)

    def _check(self, other: "FormalSeries"):
        if self.var != other.var:
            raise ValueError(f"variable mismatch: {self.var} vs {other.var}")

    def _kind_with(self, other):
        return EXACT if self.kind == other.kind == EXACT else COMPLEX

    def __add__(self, other):
        if not isinstance(other, FormalSeries):
            return self + FormalSeries([other] + [0] * (self.order - 1), self.var)
        self._check(other)
        n = min(self.order, other.order)
        return FormalSeries([self.coeffs[k] + other.coeffs[k] for k in range(n)],
                            self.var, self._kind_with(other))

    __radd__ = __add__

    def __neg__(self):
        return FormalSeries([-c for c in self.coeffs], self.var, self.kind)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FormalSeries):
            return self.scalar(other)
        self._check(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n):
            acc = 0
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    acc += a[i] * b[k - i]
            out.append(acc)
        return FormalSeries(out, self.var, self._kind_with(other))

    __rmul__ = __mul__

    def scalar(self, c) -> "FormalSeries":
        kind = self.kind if isinstance(c, (int, Fraction)) else COMPLEX
        return FormalSeries([c * x for x in self.coeffs], self.var, kind)

    def compose(self, inner: "FormalSeries") -> "FormalSeries":
        """Return ``self(inner)``; the inner series must have no constant term."""
        if inner.order and inner.coeffs[0] != 0:
            raise ValueError("invalid substitution: inner series has a nonzero constant term")
        n = min(self.order, inner.order)
        kind = self._kind_with(inner)
        zero = [0] * n
        acc = FormalSeries(zero, inner.var, kind)
        power = FormalSeries([1] + [0] * (n - 1), inner.var, kind)
        inner = inner.truncate(n)
        for k in range(n):
            c = self.coeffs[k]
            if c:
                acc = acc + power.scalar(c)
            power = power * inner
        return acc

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def log1p_series(order: int, var: str = "z") -> FormalSeries:
    """log(1 + var) truncated to ``order`` terms."""
    return FormalSeries([0] + [Fraction((-1) ** (k + 1), k) for k in range(1, order)], var)


def log1p(s: FormalSeries) -> FormalSeries:
    """log(1 + s) for a series with zero constant term."""
    return log1p_series(s.order, s.var).compose(s)


def borel(s: FormalSeries, var: str = "z") -> FormalSeries:
    """Borel transform: the 1/x^n coefficient a_n becomes a_{n+1}/n! at z^n.

    The constant term a_0 is dropped, so the output is one term shorter.
    """
    if s.order < 1:
        raise ValueError("Borel transform needs a series of order at least 1")
    out = [s.coeffs[n + 1] / factorial(n) for n in range(s.order - 1)]
    return FormalSeries(out, var, s.kind)
