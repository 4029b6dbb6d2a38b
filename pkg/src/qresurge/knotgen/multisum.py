"""Multisums of balanced hypergeometric terms."""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np
from scipy.optimize import linprog


class UnboundedSumError(ValueError):
    pass


@dataclass(frozen=True)
class BalancedTerm:
    """t_{n,k} = C0^n prod_i C_i^{k_i} prod_j A_j(n,k)!^{eps_j}.

    Each form is ``(coefficients, sign)`` where ``coefficients`` has one
    integer per variable (n, k_1, ..., k_r).
    """

    C0: Fraction
    C: tuple
    forms: tuple

    def __init__(self, C0, C, forms):
        r = len(C)
        cleaned = []
        for coeffs, sign in forms:
            coeffs = tuple(int(a) for a in coeffs)
            if len(coeffs) != r + 1:
                raise ValueError(f"form {coeffs} needs {r + 1} coefficients (n, k_1..k_{r})")
            if sign not in (1, -1):
                raise ValueError("form sign must be +1 or -1")
            cleaned.append((coeffs, int(sign)))
        object.__setattr__(self, "C0", Fraction(C0))
        object.__setattr__(self, "C", tuple(Fraction(c) for c in C))
        object.__setattr__(self, "forms", tuple(cleaned))

    @property
    def rank(self) -> int:
        return len(self.C)

    def value(self, n: int, k) -> Fraction:
        out = self.C0 ** n
        for c, ki in zip(self.C, k):
            out *= c ** ki
        for coeffs, sign in self.forms:
            a = coeffs[0] * n + sum(x * y for x, y in zip(coeffs[1:], k))
            f = math.factorial(a)
            out = out * f if sign > 0 else out / f
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "BalancedTerm":
        return cls(Fraction(str(d["C0"])), [Fraction(str(c)) for c in d["C"]],
                   [(f["A"], f["sign"]) for f in d["forms"]])

    @classmethod
    def load(cls, path) -> "BalancedTerm":
        """Read a JSON file {"C0": .., "C": [..], "forms": [{"A": [..], "sign": +-1}, ..]}."""
        try:
            return cls.from_dict(json.loads(Path(path).read_text()))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"{path}: malformed balanced term ({exc})") from None


def balanced_check(t: BalancedTerm) -> bool:
    """True iff sum_j eps_j A_j is the zero linear form."""
    total = [0] * (t.rank + 1)
    for coeffs, sign in t.forms:
        for i, a in enumerate(coeffs):
            total[i] += sign * a
    return not any(total)


def lattice_bounds(t: BalancedTerm, n: int) -> list[tuple[int, int]]:
    """Integer box containing {k : A_j(n, k) >= 0 for all j}.

    Each coordinate is minimized and maximized with a linear program; an
    unbounded direction raises :class:`UnboundedSumError` naming it.  An
    empty region returns an empty list.
    """
    r = t.rank
    if r == 0:
        return []
    A = np.array([[-a for a in coeffs[1:]] for coeffs, _ in t.forms], dtype=float)
    b = np.array([coeffs[0] * n for coeffs, _ in t.forms], dtype=float)
    bounds = []
    for i in range(r):
        lims = []
        for direction in (1, -1):
            c = np.zeros(r)
            c[i] = direction
            res = linprog(c, A_ub=A, b_ub=b, bounds=[(None, None)] * r, method="highs")
            if res.status == 3:
                sign = "-" if direction > 0 else "+"
                raise UnboundedSumError(f"summation set is unbounded along k_{i + 1} -> {sign}inf (n={n})")
            if res.status == 2:
                return [(0, -1)] * r
            if res.status != 0:
                raise RuntimeError(f"linear program failed: {res.message}")
            lims.append(direction * res.fun)
        lo, hi = lims
        bounds.append((math.ceil(lo - 1e-9), math.floor(hi + 1e-9)))
    return bounds


def multisum(t: BalancedTerm, n: int) -> Fraction:
    """sum of t_{n,k} over the finite lattice set, in lexicographic order of k."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    box = lattice_bounds(t, n)
    total = Fraction(0)
    ranges = [range(lo, hi + 1) for lo, hi in box]
    for k in itertools.product(*ranges):
        ok = True
        for coeffs, _ in t.forms:
            if coeffs[0] * n + sum(x * y for x, y in zip(coeffs[1:], k)) < 0:
                ok = False
                break
        if ok:
            total += t.value(n, k)
    return total


def binomial_term() -> BalancedTerm:
    """C(n, k) = n! / (k! (n-k)!)."""
    return BalancedTerm(1, [1], [((1, 0), 1), ((0, 1), -1), ((1, -1), -1)])


def apery_term() -> BalancedTerm:
    """C(n, k)^2 C(n+k, k)^2 = ((n+k)! / (k!^2 (n-k)!))^2."""
    forms = [((1, 1), 1)] * 2 + [((0, 1), -1)] * 4 + [((1, -1), -1)] * 2
    return BalancedTerm(1, [1], forms)


__all__ = [
    "BalancedTerm", "UnboundedSumError", "balanced_check", "lattice_bounds", "multisum",
    "binomial_term", "apery_term",
]
