"""Exact Laurent polynomials in q with integer coefficients."""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Mapping


class LaurentPoly:
    """Immutable element of Z[q, 1/q].

    Coefficients are stored sparsely as ``{exponent: coefficient}`` with
    zero coefficients removed, so ``min_exp``/``max_exp`` are the true support
    bounds.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                v = int(v)
                if v:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    # constructors -------------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "LaurentPoly":
        return cls({e: c})

    @classmethod
    def from_list(cls, coeffs: Iterable[int], shift: int = 0) -> "LaurentPoly":
        """Dense ascending coefficients starting at ``q**shift``."""
        return cls({shift + i: v for i, v in enumerate(coeffs)})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """Read space separated ``exponent:coefficient`` pairs."""
        c: dict[int, int] = {}
        for tok in text.split():
            try:
                e, v = tok.split(":")
                e, v = int(e), int(v)
            except ValueError:
                raise ValueError(f"malformed Laurent term {tok!r}; expected exponent:coefficient") from None
            c[e] = c.get(e, 0) + v
        return cls(c)

    def format(self) -> str:
        return " ".join(f"{e}:{v}" for e, v in self.items())

    # basic protocol -----------------------------------------------------

    def items(self):
        return sorted(self._c.items())

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    @property
    def min_exp(self) -> int | None:
        return min(self._c) if self._c else None

    @property
    def max_exp(self) -> int | None:
        return max(self._c) if self._c else None

    def is_zero(self) -> bool:
        return not self._c

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self):
        if not self._c:
            return "LaurentPoly(0)"
        terms = []
        for e, v in self.items():
            terms.append(f"{v}" if e == 0 else f"{v}*q^{e}")
        return "LaurentPoly(" + " + ".join(terms) + ")"

    # arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot combine LaurentPoly with {type(x).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: v * other for e, v in self._c.items()})
        other = self._coerce(other)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, int] = {}
        for eb, vb in b.items():
            for ea, va in a.items():
                e = ea + eb
                out[e] = out.get(e, 0) + va * vb
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) == 1:
                (e, v), = self._c.items()
                if v in (1, -1):
                    return LaurentPoly({e * k: v ** (-k)})
            raise ValueError("negative powers exist only for unit monomials")
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``q**k``."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def subs_power(self, r: int) -> "LaurentPoly":
        """Substitute ``q -> q**r`` (r may be negative)."""
        if r == 0:
            return LaurentPoly.const(sum(self._c.values()))
        return LaurentPoly({e * r: v for e, v in self._c.items()})

    def divmod(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Division by a divisor whose leading coefficient is a unit (+-1).

        Works on the polynomial parts after clearing negative exponents, so
        ``self == q * other + r`` with ``deg r < deg other``.
        """
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly(), LaurentPoly()
        lo_d = other.min_exp
        d = {e - lo_d: v for e, v in other._c.items()}
        deg_d = max(d)
        lead = d[deg_d]
        if lead not in (1, -1):
            raise ValueError("divisor must have leading coefficient +-1")
        lo_n = self.min_exp
        rem = {e - lo_n: v for e, v in self._c.items()}
        quo: dict[int, int] = {}
        top = max(rem) if rem else -1
        while rem and top >= deg_d:
            v = rem.pop(top)
            factor = v * lead  # lead is its own inverse
            k = top - deg_d
            quo[k] = factor
            for e, dv in d.items():
                if e == deg_d:
                    continue
                t = e + k
                nv = rem.get(t, 0) - factor * dv
                if nv:
                    rem[t] = nv
                else:
                    rem.pop(t, None)
            top = max(rem) if rem else -1
        shift = lo_n - lo_d
        return (LaurentPoly({e + shift: v for e, v in quo.items()}),
                LaurentPoly({e + lo_n: v for e, v in rem.items()}))

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ValueError("Laurent polynomial division is not exact")
        return q

    def divisible_by(self, other: "LaurentPoly") -> bool:
        return self.divmod(other)[1].is_zero()

    # evaluation ---------------------------------------------------------

    def residues(self, N: int) -> list[int]:
        """Exact coefficient sums over exponent classes mod N."""
        out = [0] * N
        for e, v in self._c.items():
            out[e % N] += v
        return out

    def __call__(self, x):
        """Evaluate at a number by Horner's rule on the polynomial part."""
        if not self._c:
            return 0 * x
        lo, hi = self.min_exp, self.max_exp
        acc = 0 * x
        for e in range(hi, lo - 1, -1):
            acc = acc * x + self._c.get(e, 0)
        if lo:
            acc = acc * x ** lo
        return acc

    def at_one_plus_u(self, K: int) -> list[int]:
        """Coefficients of ``self(1 + u)`` modulo ``u**(K+1)`` (exact)."""
        out = [0] * (K + 1)
        for e, v in self._c.items():
            row = binomial_row(e, K)
            for i, b in enumerate(row):
                if b:
                    out[i] += v * b
        return out


@lru_cache(maxsize=4096)
def binomial_row(e: int, K: int) -> tuple[int, ...]:
    """Generalized binomials C(e, i) for i = 0..K (e any integer)."""
    if e >= 0:
        return tuple(comb(e, i) if i <= e else 0 for i in range(K + 1))
    out = [1]
    c = 1
    for i in range(1, K + 1):
        c = c * (e - i + 1) // i
        out.append(c)
    return tuple(out)


Q = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)


def qpochhammer(n: int, r: int = 1) -> LaurentPoly:
    """The quantum factorial (q^r; q^r)_n = prod_{k=1..n} (1 - q^(k r))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = ONE
    for k in range(1, n + 1):
        out = out * LaurentPoly({0: 1, k * r: -1})
    return out
