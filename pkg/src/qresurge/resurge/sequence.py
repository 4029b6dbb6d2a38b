"""Coefficient sequences and the configuration shared by the fitting tools."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..precision import PrecisionContext, as_context


@dataclass
class CoeffSequence:
    """Coefficients a_0, a_1, ... with provenance metadata.

    Entries are either all exact (``Fraction``/``int``) or numeric (mpmath or
    Python numbers).
    """

    coeffs: list
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = list(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i]

    @property
    def exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coeffs)

    def numeric(self, ctx: PrecisionContext | int | None = None) -> list:
        ctx = as_context(ctx)
        mp = ctx.mp
        out = []
        for c in self.coeffs:
            if isinstance(c, Fraction):
                out.append(mp.mpc(mp.mpf(c.numerator) / c.denominator))
            else:
                out.append(mp.mpc(c))
        return out

    def conjugate(self) -> "CoeffSequence":
        return CoeffSequence([c.conjugate() for c in self.coeffs], dict(self.meta))


@dataclass(frozen=True)
class FitConfig:
    """Acceleration order and index windows for fits.

    ``window`` and ``validation`` are inclusive index ranges; ``None`` picks
    [nmax/2, 3 nmax/4] and (3 nmax/4, nmax] for a sequence with last index nmax.
    """

    d: int = 10
    window: tuple | None = None
    validation: tuple | None = None

    def resolve(self, nmax: int) -> tuple[tuple[int, int], tuple[int, int]]:
        window = self.window or (nmax // 2, (3 * nmax) // 4)
        validation = self.validation or ((3 * nmax) // 4 + 1, nmax)
        n0, n1 = window
        v0, v1 = validation
        if not (0 <= n0 < n1 <= nmax and 0 <= v0 <= v1 <= nmax):
            raise ValueError(f"windows {window}, {validation} do not fit indices 0..{nmax}")
        if not (n1 < v0 or v1 < n0):
            raise ValueError(f"fit window {window} overlaps validation window {validation}")
        if self.d < 0 or self.d >= n1 - n0:
            raise ValueError(f"order d={self.d} must be smaller than the window length {n1 - n0}")
        return window, validation
