"""Working-precision handling.

Every floating computation in the package runs inside a
:class:`PrecisionContext`, which owns a private mpmath context.  Keeping the
mpmath state per context (instead of mutating ``mpmath.mp``) makes concurrent
use from several threads safe and keeps results reproducible.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from mpmath import MPContext

BITS_ENV = "QRESURGE_BITS"
DEFAULT_BITS = 256


def default_bits() -> int:
    """Default precision, overridable through the ``QRESURGE_BITS`` variable."""
    raw = os.environ.get(BITS_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_BITS
    bits = int(raw)
    if bits < 53:
        raise ValueError(f"{BITS_ENV}={bits} is below the 53-bit floor")
    return bits


@dataclass(frozen=True)
class PrecisionContext:
    """Precision of one computation.

    ``bits`` is the precision results are quoted at; the private mpmath
    context carries ``guard_digits`` extra decimal digits on top of it.
    """

    bits: int = field(default_factory=default_bits)
    guard_digits: int = 10

    def __post_init__(self):
        if self.bits < 53:
            raise ValueError(f"precision must be at least 53 bits, got {self.bits}")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be nonnegative")
        mp = MPContext()
        mp.prec = self.working_bits
        object.__setattr__(self, "_mp", mp)

    @property
    def working_bits(self) -> int:
        return self.bits + math.ceil(self.guard_digits * math.log2(10))

    @property
    def mp(self) -> MPContext:
        return self._mp

    @property
    def eps(self):
        """Relative error budget of a quoted result, 2**-bits."""
        return self._mp.ldexp(self._mp.mpf(1), -self.bits)

    def with_bits(self, bits: int) -> "PrecisionContext":
        return PrecisionContext(bits=bits, guard_digits=self.guard_digits)

    def __reduce__(self):
        return (PrecisionContext, (self.bits, self.guard_digits))


def as_context(ctx: "PrecisionContext | int | None") -> PrecisionContext:
    if ctx is None:
        return PrecisionContext()
    if isinstance(ctx, PrecisionContext):
        return ctx
    return PrecisionContext(bits=int(ctx))
