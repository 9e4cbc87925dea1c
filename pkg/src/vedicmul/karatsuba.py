"""Karatsuba recursion that hands small operands to a base-case multiplier.

With ``n`` the larger operand's bit length and ``k = n // 2``::

    C0 = A0*B0,  C1 = A1*B1,  C2 = |A0-A1| * |B0-B1|
    A*B = C0 + (C0 + C1 - sA*sB*C2) * 2**k + C1 * 2**(2k)

where ``sA = sign(A0 - A1)`` and ``sB = sign(B0 - B1)``.  Below the threshold
(and for 1-bit operands, which cannot be split) the configured base case runs.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from . import backend
from .natural import Natural


class BaseCase(str, enum.Enum):
    NIKHILAM = "nikhilam"
    SCHOOLBOOK = "schoolbook"


DEFAULT_THRESHOLD = 32


@dataclass(frozen=True)
class HybridConfig:
    threshold_n0: int = DEFAULT_THRESHOLD
    base_case: BaseCase = BaseCase.NIKHILAM

    def __post_init__(self):
        if not isinstance(self.threshold_n0, int) or self.threshold_n0 < 1:
            raise ValueError(f"threshold_n0 must be an int >= 1, got {self.threshold_n0!r}")
        object.__setattr__(self, "base_case", BaseCase(self.base_case))


def split(a: Natural, k: int) -> tuple[Natural, Natural]:
    """(a mod 2**k, a div 2**k)."""
    if k < 0:
        raise ValueError("split point must be non-negative")
    v = a.value
    return Natural(v & ((1 << k) - 1)), Natural(v >> k)


def karatsuba_mul(a: Natural, b: Natural, cfg: HybridConfig | None = None) -> Natural:
    cfg = cfg or HybridConfig()
    return Natural(backend.karatsuba(a.value, b.value, cfg.threshold_n0,
                                     cfg.base_case is BaseCase.NIKHILAM))
