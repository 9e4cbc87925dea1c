"""Primitive operation tallies."""
from __future__ import annotations

from dataclasses import dataclass, fields

COUNT_FIELDS = ("digit_mults", "adds", "subs", "shifts", "exact_divisions")


@dataclass(frozen=True)
class OpCounts:
    radix: int = 2
    digit_mults: int = 0
    adds: int = 0
    subs: int = 0
    shifts: int = 0
    exact_divisions: int = 0

    def __post_init__(self):
        if self.radix < 2:
            raise ValueError("radix must be at least 2")
        for name in COUNT_FIELDS:
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    def __add__(self, other: OpCounts) -> OpCounts:
        if not isinstance(other, OpCounts):
            return NotImplemented
        if other.radix != self.radix:
            raise ValueError(f"cannot add counts at radix {self.radix} and {other.radix}")
        return OpCounts(self.radix, *(getattr(self, f) + getattr(other, f) for f in COUNT_FIELDS))

    @property
    def linear_ops(self) -> int:
        """adds + subs + shifts."""
        return self.adds + self.subs + self.shifts

    def as_dict(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def summary(self) -> str:
        return (f"mults={self.digit_mults} adds={self.adds} subs={self.subs} "
                f"shifts={self.shifts} divs={self.exact_divisions}")


class Meter:
    """Mutable accumulator threaded through the instrumented algorithm paths.

    Each metered call owns its own Meter, so nothing here is shared between
    threads.  ``max_depth`` records the deepest Karatsuba recursion level seen.
    """

    __slots__ = ("radix", "digit_mults", "adds", "subs", "shifts", "exact_divisions", "max_depth")

    def __init__(self, radix: int = 2):
        self.radix = radix
        self.digit_mults = self.adds = self.subs = self.shifts = self.exact_divisions = 0
        self.max_depth = 0

    def counts(self) -> OpCounts:
        return OpCounts(self.radix, self.digit_mults, self.adds, self.subs,
                        self.shifts, self.exact_divisions)
