"""Arbitrary-precision naturals and the primitive operations the algorithms consume.

A :class:`Natural` is an immutable non-negative integer.  Values are held in a
Python ``int``, which is always canonical (no leading zero words), so equality of
values and equality of representations coincide.  :meth:`Natural.words` exposes
the least-significant-first word view for callers that want limbs.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ParseError, UnderflowError

RADIXES = (2, 10, 16)
_FORMAT = {2: "b", 10: "d", 16: "x"}


class Ordering(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


class Natural:
    __slots__ = ("_v",)

    def __init__(self, value: int = 0):
        if isinstance(value, Natural):
            value = value._v
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError(f"Natural needs an int, got {type(value).__name__}")
        if value < 0:
            raise ValueError(f"Natural cannot hold negative value {value}")
        object.__setattr__(self, "_v", value)

    def __setattr__(self, name, value):
        raise AttributeError("Natural is immutable")

    @property
    def value(self) -> int:
        return self._v

    def __int__(self) -> int:
        return self._v

    __index__ = __int__

    def bit_length(self) -> int:
        return self._v.bit_length()

    def words(self, width: int = 32) -> tuple[int, ...]:
        """Magnitude as ``width``-bit words, least significant first; zero is ``()``."""
        mask = (1 << width) - 1
        v = self._v
        out = []
        while v:
            out.append(v & mask)
            v >>= width
        return tuple(out)

    @classmethod
    def from_words(cls, words, width: int = 32) -> Natural:
        v = 0
        for w in reversed(tuple(words)):
            if not 0 <= w < (1 << width):
                raise ValueError(f"word {w} does not fit in {width} bits")
            v = (v << width) | w
        return cls(v)

    def __eq__(self, other):
        if isinstance(other, Natural):
            return self._v == other._v
        return NotImplemented

    def __hash__(self):
        return hash(self._v)

    def __lt__(self, other: Natural) -> bool:
        return cmp(self, other) is Ordering.LT

    def __le__(self, other: Natural) -> bool:
        return cmp(self, other) is not Ordering.GT

    def __gt__(self, other: Natural) -> bool:
        return cmp(self, other) is Ordering.GT

    def __ge__(self, other: Natural) -> bool:
        return cmp(self, other) is not Ordering.LT

    def __add__(self, other: Natural) -> Natural:
        return add(self, other)

    def __sub__(self, other: Natural) -> Natural:
        return sub(self, other)

    def __lshift__(self, k: int) -> Natural:
        return shl(self, k)

    def __rshift__(self, k: int) -> Natural:
        return shr(self, k)

    def __bool__(self):
        return self._v != 0

    def __repr__(self):
        return f"Natural({self._v})"

    def __str__(self):
        return str(self._v)


ZERO = Natural(0)
ONE = Natural(1)


@dataclass(frozen=True)
class SignedInt:
    """Sign in {-1, 0, +1} plus a Natural magnitude."""

    sign: int
    magnitude: Natural

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or 1, not {self.sign}")
        if (self.sign == 0) != is_zero(self.magnitude):
            raise ValueError("sign is 0 exactly when the magnitude is 0")

    @classmethod
    def from_int(cls, value: int) -> SignedInt:
        return cls((value > 0) - (value < 0), Natural(abs(value)))

    @classmethod
    def of(cls, n: Natural, negative: bool = False) -> SignedInt:
        if is_zero(n):
            return cls(0, n)
        return cls(-1 if negative else 1, n)

    def __int__(self) -> int:
        return self.sign * self.magnitude.value

    def __neg__(self) -> SignedInt:
        return SignedInt(-self.sign, self.magnitude)

    def __add__(self, other: SignedInt) -> SignedInt:
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        if self.sign == other.sign:
            return SignedInt(self.sign, add(self.magnitude, other.magnitude))
        d = abs_diff(self.magnitude, other.magnitude)
        # sign of the result follows whichever magnitude is larger
        return SignedInt(d.sign * self.sign, d.magnitude)

    def __sub__(self, other: SignedInt) -> SignedInt:
        return self + (-other)


def _check_radix(radix: int) -> None:
    if radix not in RADIXES:
        raise ParseError(f"unsupported radix {radix}; expected one of {RADIXES}")


def from_text(text: str, radix: int = 10) -> Natural:
    """Parse ``text`` as digits in ``radix`` (2, 10 or 16). Leading zeros are fine."""
    _check_radix(radix)
    if not text:
        raise ParseError("empty digit string", 0)
    for pos, ch in enumerate(text):
        try:
            ok = int(ch, radix) >= 0
        except ValueError:
            ok = False
        if not ok:
            raise ParseError(f"invalid digit {ch!r} for radix {radix} at position {pos}", pos)
    return Natural(int(text, radix))


def to_text(n: Natural, radix: int = 10) -> str:
    _check_radix(radix)
    return format(n.value, _FORMAT[radix])


def add(a: Natural, b: Natural) -> Natural:
    return Natural(a.value + b.value)


def sub(a: Natural, b: Natural) -> Natural:
    if a.value < b.value:
        raise UnderflowError(f"cannot subtract {b.value} from {a.value}")
    return Natural(a.value - b.value)


def cmp(a: Natural, b: Natural) -> Ordering:
    x, y = a.value, b.value
    return Ordering((x > y) - (x < y))


def shl(a: Natural, k: int) -> Natural:
    if k < 0:
        raise ValueError("shift count must be non-negative")
    return Natural(a.value << k)


def shr(a: Natural, k: int) -> Natural:
    if k < 0:
        raise ValueError("shift count must be non-negative")
    return Natural(a.value >> k)


def bit(a: Natural, j: int) -> int:
    if j < 0:
        raise ValueError("bit index must be non-negative")
    return (a.value >> j) & 1


def bit_length(a: Natural) -> int:
    return a.value.bit_length()


def is_zero(a: Natural) -> bool:
    return a.value == 0


def abs_diff(a: Natural, b: Natural) -> SignedInt:
    """``a - b`` as a SignedInt: sign(a-b) and |a-b|."""
    x, y = a.value, b.value
    if x >= y:
        return SignedInt(1 if x > y else 0, Natural(x - y))
    return SignedInt(-1, Natural(y - x))


def trailing_zeros(a: Natural) -> int:
    """Number of trailing zero bits; 0 for zero."""
    v = a.value
    return (v & -v).bit_length() - 1 if v else 0
