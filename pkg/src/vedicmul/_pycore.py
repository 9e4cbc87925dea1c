"""Pure-Python kernels over plain ints.

Used when the compiled ``_core`` extension is unavailable, and always used for
metered runs: every function takes an optional :class:`~vedicmul.counts.Meter`
and tallies one primitive per add/sub/shift invocation (shift distance and
operand width do not matter).
"""
from __future__ import annotations

from .errors import AlgorithmError


def _tz(v: int) -> int:
    return (v & -v).bit_length() - 1


def school_mul(a: int, b: int, meter=None) -> int:
    """Shift-and-add over the bits of the shorter operand."""
    if a.bit_length() < b.bit_length():
        a, b = b, a
    if meter is not None:
        meter.digit_mults += max(a.bit_length(), 1) * max(b.bit_length(), 1)
    result = 0
    for shift, digit in enumerate(reversed(bin(b)[2:])):
        if digit == "1":
            result += a << shift
            if meter is not None:
                meter.adds += 1
                meter.shifts += 1
    return result


def square_residues(a: int, meter=None) -> tuple[list[int], list[bool]]:
    """Forward phase: residues A_1..A_n and, per step i = 2..n, whether bit j = n-i+1 was stripped.

    Returned lists are 1-indexed (index 0 unused).
    """
    n = a.bit_length()
    residues = [0, a]
    stripped = [False, False]
    for i in range(2, n + 1):
        j = n - i + 1
        prev = residues[i - 1]
        if (prev >> j) & 1:
            residues.append(prev - (1 << j))
            stripped.append(True)
            if meter is not None:
                meter.subs += 1
        else:
            residues.append(prev)
            stripped.append(False)
    return residues, stripped


def square_partials(residues: list[int], meter=None) -> list[int]:
    """Reverse phase: partials B_1..B_n (1-indexed) from the residue chain."""
    n = len(residues) - 1
    last = residues[n]
    # A_n < 2, so this is a single 1-bit product
    partials = [0, last & last]
    if meter is not None:
        meter.digit_mults += 1
    for i in range(2, n + 1):
        j = n - i + 1
        if residues[j] != residues[j + 1]:
            partials.append(partials[i - 1] + ((residues[j] + residues[j + 1]) << (n - j)))
            if meter is not None:
                meter.adds += 2
                meter.shifts += 1
        else:
            partials.append(partials[i - 1])
    return partials


def nik_square(a: int, meter=None, strip: bool = True) -> int:
    if a < 2:
        if meter is not None:
            meter.digit_mults += 1
        return a & a
    t = _tz(a) if strip else 0
    if t:
        a >>= t
        if meter is not None:
            meter.shifts += 1
    residues, _ = square_residues(a, meter)
    result = square_partials(residues, meter)[-1]
    if t:
        result <<= 2 * t
        if meter is not None:
            meter.shifts += 1
    return result


def nik_mul(a: int, b: int, meter=None, short_circuit: bool = True) -> int:
    ta = _tz(a) if a else 0
    tb = _tz(b) if b else 0
    if ta:
        a >>= ta
    if tb:
        b >>= tb
    if meter is not None:
        meter.shifts += (ta > 0) + (tb > 0)
    if short_circuit and a == b:
        result = nik_square(a, meter)
    else:
        total = a + b
        diff = a - b if a >= b else b - a
        d1 = nik_square(total, meter)
        d2 = nik_square(diff, meter)
        four_ab = d1 - d2
        if four_ab < 0 or four_ab & 3:
            raise AlgorithmError(f"(a+b)^2 - (a-b)^2 = {four_ab} is not a non-negative multiple of 4")
        result = four_ab >> 2
        if meter is not None:
            meter.adds += 1
            meter.subs += 2
            meter.exact_divisions += 1
    if ta + tb:
        result <<= ta + tb
        if meter is not None:
            meter.shifts += 1
    return result


def karatsuba(a: int, b: int, threshold: int, nikhilam_base: bool, meter=None, depth: int = 0) -> int:
    if meter is not None and depth > meter.max_depth:
        meter.max_depth = depth
    n = max(a.bit_length(), b.bit_length())
    if n < threshold or n < 2:
        return nik_mul(a, b, meter) if nikhilam_base else school_mul(a, b, meter)
    k = n >> 1
    mask = (1 << k) - 1
    a0, a1 = a & mask, a >> k
    b0, b1 = b & mask, b >> k
    sa = (a0 > a1) - (a0 < a1)
    sb = (b0 > b1) - (b0 < b1)
    c0 = karatsuba(a0, b0, threshold, nikhilam_base, meter, depth + 1)
    c1 = karatsuba(a1, b1, threshold, nikhilam_base, meter, depth + 1)
    c2 = karatsuba(abs(a0 - a1), abs(b0 - b1), threshold, nikhilam_base, meter, depth + 1)
    cross = c0 + c1 - sa * sb * c2
    if cross < 0:
        raise AlgorithmError(f"negative Karatsuba cross term {cross}")
    if meter is not None:
        meter.shifts += 2 + 2
        meter.subs += 2
        meter.adds += 3 + (sa * sb < 0)
        meter.subs += sa * sb > 0
    return c0 + (cross << k) + (c1 << (2 * k))
