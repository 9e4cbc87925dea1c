"""Operation metering, digit-level cost procedures and the benchmark runner.

Accounting rules: one count per primitive invocation at the procedure's
granularity.  A multiply or divide by a power of the radix is one shift no
matter how far; adding two multi-digit values is one add.
"""
from __future__ import annotations

import csv
import enum
import random
import statistics
import time
from dataclasses import dataclass
from typing import Iterable, TextIO

from . import _pycore, backend
from .counts import COUNT_FIELDS, Meter, OpCounts
from .errors import CrossCheckError, ParseError
from .karatsuba import HybridConfig
from .natural import Natural, from_text
from .nikhilam import nearest_base

__all__ = [
    "Algorithm", "BenchRecord", "CSV_HEADER", "Meter", "OpCounts", "Procedure", "bench_run",
    "count_digit_procedure", "emit_csv", "make_operands", "metered_call", "metered_square",
    "read_csv", "threshold_sweep",
]


class Algorithm(str, enum.Enum):
    SCHOOLBOOK = "schoolbook"
    NIKHILAM = "nikhilam"
    KARATSUBA_PLAIN = "karatsuba_plain"
    KARATSUBA_HYBRID = "karatsuba_hybrid"


class Procedure(str, enum.Enum):
    SCHOOLBOOK = "schoolbook"
    KARATSUBA = "karatsuba"
    NIKHILAM_NEAR_BASE = "nikhilam_near_base"


def metered_call(algorithm: Algorithm | str, a: Natural, b: Natural,
                 cfg: HybridConfig | None = None, *,
                 square_short_circuit: bool = True) -> tuple[Natural, OpCounts]:
    """Run ``algorithm`` on the instrumented path and return (product, radix-2 counts).

    ``square_short_circuit=False`` makes the Nikhilam product evaluate both
    squares even when a == b.  The karatsuba_plain/hybrid algorithms pick the
    schoolbook/Nikhilam base case themselves; only ``cfg.threshold_n0`` is used.
    """
    algorithm = Algorithm(algorithm)
    cfg = cfg or HybridConfig()
    meter = Meter(2)
    x, y = a.value, b.value
    if algorithm is Algorithm.SCHOOLBOOK:
        v = _pycore.school_mul(x, y, meter)
    elif algorithm is Algorithm.NIKHILAM:
        v = _pycore.nik_mul(x, y, meter, short_circuit=square_short_circuit)
    else:
        v = _pycore.karatsuba(x, y, cfg.threshold_n0,
                              algorithm is Algorithm.KARATSUBA_HYBRID, meter)
    return Natural(v), meter.counts()


def metered_square(a: Natural, strip: bool = True) -> tuple[Natural, OpCounts]:
    meter = Meter(2)
    v = _pycore.nik_square(a.value, meter, strip=strip)
    return Natural(v), meter.counts()


# ------------------------------------------------------------ digit procedures


def _digits(v: int, radix: int) -> list[int]:
    """Least significant first; zero has the single digit 0."""
    out = []
    while True:
        v, d = divmod(v, radix)
        out.append(d)
        if not v:
            return out


def _school_digits(x: int, y: int, r: int, meter: Meter) -> int:
    xs, ys = _digits(x, r), _digits(y, r)
    if len(xs) < len(ys):
        xs, ys = ys, xs
    result = 0
    for i, dy in enumerate(ys):
        row = 0
        for j, dx in enumerate(xs):
            meter.digit_mults += 1
            row += (dx * dy) * r ** j
        # one shift to place the row, one add to accumulate it
        result += row * r ** i
        meter.shifts += 1
        meter.adds += 1
    return result


def _karatsuba_digits(x: int, y: int, r: int, meter: Meter) -> int:
    if x < r and y < r:
        meter.digit_mults += 1
        return x * y
    n = max(len(_digits(x, r)), len(_digits(y, r)))
    m = n // 2
    x1, x0 = divmod(x, r ** m)
    y1, y0 = divmod(y, r ** m)
    meter.shifts += 2
    high = _karatsuba_digits(x1, y1, r, meter)
    low = _karatsuba_digits(x0, y0, r, meter)
    both = _karatsuba_digits(x1 + x0, y1 + y0, r, meter)
    meter.adds += 2
    middle = both - high - low
    meter.subs += 2
    meter.shifts += 2
    meter.adds += 2
    return high * r ** (2 * m) + middle * r ** m + low


def _near_base_digits(x: int, y: int, r: int, meter: Meter) -> int:
    p = nearest_base(Natural(max(x, y, 1)), r)
    base = r ** p
    a = x - base
    b = y - base
    meter.subs += 2
    if abs(a) < r and abs(b) < r:
        meter.digit_mults += 1
        mag = abs(a) * abs(b)
    else:
        mag = _school_digits(abs(a), abs(b), r, meter)
    product = -mag if (a < 0) != (b < 0) else mag
    if b >= 0:
        meter.adds += 1
    else:
        meter.subs += 1
    cross = x + b
    meter.shifts += 1
    if product >= 0:
        meter.adds += 1
    else:
        meter.subs += 1
    return base * cross + product


_PROCEDURES = {
    Procedure.SCHOOLBOOK: _school_digits,
    Procedure.KARATSUBA: _karatsuba_digits,
    Procedure.NIKHILAM_NEAR_BASE: _near_base_digits,
}


def count_digit_procedure(procedure: Procedure | str, m: str, n: str,
                          radix: int) -> tuple[Natural, OpCounts]:
    """Multiply digit strings ``m`` and ``n`` by hand-style ``procedure``, counting radix-``radix`` primitives.

    schoolbook
        one digit product per digit pair.
    karatsuba
        split at ``floor(digits/2)`` low digits, three recursive products, and
        digit products only at single-digit leaves (sums that grow past one
        digit are split again).
    nikhilam_near_base
        base = nearest radix power to the larger operand; two base
        subtractions, the deficit product (one digit product when both
        deficits are single digits, schoolbook otherwise), the cross
        add/subtract, one base shift and the final add/subtract.
    """
    if isinstance(procedure, str) and procedure == "nikhilam":
        procedure = Procedure.NIKHILAM_NEAR_BASE
    procedure = Procedure(procedure)
    x = from_text(m, radix).value
    y = from_text(n, radix).value
    meter = Meter(radix)
    value = _PROCEDURES[procedure](x, y, radix, meter)
    if value != x * y:
        raise CrossCheckError(f"{procedure.value} digit procedure gave {value} for {m} * {n}")
    return Natural(value), meter.counts()


# --------------------------------------------------------------------- bench


@dataclass(frozen=True)
class BenchRecord:
    algorithm: Algorithm
    bits: int
    trial: int
    elapsed: int  # nanoseconds
    ops: OpCounts

    def __post_init__(self):
        if self.elapsed <= 0:
            raise ValueError("elapsed must be positive")


CSV_HEADER = ("algo", "bits", "trial", "nanos") + COUNT_FIELDS


def make_operands(seed: int, bits: int, trial: int) -> tuple[Natural, Natural]:
    """Two operands of exactly ``bits`` bits, reproducible from (seed, bits, trial)."""
    if bits < 1:
        raise ValueError("bits must be positive")
    rng = random.Random(f"{seed}:{bits}:{trial}")
    top = 1 << (bits - 1)
    return Natural(top | rng.getrandbits(bits - 1)), Natural(top | rng.getrandbits(bits - 1))


def _fast(algorithm: Algorithm, cfg: HybridConfig):
    if algorithm is Algorithm.SCHOOLBOOK:
        return backend.school_mul
    if algorithm is Algorithm.NIKHILAM:
        return backend.nik_mul
    nik = algorithm is Algorithm.KARATSUBA_HYBRID
    return lambda x, y: backend.karatsuba(x, y, cfg.threshold_n0, nik)


def _time_one(fn, x: int, y: int) -> tuple[int, int]:
    t0 = time.perf_counter_ns()
    v = fn(x, y)
    return v, max(time.perf_counter_ns() - t0, 1)


def bench_run(algorithms: Iterable[Algorithm | str], sizes: Iterable[int], trials: int,
              seed: int, cfg: HybridConfig | None = None) -> list[BenchRecord]:
    """Time each (algorithm, size, trial) cell on shared seeded operands.

    Every product is checked against the schoolbook result before any record is
    returned; counts come from a separate metered run so metering never skews
    the timings.  Records are ordered by algorithm (as given), size, trial.
    """
    algos = [Algorithm(a) for a in algorithms]
    sizes = list(sizes)
    cfg = cfg or HybridConfig()
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not sizes or not algos:
        raise ValueError("need at least one algorithm and one size")

    records = []
    for algo in algos:
        fn = _fast(algo, cfg)
        for bits in sizes:
            for trial in range(trials):
                a, b = make_operands(seed, bits, trial)
                expected = backend.school_mul(a.value, b.value)
                got, nanos = _time_one(fn, a.value, b.value)
                metered, ops = metered_call(algo, a, b, cfg)
                if got != expected or metered.value != expected:
                    raise CrossCheckError(
                        f"{algo.value} disagrees with schoolbook at bits={bits} "
                        f"trial={trial} seed={seed}")
                records.append(BenchRecord(algo, bits, trial, nanos, ops))
    return records


def threshold_sweep(sizes: Iterable[int], thresholds: Iterable[int], trials: int, seed: int,
                    base_case: str = "nikhilam") -> dict[int, dict[int, int]]:
    """Median nanoseconds of the hybrid per threshold and size: ``{threshold: {bits: ns}}``."""
    sizes = list(sizes)
    nik = base_case == "nikhilam"
    table: dict[int, dict[int, int]] = {}
    for thr in thresholds:
        HybridConfig(thr)  # validates
        row = {}
        for bits in sizes:
            samples = []
            for trial in range(trials):
                a, b = make_operands(seed, bits, trial)
                got, nanos = _time_one(lambda x, y: backend.karatsuba(x, y, thr, nik), a.value, b.value)
                if got != backend.school_mul(a.value, b.value):
                    raise CrossCheckError(f"hybrid threshold={thr} wrong at bits={bits} trial={trial}")
                samples.append(nanos)
            row[bits] = int(statistics.median(samples))
        table[thr] = row
    return table


def format_sweep(table: dict[int, dict[int, int]]) -> str:
    sizes = sorted({b for row in table.values() for b in row})
    lines = ["threshold " + " ".join(f"{s:>12}" for s in sizes)]
    for thr, row in table.items():
        lines.append(f"{thr:>9} " + " ".join(f"{row.get(s, 0):>12}" for s in sizes))
    return "\n".join(lines)


def emit_csv(records: Iterable[BenchRecord], destination: TextIO) -> None:
    writer = csv.writer(destination, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([r.algorithm.value, r.bits, r.trial, r.elapsed]
                        + [getattr(r.ops, f) for f in COUNT_FIELDS])


def read_csv(source: TextIO) -> list[BenchRecord]:
    reader = csv.reader(source)
    header = next(reader, None)
    if tuple(header or ()) != CSV_HEADER:
        raise ParseError(f"unexpected CSV header {header}")
    out = []
    for row in reader:
        if len(row) != len(CSV_HEADER):
            raise ParseError(f"row has {len(row)} fields, expected {len(CSV_HEADER)}")
        algo, bits, trial, nanos, *counts = row
        out.append(BenchRecord(Algorithm(algo), int(bits), int(trial), int(nanos),
                               OpCounts(2, *map(int, counts))))
    return out

