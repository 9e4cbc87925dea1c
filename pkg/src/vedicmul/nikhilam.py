"""Nikhilam squaring, difference-of-squares multiplication and near-base products.

Squaring runs in two phases over an n-bit input ``A``:

* forward: ``A_1 = A``; for ``i = 2..n`` with ``j = n - i + 1``, strip bit ``j``
  (``A_i = A_{i-1} - 2**j`` when that bit is set, else ``A_i = A_{i-1}``);
* reverse: ``B_1 = A_n * A_n`` (one 1-bit product); for ``i = 2..n``,
  ``B_i = B_{i-1} + (A_j + A_{j+1}) * 2**(n-j)`` whenever ``A_j != A_{j+1}``.

``B_n`` is the square.  Every ``B_i`` equals ``A_{n-i+1}**2``, i.e. each column
of the trace table holds the square of its own residue.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from . import _pycore, backend
from .errors import AlgorithmError, DomainError
from .natural import Natural, SignedInt, abs_diff, shl, to_text
from .schoolbook import school_mul


def nik_square(a: Natural) -> Natural:
    return Natural(backend.nik_square(a.value))


def nik_mul(a: Natural, b: Natural) -> Natural:
    """``((a+b)**2 - |a-b|**2) / 4`` with both squares done by :func:`nik_square`.

    Raises AlgorithmError if the quarter is not exact, which would be a bug.
    """
    return Natural(backend.nik_mul(a.value, b.value))


@dataclass(frozen=True)
class TraceStep:
    i: int
    j: int
    bit_set: bool
    residue: Natural  # A_i
    partial: Natural  # B_i


@dataclass(frozen=True)
class SquaringTrace:
    input: Natural
    n: int
    steps: tuple[TraceStep, ...]
    base_residue: Natural  # A_n
    base_partial: Natural  # B_1
    result: Natural  # B_n

    @property
    def residues(self) -> list[Natural]:
        """A_1 .. A_n."""
        return [self.input] + [s.residue for s in self.steps]

    @property
    def partials(self) -> list[Natural]:
        """B_1 .. B_n."""
        return [self.base_partial] + [s.partial for s in self.steps]

    def columns(self) -> list[tuple[Natural, Natural]]:
        """(A_c, B_{n-c+1}) for c = 1..n: each residue with the partial written under it."""
        res, par = self.residues, self.partials
        return [(res[c], par[len(par) - 1 - c]) for c in range(len(res))]

    def to_dict(self) -> dict:
        return {
            "input": to_text(self.input, 2),
            "bit_length": self.n,
            "steps": [
                {"i": s.i, "j": s.j, "bit_set": s.bit_set,
                 "residue": to_text(s.residue, 2), "partial": to_text(s.partial, 2)}
                for s in self.steps
            ],
            "result": to_text(self.result, 2),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, doc: dict) -> SquaringTrace:
        value = Natural(int(doc["input"], 2))
        steps = tuple(
            TraceStep(s["i"], s["j"], bool(s["bit_set"]),
                      Natural(int(s["residue"], 2)), Natural(int(s["partial"], 2)))
            for s in doc["steps"]
        )
        base = steps[-1].residue if steps else value
        return cls(value, int(doc["bit_length"]), steps, base,
                   Natural(base.value & base.value), Natural(int(doc["result"], 2)))

    def render_table(self) -> str:
        return render_trace_table(self)


def nik_square_traced(a: Natural) -> tuple[Natural, SquaringTrace]:
    """Square ``a`` and record every residue and partial.

    Runs the recurrence on ``a`` exactly as given; unlike :func:`nik_square`
    it does not factor out trailing zero bits, so the columns line up with the
    input's own bits.
    """
    v = a.value
    n = v.bit_length()
    if n <= 1:
        return a, SquaringTrace(a, n, (), a, a, a)
    residues, stripped = _pycore.square_residues(v)
    partials = _pycore.square_partials(residues)
    steps = tuple(
        TraceStep(i, n - i + 1, stripped[i], Natural(residues[i]), Natural(partials[i]))
        for i in range(2, n + 1)
    )
    result = Natural(partials[n])
    return result, SquaringTrace(a, n, steps, Natural(residues[n]), Natural(partials[1]), result)


def render_trace_table(trace: SquaringTrace) -> str:
    """Aligned text table laid out like the worked squaring tables.

    Column c holds residue A_c (written with n-c+1 digits, so leading zeros show
    where a bit was not stripped) and, lower down, the partial computed in that
    column.  The last row is the result.
    """
    n = trace.n
    if n == 0:
        return "Result  B=0"
    res = trace.residues
    par = trace.partials
    headers = [""] + ["Binary Digits", "Base Difference"] + ["Next Difference"] * (n - 2)
    headers = headers[: n + 1]
    width_of = [n - c for c in range(n)]  # A_{c+1} is written with n-c digits
    rows = []
    a_cells = [f"A_{c + 1}={format(res[c].value, f'0{width_of[c]}b')}" for c in range(n)]
    rows.append(["Multiplicand"] + a_cells)
    rows.append(["Multiplier"] + a_cells)
    for k in range(1, n):
        col = n - k  # B_k sits under A_{n-k+1}
        label = f"B_1 = A_{n}*A_{n}" if k == 1 else f"B_{k}"
        row = [label] + [""] * n
        row[col + 1] = f"B_{k}={to_text(par[k - 1], 2)}"
        rows.append(row)
    last = ["Result"] + [""] * n
    last[1] = f"B_{n}={to_text(par[n - 1], 2)}"
    rows.append(last)

    table = [headers] + rows
    widths = [max(len(r[c]) for r in table) for c in range(n + 1)]
    sep = "+" + "+".join("-" * (w + 2) for w in widths) + "+"
    lines = [sep]
    for r_i, row in enumerate(table):
        cells = []
        for c, cell in enumerate(row):
            cells.append(cell.ljust(widths[c]) if c == 0 or r_i == 0 else cell.rjust(widths[c]))
        lines.append("| " + " | ".join(cells) + " |")
        if r_i == 0:
            lines.append(sep.replace("-", "="))
    lines.append(sep)
    return "\n".join(lines)


# ---------------------------------------------------------------- near-base


def nearest_base(m: Natural, radix: int) -> int:
    """Exponent p in {d-1, d} minimising |m - radix**p|, d = digit count of m; ties go low."""
    if radix < 2:
        raise DomainError(f"radix must be at least 2, got {radix}")
    v = m.value
    if v == 0:
        raise DomainError("nearest base of zero is undefined")
    d = 0
    power = 1
    while power <= v:
        power *= radix
        d += 1
    low, high = power // radix, power  # radix**(d-1), radix**d
    return d - 1 if v - low <= high - v else d


@dataclass(frozen=True)
class NearBaseSteps:
    base: Natural
    deficit_m: SignedInt  # m - x
    deficit_n: SignedInt  # n - x
    cross: SignedInt  # m + (n - x)
    deficit_product: SignedInt
    result: Natural


def _times(x: Natural, s: SignedInt) -> SignedInt:
    v = x.value
    if v & (v - 1) == 0:
        mag = shl(s.magnitude, v.bit_length() - 1)
    else:
        mag = school_mul(x, s.magnitude)
    return SignedInt.of(mag, s.sign < 0)


def near_base_steps(m: Natural, n: Natural, x: Natural) -> NearBaseSteps:
    """Near-base product ``m*n = x*(m + b) + a*b`` with signed deficits a = m-x, b = n-x."""
    if x.value == 0:
        raise DomainError("base must be positive")
    a = abs_diff(m, x)
    b = abs_diff(n, x)
    cross = SignedInt.of(m) + b
    ab = SignedInt.of(school_mul(a.magnitude, b.magnitude), a.sign * b.sign < 0)
    total = _times(x, cross) + ab
    if total.sign < 0:
        raise AlgorithmError(f"near-base product came out negative for {m}, {n}, {x}")
    return NearBaseSteps(x, a, b, cross, ab, total.magnitude)


def near_base_mul(m: Natural, n: Natural, x: Natural) -> Natural:
    return near_base_steps(m, n, x).result


__all__ = [
    "NearBaseSteps", "SquaringTrace", "TraceStep", "near_base_mul", "near_base_steps",
    "nearest_base", "nik_mul", "nik_square", "nik_square_traced", "render_trace_table",
]
