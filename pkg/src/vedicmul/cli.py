"""Command-line interface.

    vedicmul mul A B [--algo ...] [--threshold N] [--radix-in R] [--radix-out R] [--count] [--format text|json]
    vedicmul square A [...]
    vedicmul trace A [--radix-in R] [--format text|json]
    vedicmul count M N --radix R --proc {schoolbook|karatsuba|nikhilam}
    vedicmul bench --sizes 64,128 --trials T --seed S [--algos ...] [--out FILE] [--sweep 8,16,32]

Exit status: 0 on success, 2 for bad arguments or operands, 1 when an internal
invariant fails (for example a product disagreeing with the schoolbook oracle).
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import TextIO

from .errors import AlgorithmError, DomainError, ParseError
from .karatsuba import BaseCase, HybridConfig, karatsuba_mul
from .metering import (Algorithm, Procedure, bench_run, count_digit_procedure, emit_csv,
                       format_sweep, metered_call, metered_square, threshold_sweep)
from .natural import Natural, from_text, to_text
from .nikhilam import nik_mul, nik_square, nik_square_traced
from .schoolbook import school_mul

ALGOS = {
    "schoolbook": Algorithm.SCHOOLBOOK,
    "nikhilam": Algorithm.NIKHILAM,
    "karatsuba": Algorithm.KARATSUBA_PLAIN,
    "hybrid": Algorithm.KARATSUBA_HYBRID,
}
PROCS = {
    "schoolbook": Procedure.SCHOOLBOOK,
    "karatsuba": Procedure.KARATSUBA,
    "nikhilam": Procedure.NIKHILAM_NEAR_BASE,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _radix(text: str) -> int:
    r = int(text)
    if r not in (2, 10, 16):
        raise argparse.ArgumentTypeError("radix must be 2, 10 or 16")
    return r


def _int_list(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("values must be positive integers")
    return values


def _algo_list(text: str) -> list[Algorithm]:
    out = []
    for name in text.split(","):
        name = name.strip()
        if name in ALGOS:
            out.append(ALGOS[name])
        else:
            try:
                out.append(Algorithm(name))
            except ValueError:
                raise argparse.ArgumentTypeError(f"unknown algorithm {name!r}")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vedicmul", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def product_opts(sp, default_algo):
        sp.add_argument("--algo", choices=sorted(ALGOS), default=default_algo)
        sp.add_argument("--threshold", type=int, default=None, help="Karatsuba threshold n0 in bits")
        sp.add_argument("--radix-in", type=_radix, default=10)
        sp.add_argument("--radix-out", type=_radix, default=10)
        sp.add_argument("--count", action="store_true", help="also report radix-2 operation counts")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    mul = sub.add_parser("mul", help="multiply two numbers")
    mul.add_argument("a")
    mul.add_argument("b")
    product_opts(mul, "hybrid")

    sq = sub.add_parser("square", help="square a number")
    sq.add_argument("a")
    product_opts(sq, "nikhilam")

    tr = sub.add_parser("trace", help="show the residue/partial table of a squaring")
    tr.add_argument("a")
    tr.add_argument("--radix-in", type=_radix, default=10)
    tr.add_argument("--format", choices=("text", "json"), default="text")

    ct = sub.add_parser("count", help="count digit operations of a hand procedure")
    ct.add_argument("m")
    ct.add_argument("n")
    ct.add_argument("--radix", type=_radix, default=10)
    ct.add_argument("--proc", choices=sorted(PROCS), required=True)
    ct.add_argument("--format", choices=("text", "json"), default="text")

    bn = sub.add_parser("bench", help="time algorithms on seeded operands, write CSV")
    bn.add_argument("--sizes", type=_int_list, default=[64, 128, 256])
    bn.add_argument("--trials", type=int, default=3)
    bn.add_argument("--seed", type=int, default=0)
    bn.add_argument("--algos", type=_algo_list, default=list(ALGOS.values()))
    bn.add_argument("--threshold", type=int, default=None)
    bn.add_argument("--out", default="-", help="CSV destination, '-' for stdout")
    bn.add_argument("--sweep", type=_int_list, default=None,
                    help="also print median hybrid timings for these thresholds")
    return p


def _config(threshold: int | None, base: BaseCase = BaseCase.NIKHILAM) -> HybridConfig:
    try:
        return HybridConfig(threshold, base) if threshold is not None else HybridConfig(base_case=base)
    except ValueError as exc:
        raise UsageError(str(exc))


def _product(algo: str, a: Natural, b: Natural, threshold: int | None) -> Natural:
    if algo == "schoolbook":
        return school_mul(a, b)
    if algo == "nikhilam":
        return nik_square(a) if a == b else nik_mul(a, b)
    base = BaseCase.NIKHILAM if algo == "hybrid" else BaseCase.SCHOOLBOOK
    return karatsuba_mul(a, b, _config(threshold, base))


def _emit_product(args, out: TextIO, a: Natural, b: Natural, value: Natural, squaring: bool) -> None:
    ops = None
    if args.count:
        if squaring and args.algo == "nikhilam":
            check, ops = metered_square(a)
        else:
            check, ops = metered_call(ALGOS[args.algo], a, b, _config(args.threshold))
        if check != value:
            raise AlgorithmError("metered and unmetered results differ")
    text = to_text(value, args.radix_out)
    if args.format == "json":
        doc = {"result": text, "radix": args.radix_out, "algo": args.algo}
        if ops is not None:
            doc["ops"] = ops.as_dict()
        out.write(json.dumps(doc) + "\n")
    else:
        out.write(text + "\n")
        if ops is not None:
            out.write(ops.summary() + "\n")


def _cmd_mul(args, out):
    a = from_text(args.a, args.radix_in)
    b = from_text(args.b, args.radix_in)
    _emit_product(args, out, a, b, _product(args.algo, a, b, args.threshold), squaring=False)


def _cmd_square(args, out):
    a = from_text(args.a, args.radix_in)
    _emit_product(args, out, a, a, _product(args.algo, a, a, args.threshold), squaring=True)


def _cmd_trace(args, out):
    a = from_text(args.a, args.radix_in)
    _, trace = nik_square_traced(a)
    if args.format == "json":
        out.write(trace.to_json() + "\n")
    else:
        out.write(trace.render_table() + "\n")


def _cmd_count(args, out):
    value, ops = count_digit_procedure(PROCS[args.proc], args.m, args.n, args.radix)
    if args.format == "json":
        out.write(json.dumps({"result": to_text(value, args.radix), "ops": ops.as_dict()}) + "\n")
    else:
        out.write(to_text(value, args.radix) + "\n" + ops.summary() + "\n")


def _cmd_bench(args, out):
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    cfg = _config(args.threshold)
    records = bench_run(args.algos, args.sizes, args.trials, args.seed, cfg)
    if args.out == "-":
        emit_csv(records, out)
    else:
        with open(args.out, "w", newline="") as fh:
            emit_csv(records, fh)
    if args.sweep:
        table = threshold_sweep(args.sizes, args.sweep, args.trials, args.seed)
        target = sys.stderr if args.out == "-" else out
        target.write(format_sweep(table) + "\n")


COMMANDS = {
    "mul": _cmd_mul,
    "square": _cmd_square,
    "trace": _cmd_trace,
    "count": _cmd_count,
    "bench": _cmd_bench,
}


def run(argv: list[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return 2
    except (ParseError, DomainError) as exc:
        err.write(f"vedicmul: error: {exc}\n")
        return 2
    except AlgorithmError as exc:
        err.write(f"vedicmul: internal error: {exc}\n")
        return 1
    except OSError as exc:
        err.write(f"vedicmul: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
