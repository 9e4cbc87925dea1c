"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_backends.py [--sizes 64,256,1024,4096] [--repeat 5]

Prints median seconds per call and the speed-up for each kernel and size.
"""
import argparse
import random
import statistics
import sys
import time

from vedicmul import _pycore, backend

KERNELS = {
    "school_mul": lambda core, a, b: core.school_mul(a, b),
    "nik_square": lambda core, a, b: core.nik_square(a),
    "nik_mul": lambda core, a, b: core.nik_mul(a, b),
    "hybrid(n0=32)": lambda core, a, b: core.karatsuba(a, b, 32, True),
    "hybrid(n0=1)": lambda core, a, b: core.karatsuba(a, b, 1, True),
}


def median_time(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--sizes", default="64,256,1024,4096")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if not backend.compiled_available():
        print("compiled extension not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    from vedicmul import _core

    rng = random.Random(args.seed)
    print(f"{'kernel':<15}{'bits':>6}{'cython s':>12}{'python s':>12}{'speed-up':>10}")
    for bits in (int(s) for s in args.sizes.split(",")):
        a = (1 << (bits - 1)) | rng.getrandbits(bits - 1)
        b = (1 << (bits - 1)) | rng.getrandbits(bits - 1)
        for name, kernel in KERNELS.items():
            assert kernel(_core, a, b) == kernel(_pycore, a, b)
            fast = median_time(lambda: kernel(_core, a, b), args.repeat)
            slow = median_time(lambda: kernel(_pycore, a, b), args.repeat)
            print(f"{name:<15}{bits:>6}{fast:>12.2e}{slow:>12.2e}{slow / fast:>10.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
