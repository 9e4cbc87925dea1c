import io
import math
import random

import pytest

from vedicmul import CrossCheckError, HybridConfig, Natural, ParseError, from_text, school_mul
from vedicmul import backend
from vedicmul.counts import OpCounts
from vedicmul.metering import (CSV_HEADER, Algorithm, BenchRecord, Procedure, bench_run,
                               count_digit_procedure, emit_csv, make_operands, metered_call,
                               metered_square, read_csv, threshold_sweep)

ALL = list(Algorithm)


def test_opcounts_addition_and_validation():
    a = OpCounts(2, 1, 2, 3, 4, 5)
    assert a + a == OpCounts(2, 2, 4, 6, 8, 10)
    assert a.linear_ops == 9
    with pytest.raises(ValueError):
        OpCounts(2, digit_mults=-1)
    with pytest.raises(ValueError):
        a + OpCounts(10)


@pytest.mark.parametrize("algo", ALL)
def test_metering_is_transparent(rng, algo):
    for _ in range(60):
        a = Natural(rng.getrandbits(rng.randint(0, 300)))
        b = Natural(rng.getrandbits(rng.randint(0, 300)))
        v, ops = metered_call(algo, a, b, HybridConfig(8))
        assert v == school_mul(a, b)
        assert metered_call(algo, a, b, HybridConfig(8)) == (v, ops)


def test_nikhilam_counts_two_bit_products_and_one_division(rng):
    for n in (1, 2, 7, 64, 500):
        a = Natural((1 << (n - 1)) | rng.getrandbits(n - 1))
        v, ops = metered_call(Algorithm.NIKHILAM, a, a, square_short_circuit=False)
        assert v == school_mul(a, a)
        assert ops.digit_mults == 2
        assert ops.exact_divisions == 1


def test_nikhilam_distinct_operands_two_products(rng):
    for _ in range(50):
        a, b = Natural(rng.getrandbits(100)), Natural(rng.getrandbits(100))
        if a == b:
            continue
        _, ops = metered_call(Algorithm.NIKHILAM, a, b)
        assert (ops.digit_mults, ops.exact_divisions) == (2, 1)


def test_square_uses_one_bit_product(rng):
    for n in (1, 2, 3, 64, 1000):
        a = Natural(rng.getrandbits(n))
        assert metered_square(a)[1].digit_mults == 1


def test_square_ops_linear_bound(rng):
    # forward subtractions plus 2 adds and 1 shift per stripped bit, plus the zero-stripping shifts
    for _ in range(300):
        n = rng.randint(1, 600)
        a = Natural(rng.getrandbits(n))
        _, ops = metered_square(a)
        assert ops.linear_ops <= 4 * max(n - 1, 0) + 2


def test_schoolbook_single_bit():
    assert metered_call(Algorithm.SCHOOLBOOK, Natural(1), Natural(1))[1].digit_mults == 1


def test_schoolbook_bit_pairs(rng):
    for _ in range(50):
        a, b = rng.getrandbits(rng.randint(1, 80)) | 1, rng.getrandbits(rng.randint(1, 80)) | 1
        _, ops = metered_call(Algorithm.SCHOOLBOOK, Natural(a), Natural(b))
        assert ops.digit_mults == a.bit_length() * b.bit_length()


def test_square_op_counts_101010():
    # 101010 squared: three set bits above bit 0 are stripped
    _, ops = metered_square(from_text("101010", 2), strip=False)
    assert ops.digit_mults == 1
    assert ops.subs == 3
    assert (ops.adds, ops.shifts) == (6, 3)


# ------------------------------------------------------------ digit procedures


def test_worked_digit_counts():
    v, ops = count_digit_procedure(Procedure.NIKHILAM_NEAR_BASE, "95", "96", 10)
    assert v == Natural(9120)
    assert (ops.digit_mults, ops.adds, ops.subs, ops.shifts) == (1, 1, 3, 1)
    v, ops = count_digit_procedure("karatsuba", "95", "96", 10)
    assert v == Natural(9120) and ops.digit_mults == 5
    v, ops = count_digit_procedure("schoolbook", "105", "106", 10)
    assert v == Natural(11130) and ops.digit_mults == 9
    v, ops = count_digit_procedure("schoolbook", "101", "110", 2)
    assert v == from_text("11110", 2) and ops.digit_mults == 9 and ops.radix == 2


def test_nikhilam_alias_and_above_base():
    v, ops = count_digit_procedure("nikhilam", "105", "106", 10)
    assert v == Natural(11130)
    assert (ops.digit_mults, ops.adds, ops.subs, ops.shifts) == (1, 2, 2, 1)


def test_karatsuba_three_digit_count_is_recorded():
    # floor(3/2) = 1 low digit: 10*10 (3), 5*6 (1), 15*16 (3)
    v, ops = count_digit_procedure("karatsuba", "105", "106", 10)
    assert v == Natural(11130)
    assert ops.digit_mults == 7


def test_schoolbook_digit_law(rng):
    for _ in range(200):
        r = rng.choice([2, 10, 16])
        m, n = rng.randint(0, 10**8), rng.randint(0, 10**8)
        ms, ns = format(m, {2: "b", 10: "d", 16: "x"}[r]), format(n, {2: "b", 10: "d", 16: "x"}[r])
        v, ops = count_digit_procedure("schoolbook", ms, ns, r)
        assert v.value == m * n
        assert ops.digit_mults == len(ms) * len(ns)


@pytest.mark.parametrize("proc", list(Procedure))
def test_procedures_correct(rng, proc):
    for _ in range(200):
        m, n = rng.randint(0, 10**9), rng.randint(0, 10**9)
        assert count_digit_procedure(proc, str(m), str(n), 10)[0].value == m * n


def test_procedure_parse_error():
    with pytest.raises(ParseError):
        count_digit_procedure("schoolbook", "12", "1a", 10)


# --------------------------------------------------------------------- bench


def test_bench_shape_and_determinism():
    recs = bench_run(ALL, [64], 3, seed=7)
    assert len(recs) == 12
    assert [(r.algorithm, r.trial) for r in recs[:3]] == [(Algorithm.SCHOOLBOOK, t) for t in range(3)]
    assert all(r.elapsed > 0 and r.bits == 64 for r in recs)
    again = bench_run(ALL, [64], 3, seed=7)
    assert [r.ops for r in recs] == [r.ops for r in again]
    a1, b1 = make_operands(7, 64, 2)
    assert (a1, b1) == make_operands(7, 64, 2)
    assert a1.bit_length() == b1.bit_length() == 64
    assert make_operands(8, 64, 2) != (a1, b1)


def test_bench_cross_check_failure(monkeypatch):
    monkeypatch.setattr(backend, "nik_mul", lambda a, b: a * b + 1)
    with pytest.raises(CrossCheckError) as info:
        bench_run([Algorithm.NIKHILAM], [32], 1, seed=3)
    msg = str(info.value)
    assert "nikhilam" in msg and "bits=32" in msg and "trial=0" in msg and "seed=3" in msg


def test_bench_validates_arguments():
    with pytest.raises(ValueError):
        bench_run(ALL, [64], 0, seed=1)
    with pytest.raises(ValueError):
        bench_run(ALL, [], 1, seed=1)


def test_csv_empty_and_single():
    buf = io.StringIO()
    emit_csv([], buf)
    assert buf.getvalue() == "algo,bits,trial,nanos,digit_mults,adds,subs,shifts,exact_divisions\n"
    buf = io.StringIO()
    rec = BenchRecord(Algorithm.KARATSUBA_HYBRID, 128, 0, 1500, OpCounts(2, 3, 4, 5, 6, 7))
    emit_csv([rec], buf)
    lines = buf.getvalue().split("\n")
    assert lines == [",".join(CSV_HEADER), "karatsuba_hybrid,128,0,1500,3,4,5,6,7", ""]


def test_csv_round_trip():
    recs = bench_run(ALL, [16, 48], 2, seed=1)
    buf = io.StringIO()
    emit_csv(recs, buf)
    buf.seek(0)
    assert read_csv(buf) == recs


def test_read_csv_rejects_bad_header():
    with pytest.raises(ParseError):
        read_csv(io.StringIO("a,b\n"))


def test_threshold_sweep_table():
    table = threshold_sweep([64, 128], [4, 16], 2, seed=1)
    assert set(table) == {4, 16}
    assert all(set(row) == {64, 128} and all(v > 0 for v in row.values()) for row in table.values())


def test_square_cost_has_no_superlinear_term():
    # least-squares slope of log(mean ops) against log(n)
    xs, ys = [], []
    for e in range(3, 13):
        n = 1 << e
        rng = random.Random(n)
        total = sum(metered_square(Natural((1 << (n - 1)) | rng.getrandbits(n - 1)))[1].linear_ops
                    for _ in range(8))
        xs.append(math.log(n))
        ys.append(math.log(total / 8))
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    assert 0.9 <= slope <= 1.1
