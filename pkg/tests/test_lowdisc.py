from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lpsearch import lowdisc
from lpsearch.errors import CapacityError
from lpsearch.lowdisc import (
    DirectionTable,
    DyadicFraction,
    default_direction_table,
    dyadic_xor,
    halton_point,
    halton_points,
    hybrid_point,
    hybrid_points,
    radical_inverse,
    radical_inverse_fraction,
    sieve_primes,
    sobol_point,
    sobol_points,
)
from oracles import primes_by_trial_division, radical_inverse_digits, sobol_by_definition


# -- primes ----------------------------------------------------------------

def test_sieve_thirty():
    assert list(sieve_primes(30).primes) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_sieve_two():
    assert list(sieve_primes(2)) == [2]


def test_sieve_thousand_against_trial_division():
    oracle = primes_by_trial_division(1000)
    assert len(oracle) == 168 and oracle[-1] == 997
    plist = sieve_primes(1000)
    assert list(plist.primes) == oracle
    assert plist.limit == 1000


@pytest.mark.parametrize("bad", [1, 0, -5, 2.5])
def test_sieve_rejects_small_limits(bad):
    with pytest.raises(ValueError):
        sieve_primes(bad)


def test_sieve_matches_oracle_up_to_ten_thousand():
    sieved = set(sieve_primes(10_000).primes)
    oracle = primes_by_trial_division(10_000)
    assert sieved == set(oracle)
    # every prefix limit agrees as well
    for limit in (2, 3, 4, 97, 100, 101, 1024, 9973, 9999):
        assert list(sieve_primes(limit).primes) == [p for p in oracle if p <= limit]


def test_first_primes():
    assert list(lowdisc.first_primes(10).primes) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(lowdisc.first_primes(500)) == 500


# -- radical inverse and Halton ------------------------------------------------

@pytest.mark.parametrize("i, r, expected", [
    (3, 2, Fraction(3, 4)),
    (10, 3, Fraction(10, 27)),
    (9, 11, Fraction(9, 11)),
    (8, 2, Fraction(1, 16)),
    (7, 7, Fraction(1, 49)),
])
def test_radical_inverse_examples(i, r, expected):
    assert radical_inverse_fraction(i, r) == expected
    assert radical_inverse(i, r) == float(expected)


@pytest.mark.parametrize("r", [2, 3, 5, 7, 11, 101])
def test_radical_inverse_of_one(r):
    assert radical_inverse_fraction(1, r) == Fraction(1, r)


@pytest.mark.parametrize("i, r", [(0, 2), (-1, 3), (5, 1), (5, 0)])
def test_radical_inverse_rejects(i, r):
    with pytest.raises(ValueError):
        radical_inverse(i, r)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 2**31), st.integers(2, 1000))
def test_radical_inverse_matches_digit_sum(i, r):
    exact = radical_inverse_digits(i, r)
    assert radical_inverse_fraction(i, r) == exact
    assert radical_inverse(i, r) == float(exact)
    assert 0 < radical_inverse(i, r) < 1


@pytest.mark.parametrize("r", [2, 3, 5, 7, 11, 13])
def test_radical_inverse_injective(r):
    values = [radical_inverse_fraction(i, r) for i in range(1, 10_001)]
    assert len(set(values)) == len(values)


def test_halton_points_examples():
    assert [Fraction(v).limit_denominator(10**6) for v in halton_point(1, 2)] == [Fraction(1, 2), Fraction(1, 3)]
    assert np.array_equal(halton_point(10, 3), [5 / 16, 10 / 27, 2 / 25])
    assert np.array_equal(halton_point(2, 4), [1 / 4, 2 / 3, 2 / 5, 2 / 7])


def test_halton_capacity_error_names_count():
    with pytest.raises(CapacityError, match="needs 5"):
        halton_point(3, 5, primes=[2, 3, 5])


def test_halton_batch_matches_scalar():
    batch = halton_points(300, 6, start=1)
    for i in (1, 2, 17, 128, 300):
        assert np.array_equal(batch[i - 1], halton_point(i, 6))
    assert np.array_equal(halton_points(5, 3, start=2**31 - 4)[-1], halton_point(2**31, 3))


def test_halton_projections_distinct():
    pts = halton_points(10_000, 8)
    for j in range(8):
        assert len(np.unique(pts[:, j])) == 10_000
    assert np.all((pts > 0) & (pts < 1))


# -- dyadic xor ------------------------------------------------------------------

def test_dyadic_xor_worked_example():
    assert dyadic_xor(DyadicFraction(7, 3), DyadicFraction(11, 4)) == Fraction(5, 16)


def test_dyadic_xor_three_terms():
    half, eighth, sixteenth = DyadicFraction(1, 1), DyadicFraction(1, 3), DyadicFraction(1, 4)
    assert half ^ eighth ^ sixteenth == Fraction(11, 16)


def test_dyadic_equality_is_by_value():
    assert DyadicFraction(2, 2) == DyadicFraction(1, 1)
    assert hash(DyadicFraction(4, 3)) == hash(DyadicFraction(1, 1))


def test_dyadic_rejects_values_at_or_above_one():
    with pytest.raises(ValueError):
        DyadicFraction(8, 3)


dyadics = st.integers(0, 20).flatmap(
    lambda lvl: st.builds(DyadicFraction, st.integers(0, 2**lvl - 1), st.just(lvl))
)


@settings(max_examples=300, deadline=None)
@given(dyadics, dyadics, dyadics)
def test_dyadic_xor_group_laws(a, b, c):
    zero = DyadicFraction(0, 0)
    assert a ^ b == b ^ a
    assert (a ^ b) ^ c == a ^ (b ^ c)
    assert a ^ zero == a
    assert a ^ a == 0


# -- direction tables and Sobol ---------------------------------------------

def test_default_table_shape_and_invariants():
    t = default_direction_table()
    assert t.max_dim >= 13 and t.max_level >= 20
    for row in t.numerators:
        assert row[0] == 1
        for s, m in enumerate(row, start=1):
            assert m % 2 == 1 and 1 <= m < 2**s


def test_default_table_reproduces_reference_directions():
    t = default_direction_table()
    assert [t.direction(j, 1) for j in range(1, 5)] == [Fraction(1, 2)] * 4
    assert [t.numerators[j][1] for j in range(4)] == [1, 3, 1, 3]
    assert [t.numerators[j][2] for j in range(7)] == [1, 5, 7, 1, 5, 7, 3]
    assert [t.numerators[j][3] for j in range(4)] == [1, 15, 11, 5]
    assert [t.numerators[j][4] for j in range(4)] == [1, 17, 13, 31]


def test_table_consistency_check_rejects_mismatch():
    rows = [list(r[:6]) for r in default_direction_table().numerators[:4]]
    rows[1][3] = 7
    with pytest.raises(ValueError, match="V_2"):
        DirectionTable(tuple(map(tuple, rows))).check_reference()


def test_table_rejects_even_numerator():
    with pytest.raises(ValueError):
        DirectionTable(((1, 2),))


def test_direction_file_round_trip(tmp_path):
    path = tmp_path / "dirs.txt"
    t = default_direction_table()
    lowdisc.dump_direction_table(t, path)
    assert lowdisc.load_direction_table(path) == t


def test_direction_file_small_table(tmp_path):
    path = tmp_path / "small.txt"
    lines = ["# four dims, five levels"]
    for j, row in enumerate(default_direction_table().numerators[:4], start=1):
        lines += [f"{j} {s} {m}" for s, m in enumerate(row[:5], start=1)]
    path.write_text("\n".join(reversed(lines)) + "\n")
    t = lowdisc.load_direction_table(path)
    assert (t.max_dim, t.max_level) == (4, 5)
    assert np.array_equal(sobol_point(22, 4, t), [13 / 32, 29 / 32, 25 / 32, 3 / 32])
    with pytest.raises(CapacityError):
        sobol_point(32, 4, t)
    with pytest.raises(CapacityError):
        sobol_point(3, 5, t)


def test_direction_file_errors(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 1 1\n1 2\n")
    with pytest.raises(ValueError):
        lowdisc.load_direction_table(bad)
    gap = tmp_path / "gap.txt"
    gap.write_text("1 1 1\n2 1 1\n1 2 1\n")
    with pytest.raises(ValueError, match="incomplete"):
        lowdisc.load_direction_table(gap)
    wrong = tmp_path / "wrong.txt"
    wrong.write_text("1 1 1\n1 2 3\n")
    with pytest.raises(ValueError, match="V_1"):
        lowdisc.load_direction_table(wrong)
    lowdisc.load_direction_table(wrong, check=False)


def test_sobol_worked_points():
    assert [Fraction(v) for v in sobol_point(13, 4)] == [Fraction(11, 16), Fraction(13, 16), Fraction(13, 16), Fraction(15, 16)]
    assert [Fraction(v) for v in sobol_point(22, 4)] == [Fraction(13, 32), Fraction(29, 32), Fraction(25, 32), Fraction(3, 32)]


@pytest.mark.parametrize("n", [1, 4, 13, 40])
def test_sobol_first_point_is_centre(n):
    assert np.all(sobol_point(1, n) == 0.5)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 2**31), st.integers(1, 40))
def test_sobol_matches_digitwise_definition(i, j):
    t = default_direction_table()
    exact = sobol_by_definition(i, j, t.numerators)
    got = Fraction(sobol_point(i, j, t)[j - 1])
    assert got == exact
    # denominator divides 2**bit_length(i)
    assert (got * 2 ** i.bit_length()).denominator == 1


def test_sobol_index_limits():
    with pytest.raises(ValueError):
        sobol_point(0, 2)
    sobol_point(2**31, 3)
    with pytest.raises(CapacityError):
        sobol_point(2**31 + 1, 3)
    with pytest.raises(CapacityError):
        sobol_point(5, 41)


def test_sobol_batch_matches_scalar():
    batch = sobol_points(1000, 40, start=5)
    for i in (5, 6, 64, 777, 1004):
        assert np.array_equal(batch[i - 5], sobol_point(i, 40))


@pytest.mark.parametrize("m", range(1, 11))
def test_sobol_block_projections_distinct(m):
    pts = sobol_points(2**m - 1, default_direction_table().max_dim)
    for j in range(pts.shape[1]):
        assert len(np.unique(pts[:, j])) == 2**m - 1


# -- hybrid ---------------------------------------------------------------------------

def test_hybrid_equals_sobol_within_table():
    t = default_direction_table()
    assert np.array_equal(hybrid_point(13, t.max_dim, t, seed=3), sobol_point(13, t.max_dim, t))


def test_hybrid_head_is_sobol_and_tail_is_seeded():
    t = default_direction_table()
    p = hybrid_point(13, t.max_dim + 2, t, seed=11)
    assert p.shape == (t.max_dim + 2,)
    assert np.array_equal(p[: t.max_dim], sobol_point(13, t.max_dim, t))
    assert np.all((p[t.max_dim:] >= 0) & (p[t.max_dim:] < 1))
    assert np.array_equal(p, hybrid_point(13, t.max_dim + 2, t, seed=11))
    assert not np.array_equal(p, hybrid_point(13, t.max_dim + 2, t, seed=12))


def test_hybrid_batch_matches_scalar():
    t = default_direction_table()
    batch = hybrid_points(50, 60, t, seed=7, start=3)
    for i in (3, 10, 52):
        assert np.array_equal(batch[i - 3], hybrid_point(i, 60, t, seed=7))
