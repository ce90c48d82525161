from fractions import Fraction
from itertools import combinations
from math import comb, factorial

import pytest

from cauchyid.errors import IndexOutOfRange, LengthExceedsN
from cauchyid.partitions import (
    Parity,
    Partition,
    b_lambda,
    c_lambda,
    enumerate_partitions,
    p_lambda,
    parity_class,
    partitions_of,
    partitions_up_to_weight,
    staircase,
    staircase_layer,
)


def all_partitions_brute(max_weight):
    """Every partition of weight <= max_weight, by filtering all weakly
    decreasing tuples (independent of partitions_of)."""
    found = set()

    def rec(prefix, remaining, cap):
        found.add(tuple(prefix))
        for p in range(1, min(remaining, cap) + 1):
            rec(prefix + [p], remaining - p, p)

    rec([], max_weight, max_weight)
    return found


def test_partition_strips_trailing_zeros():
    assert Partition((3, 1, 0, 0)) == Partition((3, 1))
    assert len(Partition((2, 0))) == 1
    with pytest.raises(ValueError):
        Partition((1, 2))


def test_text_form_round_trip():
    for text in ("[]", "[3,1]", "[2,2,1]"):
        assert str(Partition.parse(text)) == text
    assert Partition.parse(" [ 3 , 1 ] ") == Partition((3, 1))
    with pytest.raises(ValueError):
        Partition.parse("3,1")


@pytest.mark.parametrize("lam, n, expected", [
    ((3, 1), 2, (4, 1)),
    ((), 3, (2, 1, 0)),
    ((2, 2, 1), 3, (4, 3, 1)),
])
def test_staircase(lam, n, expected):
    assert staircase(lam, n) == expected


def test_staircase_rejects_long_partition():
    with pytest.raises(LengthExceedsN):
        staircase((1, 1, 1), 2)


def test_staircase_is_inverted_by_from_staircase():
    for n in (1, 2, 3, 4):
        seen = set()
        for lam in partitions_up_to_weight(8, n):
            ks = staircase(lam, n)
            assert all(ks[i] > ks[i + 1] for i in range(n - 1)) and ks[-1] >= 0
            assert Partition.from_staircase(ks) == lam
            assert ks not in seen
            seen.add(ks)


def test_enumerate_examples():
    assert list(enumerate_partitions(1, 3)) == [Partition((k,)) for k in range(4)]
    assert list(enumerate_partitions(2, 1)) == [Partition(())]
    assert list(enumerate_partitions(3, 1)) == []


def test_enumerate_against_brute_force_filter():
    for n in (1, 2, 3, 4):
        for k_cap in range(0, 9):
            expected = {
                Partition(p) for p in all_partitions_brute(n * k_cap)
                if len(p) <= n and (p[0] if p else 0) + n - 1 <= k_cap
            }
            got = list(enumerate_partitions(n, k_cap))
            assert len(got) == len(set(got))
            assert set(got) == expected


def test_enumerate_n2_kcap2():
    assert list(enumerate_partitions(2, 2)) == [Partition(()), Partition((1,)), Partition((1, 1))]


def test_enumerate_order():
    for n in (2, 3):
        got = list(enumerate_partitions(n, 7))
        keys = [(lam.weight, tuple(-p for p in lam.padded(n))) for lam in got]
        assert keys == sorted(keys)


def test_enumerate_count_is_binomial():
    for n in range(1, 5):
        for k_cap in range(0, 13):
            assert len(list(enumerate_partitions(n, k_cap))) == comb(k_cap + 1, n)


def test_enumerate_staircases_are_all_decreasing_tuples():
    for n in range(1, 5):
        k_cap = 9
        got = {staircase(lam, n) for lam in enumerate_partitions(n, k_cap)}
        direct = {tuple(sorted(c, reverse=True)) for c in combinations(range(k_cap + 1), n)}
        assert got == direct


def test_layers_partition_the_enumeration():
    for n in (1, 2, 3):
        k_cap = 8
        union = [lam for top in range(n - 1, k_cap + 1) for lam in staircase_layer(n, top)]
        assert sorted(union, key=str) == sorted(enumerate_partitions(n, k_cap), key=str)
        for top in range(n - 1, k_cap + 1):
            assert all(staircase(lam, n)[0] == top for lam in staircase_layer(n, top))


def test_partitions_of_counts():
    # p(0..10)
    assert [sum(1 for _ in partitions_of(w)) for w in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert set(partitions_up_to_weight(7)) == {Partition(p) for p in all_partitions_brute(7)}


def test_c_lambda():
    for m in range(8):
        assert c_lambda((m,), 1) == Fraction(factorial(m))
    assert c_lambda((), 3) == 2
    assert c_lambda((2, 1), 2) == 6


def test_p_lambda():
    assert p_lambda((3, 2)) == 6
    assert p_lambda(()) == 1
    assert p_lambda((4, 1, 1)) == 4


def test_b_lambda():
    ones = [1] * 6
    for lam in enumerate_partitions(3, 5):
        assert b_lambda(ones, lam, 3) == 1
    b = [Fraction(2), Fraction(5), Fraction(7)]
    assert b_lambda(b, (2,), 1) == 7
    assert b_lambda([1, 0, 3], (1, 1), 2) == 0
    with pytest.raises(IndexOutOfRange):
        b_lambda([1, 1], (2,), 1)


def test_parity_class_examples():
    assert parity_class((1,), 2) is Parity.EVEN
    assert parity_class((1, 1), 2) is Parity.MIXED
    assert parity_class((3,), 1) is Parity.ODD


def test_parity_class_matches_definition():
    for n in (1, 2, 3, 4):
        for lam in partitions_up_to_weight(10, n):
            padded = lam.padded(n)
            ks = [padded[l - 1] + n - l for l in range(1, n + 1)]
            evens = all(k % 2 == 0 for k in ks)
            odds = all(k % 2 == 1 for k in ks)
            cls = parity_class(lam, n)
            assert (cls is Parity.EVEN) == evens
            assert (cls is Parity.ODD) == odds
            if cls is not Parity.MIXED and n >= 2:
                assert all((ks[i] - ks[i + 1]) % 2 == 0 for i in range(n - 1))
