import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cauchyid.errors import RepeatedPoints
from cauchyid.numerics import det_exact
from cauchyid.partitions import partitions_up_to_weight
from cauchyid.schur import bialternant, ssyt, ssyt_schur_oracle, vandermonde

from conftest import distinct_points, random_points, rationals

F = Fraction


def test_vandermonde_examples():
    assert vandermonde([5]) == 1
    assert vandermonde([1, 2, 3]) == -2
    assert vandermonde([1, 1]) == 0


def test_vandermonde_is_the_fixed_determinant_convention():
    rng = random.Random(5)
    for n in range(1, 6):
        xs = random_points(rng, n)
        assert vandermonde(xs) == det_exact([[x ** (n - j) for j in range(1, n + 1)] for x in xs])


def test_bialternant_examples():
    assert bialternant((), (F(2), F(7), F(-1))) == 1
    assert bialternant((1,), (2, 3)) == 5
    assert bialternant((2, 1), (2, 3)) == 30
    assert bialternant((1, 1, 1), (2, 3)) == 0


def test_bialternant_repeated_points():
    with pytest.raises(RepeatedPoints):
        bialternant((1,), (2, 2))


def test_oracle_examples():
    assert ssyt_schur_oracle((1,), (1, 1, 1)) == 3
    assert ssyt_schur_oracle((1, 1), (2, 3)) == 6
    assert ssyt_schur_oracle((2,), (2, 3)) == 19
    assert ssyt_schur_oracle((1, 1, 1), (2, 3)) == 0


def test_ssyt_are_semistandard():
    tabs = list(ssyt((2, 1), 3))
    assert len(tabs) == 8  # dimension of the (2,1) representation of GL3
    for t in tabs:
        assert all(row[i] <= row[i + 1] for row in t for i in range(len(row) - 1))
        assert all(t[r][c] < t[r + 1][c] for r in range(len(t) - 1) for c in range(len(t[r + 1])))


def test_bialternant_matches_oracle():
    rng = random.Random(17)
    for n in range(1, 5):
        for _ in range(5):
            xs = random_points(rng, n)
            for lam in partitions_up_to_weight(6):
                assert bialternant(lam, xs) == ssyt_schur_oracle(lam, xs)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: distinct_points(n)), st.data())
def test_bialternant_symmetric(xs, data):
    lam = data.draw(st.sampled_from(list(partitions_up_to_weight(5, len(xs)))))
    perm = data.draw(st.permutations(xs))
    assert bialternant(lam, xs) == bialternant(lam, tuple(perm))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: distinct_points(n)), rationals.filter(bool), st.data())
def test_bialternant_homogeneous(xs, t, data):
    lam = data.draw(st.sampled_from(list(partitions_up_to_weight(5, len(xs)))))
    assert bialternant(lam, tuple(t * x for x in xs)) == t ** lam.weight * bialternant(lam, xs)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: distinct_points(n)))
def test_vandermonde_square(xs):
    n = len(xs)
    sums = Fraction(1)
    for i in range(n):
        for j in range(i + 1, n):
            sums *= xs[i] + xs[j]
    assert vandermonde([x * x for x in xs]) == vandermonde(xs) * sums
