import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import cofactor_det
from permcount.errors import DimensionTooLarge, IndexOutOfRange, NotPerfectSquare, UnequalRemovalCounts, BadModulus
from permcount.linalg import (
    IntMatrix,
    MinorSpec,
    determinant,
    integer_sqrt,
    minor,
    mod_reduce,
    permanent,
    permanent_naive,
    permanent_ryser,
)

small_matrix = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)
)


def test_known_permanents():
    assert permanent(IntMatrix.ones(3)) == 6
    assert permanent(IntMatrix.ones(5)) == 120
    assert permanent(IntMatrix.identity(4)) == 1
    assert permanent([[1, 2], [3, 4]]) == 10
    assert permanent(IntMatrix.zeros(3)) == 0


@given(small_matrix)
@settings(max_examples=150, deadline=None)
def test_ryser_matches_naive(rows):
    assert permanent_ryser(rows) == permanent_naive(rows)


@given(small_matrix)
@settings(max_examples=150, deadline=None)
def test_bareiss_matches_cofactor(rows):
    assert determinant(rows) == cofactor_det(rows)


def test_permanent_transpose_and_row_permutation_invariant():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 6)
        m = IntMatrix([[rng.randint(-2, 4) for _ in range(n)] for _ in range(n)])
        assert permanent(m) == permanent(m.transpose())
        order = list(range(n))
        rng.shuffle(order)
        assert permanent(IntMatrix([m.rows[i] for i in order])) == permanent(m)


def test_size_limits():
    with pytest.raises(DimensionTooLarge):
        permanent_naive(IntMatrix.ones(13))
    with pytest.raises(DimensionTooLarge):
        permanent_ryser(IntMatrix.ones(33))


def test_matrix_validation():
    with pytest.raises(ValueError):
        IntMatrix([])
    with pytest.raises(ValueError):
        IntMatrix([[1, 2]])
    m = IntMatrix([[1, 0], [0, 1]])
    assert m.is_zero_one()
    assert not IntMatrix([[2]]).is_zero_one()
    with pytest.raises(IndexOutOfRange):
        m[2, 0]


def test_minor_removes_columns_and_rows():
    m = IntMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    # column 0 (input) and row 2 (output) removed
    assert minor(m, MinorSpec.of([0], [2])).rows == ((2, 3), (5, 6))
    assert minor(m, MinorSpec.of([2, 0], [1, 0])).rows == ((8,),)


def test_minor_errors():
    m = IntMatrix.ones(3)
    with pytest.raises(UnequalRemovalCounts):
        minor(m, MinorSpec((0,), ()))
    with pytest.raises(IndexOutOfRange):
        minor(m, MinorSpec((3,), (0,)))
    with pytest.raises(IndexOutOfRange):
        minor(m, MinorSpec((1, 0), (0, 1)))
    with pytest.raises(UnequalRemovalCounts):
        minor(m, MinorSpec.of([0, 1, 2], [0, 1, 2]))


def test_minor_matches_index_filter():
    rng = random.Random(8)
    for _ in range(50):
        n = rng.randint(2, 6)
        rows = [[rng.randint(0, 9) for _ in range(n)] for _ in range(n)]
        k = rng.randint(1, n - 1)
        cols = sorted(rng.sample(range(n), k))
        rws = sorted(rng.sample(range(n), k))
        want = [[rows[i][j] for j in range(n) if j not in cols] for i in range(n) if i not in rws]
        assert minor(rows, MinorSpec.of(cols, rws)).tolist() == want


def test_integer_sqrt_and_mod():
    assert integer_sqrt(0) == 0
    assert integer_sqrt(144) == 12
    assert integer_sqrt(10**40) == 10**20
    with pytest.raises(NotPerfectSquare):
        integer_sqrt(2)
    with pytest.raises(NotPerfectSquare):
        integer_sqrt(-4)
    assert mod_reduce(-1, 3) == 2
    with pytest.raises(BadModulus):
        mod_reduce(5, 1)
