from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cartanforge import linalg

small = st.integers(min_value=-5, max_value=5)


def matrices(rows=st.integers(1, 4), cols=st.integers(1, 4)):
    return st.tuples(rows, cols).flatmap(
        lambda shape: st.lists(st.lists(small, min_size=shape[1], max_size=shape[1]), min_size=shape[0], max_size=shape[0])
    )


def test_rank_of_known_matrix():
    assert linalg.rank([[1, 2, 3], [2, 4, 6], [1, 0, 1]]) == 2


def test_solve_returns_none_when_inconsistent():
    assert linalg.solve([[1, 1], [1, 1]], [1, 2]) is None
    assert linalg.solve([[2, 0], [0, 4]], [1, 1]) == [Fraction(1, 2), Fraction(1, 4)]


def test_inverse_of_singular_matrix_raises():
    with pytest.raises(linalg.SingularMatrix):
        linalg.inverse([[1, 2], [2, 4]])


@given(matrices())
def test_rank_nullity(rows):
    ncols = len(rows[0])
    assert linalg.rank(rows) + len(linalg.nullspace(rows, ncols)) == ncols


@given(matrices())
def test_nullspace_vectors_are_annihilated(rows):
    for vec in linalg.nullspace(rows, len(rows[0])):
        assert all(sum(Fraction(a) * b for a, b in zip(row, vec)) == 0 for row in rows)


@settings(max_examples=50)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inverse_times_matrix_is_identity(rows):
    n = len(rows)
    if linalg.determinant(rows) == 0:
        return
    product = linalg.matmul(linalg.inverse(rows), rows)
    assert product == [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
