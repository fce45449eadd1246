from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bdcluster.exactalg import (InconsistentSystemError, SingularMatrixError, det_and_inverse, det_bareiss,
                                identity, invert, matmul, nullspace, primitive_integer_multiple, rank, rref,
                                solve_affine, zeros)

entry = st.fractions(min_value=-6, max_value=6, max_denominator=3)


def matrices(rows=(1, 5), cols=(1, 6)):
    return st.tuples(st.integers(*rows), st.integers(*cols)).flatmap(
        lambda rc: st.lists(st.lists(entry, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


@given(matrices())
def test_rank_nullity(m):
    basis = nullspace(m)
    assert rank(m) + len(basis) == len(m[0])
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    if basis:
        assert rank(basis) == len(basis)


@given(matrices())
def test_rref_is_reduced(m):
    r, pivots = rref(m)
    assert len(pivots) == rank(m)
    for i, c in enumerate(pivots):
        assert r[i][c] == 1
        assert all(r[k][c] == 0 for k in range(len(r)) if k != i)


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(entry, min_size=n, max_size=n), min_size=n,
                                                   max_size=n)))
def test_inverse(m):
    if det_bareiss(m) == 0:
        with pytest.raises(SingularMatrixError):
            invert(m)
        return
    inv = invert(m)
    assert matmul(m, inv) == identity(len(m))
    d, inv2 = det_and_inverse(m)
    assert d == det_bareiss(m) and inv2 == inv


@given(matrices(), st.lists(entry, min_size=6, max_size=6))
def test_solve_affine(a, x):
    b = [sum(u * v for u, v in zip(row, x)) for row in a]
    part, basis = solve_affine(a, b)
    assert [sum(u * v for u, v in zip(row, part)) for row in a] == b
    assert len(basis) == len(a[0]) - rank(a)


def test_small_examples():
    assert rank(zeros(3, 3)) == 0
    assert rank(identity(24)) == 24
    assert invert(identity(2)) == identity(2)
    assert invert([[0, 1], [-1, 0]]) == [[0, -1], [1, 0]]
    assert solve_affine([[1, 0], [0, 1]], [1, 2]) == ([1, 2], [])
    part, basis = solve_affine([[1, 1]], [0])
    assert part == [0, 0]
    assert len(basis) == 1 and basis[0][0] == -basis[0][1] != 0
    with pytest.raises(InconsistentSystemError):
        solve_affine([[1, 1], [1, 1]], [0, 1])


def test_primitive_integer_multiple():
    assert primitive_integer_multiple([Fraction(1, 2), Fraction(1, 3), 2]) == 6
    assert primitive_integer_multiple([4, 6]) == Fraction(1, 2)
    assert primitive_integer_multiple([0]) == 1
