from fractions import Fraction

from hypothesis import assume, given, strategies as st

from centun.linalg import (IncrementalBasis, SparseMatrix, det_dense, format_fraction,
                           inverse_dense, parse_fraction, rank, solve_dense)

small = st.fractions(min_value=-5, max_value=5, max_denominator=3)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(square(n), st.lists(small, min_size=n, max_size=n))))
def test_solve_and_inverse(data):
    A, b = data
    assume(det_dense(A) != 0)
    x = solve_dense(A, b)
    assert [sum(a * y for a, y in zip(row, x)) for row in A] == b
    Ainv = inverse_dense(A)
    n = len(A)
    for i in range(n):
        for j in range(n):
            assert sum(A[i][k] * Ainv[k][j] for k in range(n)) == (1 if i == j else 0)


@given(st.lists(st.dictionaries(st.integers(0, 4), small, max_size=4), max_size=6))
def test_incremental_basis_rank(vecs):
    vecs = [{k: v for k, v in x.items() if v} for x in vecs]
    basis = IncrementalBasis()
    kept = sum(1 for v in vecs if v and basis.add(v)[0])
    assert kept == rank(vecs)
    for v in vecs:
        assert basis.contains(v)


@given(small)
def test_fraction_text_round_trip(x):
    assert parse_fraction(format_fraction(x)) == x


def test_sparse_matrix_commutator():
    E = SparseMatrix({1: {0: 1}})
    F = SparseMatrix({0: {1: 1}})
    H = E.commutator(F)
    assert H == SparseMatrix.diagonal({0: Fraction(1), 1: Fraction(-1)})
    assert H.trace() == 0
    assert H.commutator(E) == E.scaled(2)
