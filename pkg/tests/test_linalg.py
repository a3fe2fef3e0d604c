"""Exact linear algebra: reduced echelon form, kernels, solving."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from hptmaster import linalg

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=8)


def dense(rows, cols):
    return st.lists(st.lists(fracs, min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows)


def test_rref_hand():
    M = [[Fraction(2), Fraction(4)], [Fraction(1), Fraction(2)]]
    R, pivots = linalg.rref(M)
    assert R == [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(0)]]
    assert pivots == [0]


def test_kernel_hand():
    M = [[Fraction(1), Fraction(2), Fraction(3)]]
    K = linalg.kernel_basis(M, 3)
    assert len(K) == 2
    for v in K:
        assert sum(M[0][j] * v[j] for j in range(3)) == 0


def test_solve_hand():
    M = [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]]
    x = linalg.solve(M, [Fraction(3), Fraction(1)])
    assert x == [Fraction(2), Fraction(1)]
    assert linalg.solve([[Fraction(0)]], [Fraction(1)]) is None


@settings(max_examples=60, deadline=None)
@given(dense(3, 4))
def test_rref_pivots_are_unit_columns(M):
    R, pivots = linalg.rref(M)
    for r, c in enumerate(pivots):
        col = [R[i][c] for i in range(len(R))]
        assert col[r] == 1
        assert all(col[i] == 0 for i in range(len(R)) if i != r)


@settings(max_examples=60, deadline=None)
@given(dense(3, 4))
def test_kernel_vectors_annihilate(M):
    for v in linalg.kernel_basis(M, 4):
        for row in M:
            assert sum(a * b for a, b in zip(row, v)) == 0


@settings(max_examples=60, deadline=None)
@given(dense(3, 3))
def test_rank_nullity(M):
    assert linalg.rank(M) + len(linalg.kernel_basis(M, 3)) == 3


@settings(max_examples=60, deadline=None)
@given(dense(3, 3), st.lists(fracs, min_size=3, max_size=3))
def test_solve_consistency(M, x):
    rhs = [sum(M[i][j] * x[j] for j in range(3)) for i in range(3)]
    sol = linalg.solve(M, rhs)
    assert sol is not None
    back = [sum(M[i][j] * sol[j] for j in range(3)) for i in range(3)]
    assert back == rhs


def test_in_span():
    cols = [[Fraction(1), Fraction(0)], [Fraction(1), Fraction(1)]]
    assert linalg.in_span(cols, [Fraction(5), Fraction(3)])
    assert not linalg.in_span([cols[0]], [Fraction(0), Fraction(1)])


def test_rref_deterministic():
    M = [[Fraction(1, 3), Fraction(2)], [Fraction(5), Fraction(-1, 7)]]
    assert linalg.rref([r[:] for r in M]) == linalg.rref([r[:] for r in M])
