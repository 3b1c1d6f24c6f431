"""Exact linear algebra: fraction-free determinants, solves, inverses."""

from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualracah.backend import rat
from dualracah.errors import SingularMatrix
from dualracah.linalg import (
    SquareMatrix,
    commutator,
    exact_det,
    exact_inverse,
    exact_solve,
    generic_det,
    matrix_poly,
    solve_overdetermined,
)

entry = st.fractions(min_value=-50, max_value=50, max_denominator=10)


def _rand_matrix(vals, n):
    rows = [[rat(v.numerator, v.denominator) for v in vals[i * n:(i + 1) * n]] for i in range(n)]
    return SquareMatrix(rows)


def _leibniz_det(m: SquareMatrix):
    """Permutation-expansion oracle (fine up to 4x4)."""
    n = m.n
    total = rat(0)
    for perm in permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = rat(sign)
        for i in range(n):
            term = term * m.rows[i][perm[i]]
        total += term
    return total


def test_det_hand_2x2():
    m = SquareMatrix([[rat(1, 2), rat(3)], [rat(-1), rat(4)]])
    assert exact_det(m) == rat(1, 2) * 4 - 3 * rat(-1)


def test_det_singular():
    m = SquareMatrix([[rat(1), rat(2)], [rat(2), rat(4)]])
    assert exact_det(m) == 0


@settings(max_examples=40)
@given(st.lists(entry, min_size=9, max_size=9))
def test_det_matches_leibniz_3x3(vals):
    m = _rand_matrix(vals, 3)
    assert exact_det(m) == _leibniz_det(m)


@settings(max_examples=15)
@given(st.lists(entry, min_size=16, max_size=16))
def test_det_matches_leibniz_4x4(vals):
    m = _rand_matrix(vals, 4)
    assert exact_det(m) == _leibniz_det(m)


def test_generic_det_agrees_with_exact():
    rows = [[rat(i * 3 + j + 1) ** 2 + rat(1, i + 1) for j in range(3)] for i in range(3)]
    m = SquareMatrix(rows)
    assert generic_det([row[:] for row in rows]) == exact_det(m)


def test_solve_hand_2x2():
    # x + 2y = 5, 3x + 4y = 6  =>  x = -4, y = 9/2
    m = SquareMatrix([[rat(1), rat(2)], [rat(3), rat(4)]])
    assert exact_solve(m, [rat(5), rat(6)]) == [rat(-4), rat(9, 2)]


def test_solve_singular_raises():
    m = SquareMatrix([[rat(1), rat(2)], [rat(2), rat(4)]])
    with pytest.raises(SingularMatrix):
        exact_solve(m, [rat(1), rat(1)])


@settings(max_examples=30)
@given(st.lists(entry, min_size=9, max_size=9), st.lists(entry, min_size=3, max_size=3))
def test_solve_then_multiply(vals, rhs_f):
    m = _rand_matrix(vals, 3)
    rhs = [rat(v.numerator, v.denominator) for v in rhs_f]
    if exact_det(m) == 0:
        with pytest.raises(SingularMatrix):
            exact_solve(m, rhs)
    else:
        x = exact_solve(m, rhs)
        assert m.matvec(x) == rhs


def test_inverse_round_trip():
    m = SquareMatrix([[rat(2), rat(1), rat(0)], [rat(0), rat(1), rat(3)], [rat(1), rat(0), rat(1)]])
    assert (m @ exact_inverse(m) - SquareMatrix.identity(3)).is_zero()


def test_overdetermined_consistent():
    # y = 2x + 1 sampled at four points, fit [intercept, slope]
    rows = [[rat(1), rat(x)] for x in range(4)]
    rhs = [rat(2 * x + 1) for x in range(4)]
    assert solve_overdetermined(rows, rhs) == [rat(1), rat(2)]


def test_overdetermined_inconsistent_raises():
    rows = [[rat(1), rat(x)] for x in range(3)]
    rhs = [rat(1), rat(3), rat(6)]  # not affine
    with pytest.raises(SingularMatrix):
        solve_overdetermined(rows, rhs)


def test_matrix_poly_horner():
    m = SquareMatrix([[rat(0), rat(1)], [rat(0), rat(0)]])
    # p(M) = 2I + 3M + 5M^2, and M^2 = 0
    p = matrix_poly([rat(2), rat(3), rat(5)], m)
    expect = SquareMatrix([[rat(2), rat(3)], [rat(0), rat(2)]])
    assert (p - expect).is_zero()


def test_commutator_antisymmetric():
    a = SquareMatrix([[rat(1), rat(2)], [rat(3), rat(4)]])
    b = SquareMatrix([[rat(0), rat(1)], [rat(1), rat(0)]])
    c = commutator(a, b)
    assert (c + commutator(b, a)).is_zero()
    assert commutator(a, a).is_zero()


def test_diagonal_and_identity():
    d = SquareMatrix.diagonal([rat(1), rat(2)])
    assert d[0, 0] == 1 and d[1, 1] == 2 and d[0, 1] == 0
    assert SquareMatrix.identity(3)[2, 2] == 1


def test_matmul_column_transpose():
    a = SquareMatrix([[rat(1), rat(2)], [rat(3), rat(4)]])
    assert a.column(1) == [rat(2), rat(4)]
    at = a.transpose()
    assert at[0, 1] == 3
    assert (a @ SquareMatrix.identity(2) - a).is_zero()
