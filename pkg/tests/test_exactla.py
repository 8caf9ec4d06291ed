from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from relend.exactla import (Mat, NoSolution, NotUnique, Q, kernel_basis, kron, qstr, rank, solve_unique,
                            span_basis, subspace_equal, vec_to_op, op_to_vec)

rat = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def mats(rows, cols):
    return st.lists(st.lists(rat, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda r: Mat.from_rows(r, cols))


any_mat = st.tuples(st.integers(1, 5), st.integers(1, 5)).flatmap(lambda rc: mats(*rc))


def naive_matmul(a, b):
    return [[sum((Fraction(int(a[i, k].numerator), int(a[i, k].denominator))
                  * Fraction(int(b[k, j].numerator), int(b[k, j].denominator)) for k in range(a.cols)), Fraction(0))
             for j in range(b.cols)] for i in range(a.rows)]


def test_scalars_lowest_terms():
    x = Q("6/-4")
    assert (x.numerator, x.denominator) == (-3, 2)
    assert qstr(Q(Fraction(10, 4))) == "5/2"
    assert qstr(3) == "3/1"


def test_kernel_examples():
    (v,) = kernel_basis(Mat.from_rows([[1, 2], [2, 4]]))
    assert v[0] == -2 * v[1] and v[1] != 0
    assert kernel_basis(Mat.identity(4)) == []
    assert len(kernel_basis(Mat.zeros(3, 3))) == 3


def test_solve_examples():
    b = Mat.from_rows([[1, 2], [3, 4]])
    assert solve_unique(Mat.identity(2), b) == b
    assert solve_unique(Mat.from_rows([[2]]), Mat.from_rows([[3]])) == Mat.from_rows([["3/2"]])
    with pytest.raises(NoSolution):
        solve_unique(Mat.from_rows([[1], [1]]), Mat.from_rows([[1], [2]]))
    with pytest.raises(NotUnique):
        solve_unique(Mat.from_rows([[1, 1]]), Mat.from_rows([[1]]))


def test_kron_examples():
    assert kron(Mat.identity(2), Mat.identity(3)) == Mat.identity(6)
    m = Mat.from_rows([[1, 2, 3], [4, 5, 6]])
    assert kron(Mat.from_rows([[2]]), m) == m.scale(2)
    # flat index of (i, j) is i * cols_b + j
    a = Mat.from_rows([[0, 1], [0, 0]])
    b = Mat.from_rows([[0, 0, 0], [0, 0, 7], [0, 0, 0]])
    k = kron(a, b)
    assert k[0 * 3 + 1, 1 * 3 + 2] == 7 and k.nnz() == 1


def test_subspace_equal_examples():
    assert subspace_equal([(1, 0)], [(2, 0)])
    assert not subspace_equal([(1, 0)], [(0, 1)])


def test_operator_flattening_round_trip():
    t = Mat.from_rows([[1, 2, 3], [4, 5, 6]])
    assert op_to_vec(t) == tuple(Q(x) for x in (1, 2, 3, 4, 5, 6))
    assert vec_to_op(op_to_vec(t), 2, 3) == t


@given(any_mat)
def test_kernel_property(m):
    ker = kernel_basis(m)
    for k in ker:
        assert all(x == 0 for x in m @ k)
    assert rank(m) + len(ker) == m.cols


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(mats(n, n), mats(n, 2))))
def test_solve_property(ab):
    a, b = ab
    try:
        x = solve_unique(a, b)
    except (NoSolution, NotUnique):
        assert rank(a) < a.cols
        return
    assert a @ x == b


@given(mats(2, 2), mats(2, 2), mats(2, 2), mats(2, 2))
def test_kron_mixed_product(a, b, c, d):
    lhs = kron(a, b) @ kron(c, d)
    ac = Mat.from_rows(naive_matmul(a, c))
    bd = Mat.from_rows(naive_matmul(b, d))
    assert lhs == kron(ac, bd)


@given(mats(2, 3), mats(2, 1), mats(3, 2))
def test_kron_associative(a, b, c):
    assert kron(kron(a, b), c) == kron(a, kron(b, c))


@given(mats(3, 4))
def test_span_vs_echelon(m):
    vecs = [m.row_vec(i) for i in range(3)]
    ech = span_basis(vecs)
    assert subspace_equal(vecs, ech)
    assert len(ech) == rank(m)


@given(any_mat, any_mat)
def test_matmul_matches_naive(a, b):
    if a.cols != b.rows:
        return
    assert a @ b == Mat.from_rows(naive_matmul(a, b), b.cols)
