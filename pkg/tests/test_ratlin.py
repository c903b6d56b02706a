from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ybrack.ratlin import (
    RatMatrix,
    Subspace,
    as_scalar,
    perm_matrix,
    permute_legs,
    quotient_dim,
    rank,
    rank_nullspace,
    solve_linear,
)

from oracle import dense_rank, dense_solve


rationals = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
)


def small_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(rationals, min_size=c, max_size=c),
                min_size=r, max_size=r,
            )
        )
    )


def test_scalar_normalization():
    assert as_scalar(Fraction(6, 3)) == 2
    assert type(as_scalar(Fraction(6, 3))) is int
    assert as_scalar("3/4") == Fraction(3, 4)
    assert as_scalar("-7") == -7
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_identity_rank_nullspace():
    r, ns = rank_nullspace(RatMatrix.identity(3))
    assert r == 3
    assert ns.dim == 0


def test_zero_matrix_rank_nullspace():
    r, ns = rank_nullspace(RatMatrix.zeros(2, 3))
    assert r == 0
    assert ns.dim == 3


def test_rank_one_nullspace_direction():
    M = RatMatrix.from_rows([[1, 2], [2, 4]])
    r, ns = rank_nullspace(M)
    assert r == 1
    assert ns.dim == 1
    (v,) = ns.vectors()
    # spanned by (2, -1) up to scale
    assert v[0] * (-1) == v[1] * 2
    assert any(x != 0 for x in v)


def test_solve_identity():
    M = RatMatrix.identity(4)
    b = [1, Fraction(2, 3), -5, 0]
    assert solve_linear(M, b) == [as_scalar(x) for x in b]


def test_solve_zero_matrix_no_solution():
    M = RatMatrix.zeros(3, 2)
    assert solve_linear(M, [1, 0, 0]) is None
    assert solve_linear(M, [0, 0, 0]) == [0, 0]


def test_solve_echelon_convention():
    M = RatMatrix.from_rows([[1, 1], [0, 0]])
    assert solve_linear(M, [3, 0]) == [3, 0]


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_linear(RatMatrix.identity(2), [1, 2, 3])


def test_quotient_dims():
    Z = Subspace(4, RatMatrix.identity(4))
    B = Subspace(4, RatMatrix(4, 0))
    dim, reps = quotient_dim(Z, B)
    assert dim == 4 and len(reps) == 4

    dim, reps = quotient_dim(Z, Z)
    assert dim == 0 and reps == []

    B2 = Subspace(4, RatMatrix(4, 2, {(0, 0): 1, (1, 1): 1}))
    dim, reps = quotient_dim(Z, B2)
    assert dim == 2 and len(reps) == 2


def test_quotient_requires_containment():
    Z = Subspace(3, RatMatrix(3, 1, {(0, 0): 1}))
    B = Subspace(3, RatMatrix(3, 1, {(1, 0): 1}))
    with pytest.raises(ValueError):
        quotient_dim(Z, B)


def test_bounds_checking():
    M = RatMatrix.identity(2)
    with pytest.raises(IndexError):
        M[2, 0]
    with pytest.raises(IndexError):
        RatMatrix(2, 2, {(5, 0): 1})


def test_dense_layout_limit():
    M = RatMatrix(2000, 600, {(0, 0): 1})
    assert M.layout == "sparse"
    with pytest.raises(ValueError):
        M.to_dense()
    with pytest.raises(ValueError):
        RatMatrix(2000, 600, layout="dense")


@given(small_matrices())
def test_rank_equals_transpose_rank(rows):
    M = RatMatrix.from_rows(rows)
    assert rank(M) == rank(M.transpose())


@given(small_matrices())
def test_nullspace_vectors_are_exact_kernel(rows):
    M = RatMatrix.from_rows(rows)
    r, ns = rank_nullspace(M)
    assert r + ns.dim == M.cols
    for v in ns.vectors():
        assert all(x == 0 for x in M.apply(v))


@given(small_matrices(), st.lists(rationals, min_size=1, max_size=5))
def test_solve_reproduces_rhs(rows, x):
    M = RatMatrix.from_rows(rows)
    x = (x * M.cols)[: M.cols]
    b = M.apply(x)
    sol = solve_linear(M, b)
    assert sol is not None
    assert M.apply(sol) == b


@given(small_matrices())
def test_dense_and_sparse_paths_agree(rows):
    Md = RatMatrix.from_rows(rows, layout="dense")
    Ms = Md.to_sparse()
    assert Ms.to_dense() == Md
    rd, nd = rank_nullspace(Md)
    rs, ns = rank_nullspace(Ms)
    assert rd == rs
    assert nd.basis == ns.basis  # canonical bases are identical, not just equivalent
    b = [1] * Md.rows
    assert solve_linear(Md, b) == solve_linear(Ms, b)


@given(small_matrices())
def test_rank_matches_textbook_elimination(rows):
    M = RatMatrix.from_rows(rows)
    assert rank(M) == dense_rank(rows)


@given(small_matrices(), st.lists(rationals, min_size=1, max_size=5))
def test_solve_matches_textbook_convention(rows, b):
    M = RatMatrix.from_rows(rows)
    b = (b * M.rows)[: M.rows]
    got = solve_linear(M, b)
    want = dense_solve([list(r) for r in rows], b)
    if want is None:
        assert got is None
    else:
        assert got == [as_scalar(x) for x in want]


def test_matmul_kron_compatibility():
    A = RatMatrix.from_rows([[1, 2], [0, 1]])
    B = RatMatrix.from_rows([[Fraction(1, 2), 0], [3, 1]])
    C = RatMatrix.from_rows([[2, 1], [1, 1]])
    D = RatMatrix.from_rows([[1, 0], [0, -1]])
    assert (A @ C).kron(B @ D) == A.kron(B) @ C.kron(D)


def test_permute_legs_matches_matrix():
    dims = [2, 3, 2]
    perm = [1, 0, 2]
    P = perm_matrix(dims, perm)
    M = RatMatrix(12, 4, {(i, i % 4): i + 1 for i in range(12)})
    assert permute_legs(M, dims, perm) == P @ M


def test_perm_matrix_inverse():
    P = perm_matrix([2, 2, 3], [2, 0, 1])
    Q = perm_matrix([3, 2, 2], [1, 2, 0])
    assert P @ Q == RatMatrix.identity(12)


def test_vec_unvec_roundtrip():
    M = RatMatrix.from_rows([[1, 0, 2], [0, Fraction(-1, 3), 0]])
    assert RatMatrix.from_vec(2, 3, M.vec()) == M.to_sparse()


def test_subspace_membership():
    S = Subspace(3, RatMatrix(3, 2, {(0, 0): 1, (1, 1): 1}))
    assert S.contains([2, 3, 0])
    assert not S.contains([0, 0, 1])
