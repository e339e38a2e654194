from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from liecoh.errors import NonSquare, ZeroPolynomial
from liecoh.exactlinalg import (
    RatMatrix,
    RatPolynomial,
    char_poly,
    generalized_eigenspace,
    inverse,
    is_nilpotent_matrix,
    kernel_basis,
    nilpotent_part,
    rank,
    rational_eigenvalues,
    rational_roots,
    rref,
    semisimple_part,
    solve,
)

from oracles import sympy_matrix

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def matrices(rows=st.integers(1, 5), cols=st.integers(1, 5), entries=small):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(entries, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    ).map(RatMatrix)


def square(n=st.integers(1, 5), entries=small):
    return n.flatmap(lambda k: st.lists(st.lists(entries, min_size=k, max_size=k), min_size=k, max_size=k)).map(RatMatrix)


def sparse_square(n=st.integers(1, 5)):
    # mostly zero integer entries: exercises repeated and zero eigenvalues
    ent = st.sampled_from([0, 0, 0, 0, 1, -1, 2])
    return square(n, ent)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(M):
    assert rank(M) == sympy_matrix(M).rank()
    assert rank(M) == rank(M.T)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_basis_spans_nullspace(M):
    K = kernel_basis(M)
    assert len(K) == M.ncols - rank(M)
    for v in K:
        assert not any(M.apply(v))
    if K:
        assert rank(RatMatrix(K)) == len(K)


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_rref_pivots_match_sympy(M):
    _, piv = rref(M)
    _, spiv = sympy_matrix(M).rref()
    assert list(piv) == list(spiv)


@settings(max_examples=40, deadline=None)
@given(square())
def test_inverse_or_singular(M):
    if rank(M) == M.nrows:
        Minv = inverse(M)
        assert M @ Minv == RatMatrix.identity(M.nrows)
        b = tuple(Fraction(i + 1) for i in range(M.nrows))
        x = solve(M, b)
        assert M.apply(x) == b
    else:
        with pytest.raises(Exception):
            inverse(M)


@settings(max_examples=60, deadline=None)
@given(square())
def test_char_poly_matches_sympy_and_cayley_hamilton(M):
    p = char_poly(M)
    x = sympy.symbols("x")
    sp = sympy_matrix(M).charpoly(x).all_coeffs()[::-1]
    assert [Fraction(int(c.p), int(c.q)) for c in sp] == list(p.coeffs)
    assert p.eval_matrix(M).is_zero()


@settings(max_examples=60, deadline=None)
@given(sparse_square())
def test_jordan_parts(M):
    S = semisimple_part(M)
    N = nilpotent_part(M)
    assert S + N == M
    assert S.commutator(N).is_zero()
    assert is_nilpotent_matrix(N)
    # semisimple: the minimal polynomial of S is squarefree, checked via sympy
    eigs, split = rational_eigenvalues(M)
    if split:
        J = sympy_matrix(S)
        assert J.is_diagonalizable()
        for lam in set(eigs):
            assert len(generalized_eigenspace(M, lam)) == eigs.count(lam)


def test_jordan_block_parts():
    M = RatMatrix([[2, 1, 0], [0, 2, 0], [0, 0, 3]])
    assert semisimple_part(M) == RatMatrix.diag([2, 2, 3])
    assert nilpotent_part(M) == RatMatrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])


def test_non_split_semisimple_part_is_itself():
    M = RatMatrix([[0, -1], [1, 0]])
    eigs, split = rational_eigenvalues(M)
    assert eigs == () and not split
    assert semisimple_part(M) == M


def test_rational_roots():
    # (x - 1/2)(x + 3)(x^2 + 1)
    p = RatPolynomial([-Fraction(1, 2), 1]) * RatPolynomial([3, 1]) * RatPolynomial([1, 0, 1])
    assert rational_roots(p) == [Fraction(-3), Fraction(1, 2)]


def test_errors():
    with pytest.raises(NonSquare):
        char_poly(RatMatrix([[1, 2, 3]]))
    with pytest.raises(ZeroPolynomial):
        RatPolynomial([0]).monic()
