from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecoh.catalog import catalog_names, load, sec4_1
from liecoh.errors import JacobiViolation, NotADerivation, NotCommuting, NotSolvable, ParseError
from liecoh.exactlinalg import RatMatrix, inverse
from liecoh.liealg import (
    LieAlgebra,
    Subspace,
    abelian,
    ad_matrix,
    algebra_from_dict,
    algebra_to_dict,
    cartan_subalgebra,
    change_basis,
    derivation_space,
    derived_series,
    direct_sum,
    dumps_algebra,
    heisenberg3,
    is_derivation,
    is_nilpotent,
    is_solvable,
    killing_matrix,
    loads_algebra,
    lower_central_series,
    nilradical,
    normalizer,
    semidirect,
    subalgebra,
)
from oracles import invertible

SMALL = [n for n in catalog_names() if load(n).dim <= 7]


def sl2() -> LieAlgebra:
    # h, e, f
    return LieAlgebra(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, ["h", "e", "f"])


def test_jacobi_violation_is_located():
    with pytest.raises(JacobiViolation) as exc:
        LieAlgebra(3, {(0, 1): {1: 1}, (0, 2): {2: 1}, (1, 2): {2: 1}})
    assert len(exc.value.triple) == 3


def test_bracket_antisymmetry_and_flip():
    L = LieAlgebra(2, {(1, 0): {1: -1}})
    assert L == LieAlgebra(2, {(0, 1): {1: 1}})


@pytest.mark.parametrize("name", SMALL)
def test_ad_is_a_derivation(name):
    L = load(name)
    for i in range(L.dim):
        v = tuple(Fraction(int(k == i)) for k in range(L.dim))
        assert is_derivation(L, ad_matrix(L, v))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_ad_of_random_vector_is_derivation(name, data):
    L = load(name)
    v = data.draw(st.lists(st.integers(-3, 3), min_size=L.dim, max_size=L.dim))
    assert is_derivation(L, ad_matrix(L, v))


def test_series_of_sec4_1():
    S = sec4_1()
    assert [U.dim for U in derived_series(S)] == [4, 3, 1, 0]
    assert [U.dim for U in lower_central_series(S)] == [4, 3]
    assert is_solvable(S) and not is_nilpotent(S)
    N = nilradical(S)
    assert N == Subspace(S, [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    C = cartan_subalgebra(S)
    assert C.dim == 1 and normalizer(C) == C
    assert is_nilpotent(subalgebra(C))


def test_heisenberg_is_nilpotent():
    H = heisenberg3()
    assert is_nilpotent(H)
    assert [U.dim for U in lower_central_series(H)] == [3, 1, 0]
    assert nilradical(H).dim == 3
    assert killing_matrix(H).is_zero()


def test_sl2_is_not_solvable():
    L = sl2()
    assert not is_solvable(L)
    with pytest.raises(NotSolvable):
        cartan_subalgebra(L)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([n for n in SMALL if load(n).dim <= 6]), st.data())
def test_structure_is_basis_independent(name, data):
    L = load(name)
    B = data.draw(invertible(L.dim))
    M = change_basis(L, B)
    assert [U.dim for U in derived_series(M)] == [U.dim for U in derived_series(L)]
    assert [U.dim for U in lower_central_series(M)] == [U.dim for U in lower_central_series(L)]
    assert nilradical(M).dim == nilradical(L).dim
    assert cartan_subalgebra(M).dim == cartan_subalgebra(L).dim
    # change_basis is undone by the inverse matrix
    assert change_basis(M, inverse(B)) == L


@pytest.mark.parametrize("name", SMALL)
def test_nilradical_is_nilpotent_ideal(name):
    L = load(name)
    N = nilradical(L)
    assert N.is_ideal()
    assert is_nilpotent(subalgebra(N))
    # maximal: adding any complement vector breaks nilpotency or the ideal property
    for v in N.complement():
        bigger = N + Subspace(L, [v])
        assert not (bigger.is_ideal() and is_nilpotent(subalgebra(bigger)))


@pytest.mark.parametrize("name", catalog_names())
def test_file_format_round_trip(name):
    L = load(name)
    text = dumps_algebra(L)
    M = loads_algebra(text)
    assert M == L and M.labels == L.labels
    assert algebra_to_dict(M) == algebra_to_dict(L)


@pytest.mark.parametrize(
    "data, fragment",
    [
        ({"dim": 2, "brackets": [[2, 1, [[1, "1"]]]]}, "need i < j"),
        ({"dim": 2, "brackets": [[1, 3, [[1, "1"]]]]}, "out of range"),
        ({"dim": 2, "brackets": [[1, 2, [[5, "1"]]]]}, "target 5 out of range"),
        ({"dim": 2, "brackets": [[1, 2, [[1, "1/0"]]]]}, "bad rational"),
        ({"brackets": []}, "missing field"),
        ({"dim": 2, "basis": ["a"]}, "one label per dimension"),
    ],
)
def test_parse_errors(data, fragment):
    with pytest.raises(ParseError) as exc:
        algebra_from_dict(data)
    assert fragment in exc.value.reason


def test_parse_error_reports_line():
    text = '{\n "dim": 2,\n "brackets": [\n  [1, 2, [[2, "1"]]],\n  [2, 1, [[1, "1"]]]\n ]\n}'
    with pytest.raises(ParseError) as exc:
        loads_algebra(text)
    assert exc.value.line == 5


def test_malformed_json():
    with pytest.raises(ParseError) as exc:
        loads_algebra('{"dim": 2,,}')
    assert exc.value.line == 1


def test_semidirect_checks():
    h = heisenberg3()
    with pytest.raises(NotADerivation):
        semidirect([RatMatrix.diag([1, 1, 1])], h)
    D1 = RatMatrix.diag([1, 0, 1])
    D2 = RatMatrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    with pytest.raises(NotCommuting):
        semidirect([D1, D2], h)
    S = semidirect([D1, RatMatrix.diag([0, 1, 1])], h)
    assert S.dim == 5 and nilradical(S).dim == 3


def test_derivation_space_of_abelian_and_heisenberg():
    assert len(derivation_space(abelian(3))) == 9
    # Der(h3) has dimension 6
    assert len(derivation_space(heisenberg3())) == 6


def test_direct_sum_dims():
    L = direct_sum(heisenberg3(), abelian(1))
    assert L.dim == 4 and nilradical(L).dim == 4
