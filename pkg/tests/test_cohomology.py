from __future__ import annotations

from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecoh.catalog import SEC4_2_OPERATORS, SEC4_3_WEIGHTS, catalog_entry, load, sec4_1, sec4_3_torus
from liecoh.cohomology import (
    betti,
    build_complex,
    cartan_grading,
    cohomology,
    cohomology_dims,
    graded_betti,
    hs_codim1_dims,
    induced_theta_on_H,
    lie_derivative_on_cochains,
    semidirect_character,
    torus_grading,
    torus_reduction_dims,
)
from liecoh.errors import ComplexTooLarge, NotADerivation, NotAnIdeal, NotSemisimple, WrongCodimension
from liecoh.exactlinalg import RatMatrix
from liecoh.gamma import gamma_circ
from liecoh.liealg import Subspace, abelian, change_basis, direct_sum, heisenberg3, is_nilpotent, nilradical, semidirect
from liecoh.modules import Character, adjoint_module
from liecoh.weights import adjoint_characters, exterior_supports

from oracles import ce_dims, character_space, convolve, invertible

SMALL = ["sec4_1", "two_dim_nonabelian", "heisenberg3", "sec4_2_diag", "sec4_2_jordan", "sec4_2_nilpotent",
         "sec4_3_r1n3", "borel_A1", "borel_A1xA1", "filiform1", "filiform2", "filiform3", "s1", "s2",
         "random0", "random3", "random5"]
SMALL = [n for n in SMALL if load(n).dim <= 6]
NILPOTENT = ["heisenberg3", "borel_nil_A2", "borel_nil_B2", "filiform3", "filiform5", "abelian4", "random0"]
NILPOTENT = [n for n in NILPOTENT if is_nilpotent(load(n))]


def random_character(S, data) -> Character:
    basis = character_space(S)
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(basis), max_size=len(basis)))
    return Character(S, [sum((c * b[i] for c, b in zip(coeffs, basis)), Fraction(0)) for i in range(S.dim)])


@pytest.mark.parametrize("n", range(0, 6))
def test_abelian_binomials(n):
    assert betti(abelian(n)) == tuple(comb(n, p) for p in range(n + 1))


def test_heisenberg_betti():
    assert betti(heisenberg3()) == ce_dims(heisenberg3()) == (1, 2, 2, 1)


@pytest.mark.parametrize("a, b", [("heisenberg3", "abelian1"), ("two_dim_nonabelian", "heisenberg3"),
                                  ("sec4_1", "two_dim_nonabelian"), ("filiform2", "abelian2")])
def test_kunneth(a, b):
    L1, L2 = load(a), load(b)
    assert betti(direct_sum(L1, L2)) == convolve(betti(L1), betti(L2))


@pytest.mark.parametrize("name", NILPOTENT)
def test_poincare_duality_nilpotent(name):
    b = betti(load(name))
    assert b == b[::-1]


@pytest.mark.parametrize("name", NILPOTENT)
def test_graded_betti_agrees(name):
    L = load(name)
    assert graded_betti(L) == betti(L)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_character_cohomology_matches_oracle(name, data):
    S = load(name)
    lam = random_character(S, data)
    expected = ce_dims(S, lam.values)
    assert cohomology_dims(S, lam.module()) == expected
    if S.dim:
        assert cartan_grading(S).character_dims(lam) == expected


@pytest.mark.parametrize("name", SMALL)
def test_candidate_characters_match_oracle(name):
    S = load(name)
    G = cartan_grading(S)
    for layer in exterior_supports(S):
        for lam in layer:
            assert G.character_dims(lam) == ce_dims(S, lam.values)


def test_cohomology_representatives():
    S = sec4_1()
    lam = Character(S, [1, 0, 0, 0])
    spaces = cohomology(S, lam.module())
    assert [h.dim for h in spaces] == [0, 2, 2, 0, 0]
    cx = build_complex(S, lam.module())
    for h in spaces:
        for rep in h.representatives:
            if h.degree < S.dim:
                assert not any(cx.d[h.degree].apply(rep))


@pytest.mark.parametrize("name", ["sec4_1", "heisenberg3", "borel_A2", "filiform4"])
def test_square_zero(name):
    L = load(name)
    for V in (None, adjoint_module(L)):
        cx = build_complex(L, V)
        for p in range(len(cx.d) - 1):
            assert (cx.d[p + 1] @ cx.d[p]).is_zero()


def test_adjoint_cohomology_oracle_free_euler():
    L = load("filiform3")
    dims = cohomology_dims(L, adjoint_module(L))
    assert sum((-1) ** p * h for p, h in enumerate(dims)) == 0


def test_size_guard():
    with pytest.raises(ComplexTooLarge):
        betti(abelian(17))


def test_lie_derivative_commutes_and_acts():
    H = heisenberg3()
    D = RatMatrix.diag([1, 2, 3])
    theta = lie_derivative_on_cochains(D, H, 1)
    # degree-one cochains: theta(D) = -D^t
    assert theta == RatMatrix.diag([-1, -2, -3])
    op = induced_theta_on_H(D, H, 1)
    assert sorted(op[i, i] for i in range(op.nrows)) == [-2, -1]
    with pytest.raises(NotADerivation):
        lie_derivative_on_cochains(RatMatrix.diag([1, 1, 1]), H, 1)


def hs_triples():
    """(name, ideal, D) with the ideal of codimension one containing the nilradical."""
    out = []
    for name in SMALL:
        S = load(name)
        N = nilradical(S)
        if N.dim == S.dim:
            continue
        for v in N.complement():
            H = N + Subspace(S, [w for w in N.complement() if w != v])
            if H.dim == S.dim - 1 and H.is_ideal():
                out.append((name, H, v))
                break
    return out


@pytest.mark.parametrize("name, H, D", hs_triples(), ids=lambda x: x if isinstance(x, str) else "")
def test_hochschild_serre_codim1(name, H, D):
    S = load(name)
    G = cartan_grading(S)
    for layer in exterior_supports(S):
        for lam in layer:
            direct = cohomology_dims(S, lam.module())
            assert hs_codim1_dims(S, H, D, lam.module()) == direct
    assert hs_codim1_dims(S, H, D) == betti(S)
    assert G.betti() == betti(S)


def test_hochschild_serre_rejects_bad_input():
    S = sec4_1()
    with pytest.raises(NotAnIdeal):
        hs_codim1_dims(S, Subspace(S, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)]), (0, 0, 0, 1))
    with pytest.raises(WrongCodimension):
        hs_codim1_dims(S, Subspace(S, [(0, 0, 0, 1)]), (1, 0, 0, 0))


@pytest.mark.parametrize("name", list(SEC4_3_WEIGHTS) + ["borel_A2", "borel_B2", "s2", "s3"])
def test_torus_reduction(name):
    A, H = catalog_entry(name).torus()
    G = semidirect(A, H)
    assert G == load(name)
    assert torus_reduction_dims(A, H) == betti(G)
    grading = cartan_grading(G)
    for layer in exterior_supports(G):
        for lam in layer:
            expected = grading.character_dims(lam)
            assert torus_reduction_dims(A, H, lam.module()) == expected


def test_torus_reduction_semisimple_guard():
    H = abelian(2)
    with pytest.raises(NotSemisimple):
        torus_reduction_dims([RatMatrix([[1, 1], [0, 1]])], H)
    with pytest.raises(NotSemisimple):
        torus_grading(H, [RatMatrix([[0, 1], [0, 0]])])


def test_semidirect_character():
    A, H = sec4_3_torus([[1, 2, 3]])
    lam = semidirect_character(A, H, [5])
    assert lam.values == (5, 0, 0, 0)


def _without_zeros(flag, r):
    out = list(flag)
    for _ in range(r):
        out.remove(next(c for c in out if c.is_zero()))
    return out


@pytest.mark.parametrize("name", list(SEC4_2_OPERATORS) + list(SEC4_3_WEIGHTS))
def test_elementary_gamma_pattern(name):
    """Gamma^p = union over j = p-r..p of the weights of the exterior powers of h."""
    S = load(name)
    r = len(SEC4_3_WEIGHTS.get(name, [None]))
    h_flag = _without_zeros(adjoint_characters(S), r)
    supports = exterior_supports(S, h_flag)
    for p in range(S.dim + 1):
        expected = set()
        for j in range(p - r, p + 1):
            if 0 <= j < len(supports):
                expected |= set(supports[j])
        assert set(gamma_circ(S, p)) == expected


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["sec4_1", "sec4_2_jordan", "heisenberg3", "s1"]), st.data())
def test_cohomology_is_basis_independent(name, data):
    S = load(name)
    B = data.draw(invertible(S.dim))
    assert betti(change_basis(S, B)) == betti(S)
    M = change_basis(S, B)
    lam = random_character(M, data)
    assert cohomology_dims(M, lam.module()) == ce_dims(M, lam.values)

