from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liecoh.catalog import load, sec4_1
from liecoh.errors import ModuleMismatch
from liecoh.exactlinalg import RatMatrix
from liecoh.liealg import heisenberg3
from liecoh.modules import Character, LieModule, adjoint_module, character_sum, quotient_module, trivial_module
from liecoh.weights import (
    WeightMultiset,
    adjoint_characters,
    chi,
    chi_exterior,
    exterior_supports,
    lie_flag,
    triangularized,
    weights_mod_second_derived,
)

from oracles import character_space

SOLVABLE = ["sec4_1", "two_dim_nonabelian", "heisenberg3", "sec4_2_diag", "sec4_2_jordan", "sec4_3_r2n4",
            "borel_A2", "borel_B2", "filiform3", "s2", "s3", "random0", "random1", "random2", "random4"]


def lam(S, a):
    return Character(S, [a] + [0] * (S.dim - 1))


def test_character_rejects_derived_values():
    S = sec4_1()
    with pytest.raises(ModuleMismatch):
        Character(S, [0, 1, 0, 0])
    with pytest.raises(ModuleMismatch):
        Character(S, [1, 2])
    c = lam(S, 3)
    assert c.scale(Fraction(1, 3)) == lam(S, 1)
    assert (c - c).is_zero() and Character.zero(S).is_zero()
    assert c.to_strings() == ["3", "0", "0", "0"]
    assert c.module().dim == 1


def test_module_validation():
    H = heisenberg3()
    with pytest.raises(ModuleMismatch):
        # x and y acting by commuting matrices cannot produce the nonzero action of z = [x, y]
        LieModule(H, [RatMatrix([[1]]), RatMatrix([[0]]), RatMatrix([[1]])])
    assert trivial_module(H).is_trivial()
    ad = adjoint_module(H)
    assert ad.dim == 3 and not ad.is_trivial()
    # quotient by the center is a 2-dim trivial module
    Q = quotient_module(ad, [(0, 0, 1)])
    assert Q.dim == 2 and Q.is_trivial()


def test_sec4_1_flag_and_exterior():
    S = sec4_1()
    assert Counter(adjoint_characters(S)) == Counter([lam(S, 0), lam(S, 1), lam(S, 1), lam(S, 2)])
    expected = {
        0: {0: 1},
        1: {0: 1, 1: 2, 2: 1},
        2: {1: 2, 2: 2, 3: 2},
        3: {2: 1, 3: 2, 4: 1},
        4: {4: 1},
    }
    for p, mult in expected.items():
        assert chi_exterior(S, p) == WeightMultiset({lam(S, a): m for a, m in mult.items()})
    # printed supports of the exterior powers
    supports = exterior_supports(S)
    assert [[c.values[0] for c in layer] for layer in supports] == [[0], [0, 1, 2], [1, 2, 3], [2, 3, 4], [4]]


@pytest.mark.parametrize("name", SOLVABLE)
def test_flag_triangularizes(name):
    S = load(name)
    M = adjoint_module(S)
    basis, chars = lie_flag(S, M)
    assert len(chars) == S.dim
    for i, T in enumerate(triangularized(M, basis)):
        for r in range(T.nrows):
            for c in range(r):
                assert T[r, c] == 0
            assert T[r, r] == chars[r].values[i]


@pytest.mark.parametrize("name", SOLVABLE)
def test_exterior_degree_symmetry(name):
    S = load(name)
    flag = adjoint_characters(S)
    trace = character_sum(S, flag)
    n = S.dim
    for p in range(n + 1):
        lo = chi_exterior(S, p, flag)
        hi = chi_exterior(S, n - p, flag)
        assert lo.total() == comb(n, p)
        assert WeightMultiset({trace - c: m for c, m in hi}) == lo


@pytest.mark.parametrize("name", SOLVABLE)
def test_supports_match_multiset(name):
    S = load(name)
    flag = adjoint_characters(S)
    supp = exterior_supports(S, flag)
    for p in range(S.dim + 1):
        assert supp[p] == chi_exterior(S, p, flag).support()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SOLVABLE), st.data())
def test_character_modules_have_single_weight(name, data):
    S = load(name)
    basis = character_space(S)
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(basis), max_size=len(basis)))
    vals = [sum((c * b[i] for c, b in zip(coeffs, basis)), Fraction(0)) for i in range(S.dim)]
    c = Character(S, vals)
    assert chi(S, c.module()) == WeightMultiset([c])


def test_weights_mod_second_derived():
    S = sec4_1()
    # S'' = span(z), so S/S'' carries lambda_0, lambda_1 twice
    assert weights_mod_second_derived(S) == WeightMultiset({lam(S, 0): 1, lam(S, 1): 2})


def test_degree_out_of_range():
    with pytest.raises(ValueError):
        chi_exterior(sec4_1(), 5)
