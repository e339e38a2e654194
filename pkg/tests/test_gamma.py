from __future__ import annotations

import csv
import io
from math import comb

import pytest

from liecoh.catalog import load, sec4_1
from liecoh.cohomology import betti
from liecoh.gamma import (
    character_cohomology_dims,
    check_r_correspondence,
    format_character,
    gamma_candidates,
    gamma_circ,
    r_p_sets,
    total_cohomology,
    verify_gamma1_bound,
)
from liecoh.liealg import Subspace, is_nilpotent, nilradical
from liecoh.modules import Character
from liecoh.weights import chi_exterior, weights_mod_second_derived

from oracles import ce_dims

# sec4_1 table: rows p = 0..4, columns a = 0..4; None marks cells outside the candidate sets
SEC4_1_TABLE = [
    [1, None, None, None, None],
    [1, 2, 0, None, None],
    [None, 2, 0, 2, None],
    [None, None, 0, 2, 1],
    [None, None, None, None, 1],
]

SOLVABLE = ["sec4_1", "two_dim_nonabelian", "sec4_2_diag", "sec4_2_jordan", "sec4_2_nilpotent", "sec4_3_r1n3",
            "sec4_3_r2n4", "borel_A1", "borel_A1xA1", "borel_A2", "s1", "s2", "s3", "random0", "random1",
            "random2", "random3"]


def lam(S, a):
    return Character(S, [a] + [0] * (S.dim - 1))


def test_sec4_1_candidates():
    S = sec4_1()
    assert gamma_candidates(S, 3) == [lam(S, 2), lam(S, 3), lam(S, 4)]
    assert gamma_candidates(S, 5) == []
    for p, row in enumerate(SEC4_1_TABLE):
        cands = {c.values[0] for c in gamma_candidates(S, p)}
        assert cands == {a for a, v in enumerate(row) if v is not None}


def test_sec4_1_table():
    S = sec4_1()
    for a in range(5):
        dims = character_cohomology_dims(S, lam(S, a))
        for p, row in enumerate(SEC4_1_TABLE):
            assert dims[p] == (row[a] or 0)
    # a = 5 lies outside every candidate set
    assert character_cohomology_dims(S, lam(S, 5)) == (0,) * 5
    assert ce_dims(S, [5, 0, 0, 0]) == (0,) * 5


def test_sec4_1_gamma_sets():
    S = sec4_1()
    expected = [{0}, {0, 1}, {1, 3}, {3, 4}, {4}]
    for p, values in enumerate(expected):
        assert {c.values[0] for c in gamma_circ(S, p)} == values
    rep = total_cohomology(S, "sec4_1")
    assert rep.th == (1, 3, 4, 3, 1)
    assert rep.gamma(2) == [lam(S, 1), lam(S, 3)]


def test_report_serializations():
    S = sec4_1()
    rep = total_cohomology(S, "sec4_1")
    js = rep.to_json()
    assert js["schema"] == 1 and js["TH"] == [1, 3, 4, 3, 1]
    assert js["characters"] == [[str(a), "0", "0", "0"] for a in (0, 1, 3, 4)]
    rows = list(csv.reader(io.StringIO(rep.to_csv())))
    assert rows[0][0] == "degree" and rows[0][-1] == "TH"
    assert [int(r[-1]) for r in rows[1:]] == [1, 3, 4, 3, 1]
    assert "TH = [1, 3, 4, 3, 1]" in rep.to_text()
    assert format_character(lam(S, 3)) == "(3, 0, 0, 0)"


@pytest.mark.parametrize("n", range(1, 5))
def test_abelian_total_cohomology(n):
    rep = total_cohomology(load(f"abelian{n}"))
    assert rep.th == tuple(comb(n, p) for p in range(n + 1))


@pytest.mark.parametrize("name", ["heisenberg3", "filiform3", "filiform4", "borel_nil_A2", "borel_nil_B2"])
def test_nilpotent_total_cohomology_is_betti(name):
    L = load(name)
    assert is_nilpotent(L)
    rep = total_cohomology(L)
    assert rep.th == betti(L)
    assert all(c.is_zero() for c in rep.characters())


@pytest.mark.parametrize("name", SOLVABLE)
def test_gamma_inside_candidates(name):
    S = load(name)
    for p in range(S.dim + 1):
        assert set(gamma_circ(S, p)) <= set(chi_exterior(S, p).support())


@pytest.mark.parametrize("name", SOLVABLE)
def test_gamma1_bound(name):
    S = load(name)
    res = verify_gamma1_bound(S)
    assert res.ok and not res.counterexamples
    assert set(res.gamma1) <= set(weights_mod_second_derived(S).support())
    assert res.to_json()["ok"] is True


def _codim1(S):
    N = nilradical(S)
    comp = N.complement()
    for v in comp:
        H = N + Subspace(S, [w for w in comp if w != v])
        if H.is_ideal():
            return H, v
    return None


@pytest.mark.parametrize("name", [n for n in SOLVABLE if not is_nilpotent(load(n))])
def test_r_correspondence(name):
    S = load(name)
    H, D = _codim1(S)
    assert check_r_correspondence(S, H, D)


def test_r_sets_sec4_1():
    S = sec4_1()
    H = Subspace(S, [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    # H^0(h3) carries D-eigenvalue 0; -theta(D) on H^1(h3) = span(x*, y*) has eigenvalue 1
    assert {z for z, _ in r_p_sets(S, H, (1, 0, 0, 0), 0)} == {0}
    assert {z for z, _ in r_p_sets(S, H, (1, 0, 0, 0), 1)} == {1}
    assert {z for z, _ in r_p_sets(S, H, (1, 0, 0, 0), 2)} == {3}
    assert {z for z, _ in r_p_sets(S, H, (1, 0, 0, 0), 3)} == {4}
