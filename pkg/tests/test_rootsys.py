from __future__ import annotations

import json
from functools import reduce
from pathlib import Path

import pytest

from liecoh.cohomology import betti
from liecoh.gamma import gamma_circ
from liecoh.liealg import LieAlgebra, is_nilpotent, is_solvable, nilradical
from liecoh.rootsys import (
    borel_algebra,
    borel_nilradical,
    chi_polytope,
    extreme_points,
    kostant_gamma,
    length_profile,
    polytope_csv,
    polytope_grid,
    root_system,
    verify_kostant,
    weyl_group,
)

from oracles import convolve, weyl_group_by_matrices

GOLDEN = Path(__file__).parent / "golden"
# degrees of the basic invariants; the Weyl group Poincare polynomial is prod (1 + q + ... + q^(d-1))
DEGREES = {"A1": (2,), "A1xA1": (2, 2), "A2": (2, 3), "B2": (2, 4), "G2": (2, 6)}
TYPES = list(DEGREES)


def golden(name: str) -> tuple[dict[tuple, int], set[tuple]]:
    """Printed multiplicity labels and bulleted points of a polytope figure."""
    data = json.loads((GOLDEN / name).read_text())
    return {tuple(w): m for w, m in data["multiplicities"]}, {tuple(w) for w in data["bullets"]}


@pytest.mark.parametrize("t", TYPES)
def test_weyl_group_size_and_profile(t):
    R = root_system(t)
    W = weyl_group(R)
    assert len(W) == len(weyl_group_by_matrices(R.cartan))
    expected = reduce(convolve, [(1,) * d for d in DEGREES[t]])
    assert length_profile(R) == expected
    assert max(w.length for w in W) == len(R.positive)


@pytest.mark.parametrize("t", TYPES)
def test_borel_structure(t):
    R = root_system(t)
    b = borel_algebra(R)
    assert is_solvable(b) and not is_nilpotent(b)
    assert nilradical(b).dim == len(R.positive)
    assert is_nilpotent(borel_nilradical(R))


@pytest.mark.parametrize("t", TYPES)
def test_nilradical_betti_is_length_profile(t):
    R = root_system(t)
    assert betti(borel_nilradical(R)) == length_profile(R)


@pytest.mark.parametrize("t", TYPES)
def test_kostant_report(t):
    rep = verify_kostant(root_system(t))
    assert rep.ok, rep.to_json()
    assert rep.length_profile == rep.nilradical_betti
    for p, comp in enumerate(rep.computed):
        assert set(comp) == kostant_gamma(root_system(t), p)


def test_a2_polytope_golden():
    R = root_system("A2")
    mult = chi_polytope(R)
    labels, bullets = golden("a2_polytope.json")
    assert mult == labels
    assert sorted(mult.values()) == [1, 1, 1, 1, 1, 1, 2]
    hull = extreme_points(mult)
    assert hull == bullets and (1, 1) not in hull
    assert set().union(*verify_kostant(R).predicted) == bullets
    assert chi_polytope(R, include_cartan=True) == {w: 4 * m for w, m in mult.items()}


def test_g2_polytope_golden():
    R = root_system("G2")
    mult = chi_polytope(R)
    labels, bullets = golden("g2_polytope.json")
    # the figure prints every multiplicity except the one at the (bulleted) origin
    assert {w: m for w, m in mult.items() if w in labels} == labels
    assert set(mult) - set(labels) == {(0, 0)} and mult[(0, 0)] == 1
    assert sorted(set(labels.values())) == [1, 2, 4]
    rep = verify_kostant(R)
    assert extreme_points(mult) == bullets
    assert set().union(*rep.predicted) == set().union(*(set(c) for c in rep.computed)) == bullets


def test_renderings():
    R = root_system("A2")
    verts = extreme_points(chi_polytope(R))
    grid = polytope_grid(R, verts)
    assert grid.count("*") == 6 and "2" in grid
    rows = polytope_csv(R, verts).splitlines()
    assert rows[0] == "weight,multiplicity,is_gamma_vertex"
    assert len(rows) == 8
    assert "(1;1),2,0" in rows


def test_unknown_type():
    with pytest.raises(ValueError, match="unknown root system"):
        root_system("E8")


@pytest.mark.parametrize("t", ["B2", "G2"])
def test_structure_constant_signs_do_not_matter(t):
    R = root_system(t)
    b = borel_algebra(R)
    # negate the last root vector: a consistent flip of every constant touching it
    k = b.dim - 1
    table = {}
    for (i, j), row in b.table.items():
        sign = (-1) ** ((i == k) + (j == k))
        table[(i, j)] = {m: sign * c * (-1 if m == k else 1) for m, c in row.items()}
    flipped = LieAlgebra(b.dim, table, b.labels)
    assert flipped != b
    assert betti(flipped) == betti(b)
    assert [set(gamma_circ(flipped, p)) for p in range(b.dim + 1)] == [set(gamma_circ(b, p)) for p in range(b.dim + 1)]
