from __future__ import annotations

import json
from collections import Counter
from math import comb
from pathlib import Path

import pytest

from liecoh.cohomology import betti
from liecoh.errors import OutOfRange
from liecoh.filiform import (
    exterior_character,
    exterior_character_bruteforce,
    filiform,
    filiform_cohomology_diagram,
    gamma_s_n,
    gaussian_binomial,
    highest_weight_multiplicities,
    polygon_vertices,
    s_n_algebra,
)
from liecoh.liealg import is_nilpotent, lower_central_series
from liecoh.weights import chi_exterior

from oracles import subset_sum_counts

GOLDEN = Path(__file__).parent / "golden"


def f4_golden() -> dict:
    return json.loads((GOLDEN / "f4_diagram.json").read_text())


@pytest.mark.parametrize("n", range(1, 9))
def test_exterior_character_matches_subset_sums(n):
    # tag each weight with a unit count so subset sums also record the degree
    counts = subset_sum_counts([(n - 2 * k, 1) for k in range(n + 1)])
    for p in range(n + 2):
        ch = exterior_character(n, p)
        assert ch.as_dict() == {w: m for (w, q), m in counts.items() if q == p}
        assert ch == exterior_character_bruteforce(n, p)
        assert ch.at_one() == comb(n + 1, p)
        assert ch.is_palindromic()


@pytest.mark.parametrize("n", range(1, 9))
def test_highest_weights_sum_to_dimension(n):
    for p in range(n + 2):
        hw = highest_weight_multiplicities(n, p)
        assert sum(m * (w + 1) for w, m in hw.items()) == comb(n + 1, p)


def test_gaussian_binomial_edges():
    assert gaussian_binomial(5, 0) == [1]
    assert gaussian_binomial(5, 5) == [1]
    assert sum(gaussian_binomial(6, 3)) == comb(6, 3)
    with pytest.raises(OutOfRange):
        exterior_character(3, 5)


@pytest.mark.parametrize("n", range(1, 7))
def test_filiform_structure(n):
    f = filiform(n)
    assert f.dim == n + 2 and is_nilpotent(f)
    # maximal nilindex: the lower central series drops by one after the first step
    dims = [U.dim for U in lower_central_series(f)]
    assert dims == [n + 2] + list(range(n, -1, -1))


@pytest.mark.parametrize("n", range(1, 6))
def test_diagram_dims_are_betti(n):
    assert filiform_cohomology_diagram(n).dims() == betti(filiform(n))


def test_f4_diagram_golden():
    g = f4_golden()
    diag = filiform_cohomology_diagram(4)
    assert diag.diamond_set() == {tuple(w) for w in g["diamonds"]}
    assert diag.bullet_set() == {tuple(w) for w in g["bullets"]}
    assert diag.dims() == (1, 2, 3, 4, 3, 2, 1)


def test_p4_polygon_multiplicities_golden():
    g = f4_golden()
    expected = {tuple(w): m for w, m in g["polygon_multiplicities"]}
    n = 4
    sums = subset_sum_counts([(2, 0)] + [(n - 2 * k, 1) for k in range(n + 1)])
    # every point carries a printed label except the origin (the empty sum)
    assert set(sums) - set(expected) == {(0, 0)} and sums[(0, 0)] == 1
    expected[(0, 0)] = 1
    assert expected == sums
    S = s_n_algebra(n)
    total: Counter = Counter()
    for p in range(S.dim + 1):
        for c, m in chi_exterior(S, p):
            assert not any(c.values[2:])
            total[(int(c.values[0]), int(c.values[1]))] += m
    # the two toral basis vectors contribute a factor 4
    assert {w: m // 4 for w, m in total.items()} == expected
    assert all(m % 4 == 0 for m in total.values())


@pytest.mark.parametrize("n", range(1, 6))
def test_s_n_routes_agree(n):
    rep = gamma_s_n(n)
    assert rep.agree and rep.vertices_in_gamma and rep.ok
    assert len(polygon_vertices(n)) == 2 * n + 4
    js = rep.to_json()
    assert js["schema"] == 1 and js["ok"]


def test_renderings():
    diag = filiform_cohomology_diagram(4)
    assert diag.to_csv().splitlines()[0] == "degree,weight_H,weight_I,multiplicity,marker"
    assert diag.to_json()["betti"] == [1, 2, 3, 4, 3, 2, 1]
    text = diag.to_text()
    assert text.count("D") == 8 and text.count("o") == 8


def test_limits():
    with pytest.raises(OutOfRange):
        filiform(0)
    with pytest.raises(OutOfRange):
        gamma_s_n(8)
