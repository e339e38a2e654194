"""Seeded random inputs shared by the deformation tests and the acceptance suite."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from liecoh.catalog import catalog_names, load
from liecoh.exactlinalg import RatMatrix
from liecoh.liealg import LieAlgebra, change_basis

SMALL = [n for n in catalog_names() if 2 <= load(n).dim <= 5]
N_PAIRS = 100


def _random_basis(rng: random.Random, n: int) -> RatMatrix:
    U = [[int(i == j) if i >= j else rng.randint(-1, 1) for j in range(n)] for i in range(n)]
    L = [[int(i == j) if i <= j else rng.randint(-1, 1) for j in range(n)] for i in range(n)]
    return RatMatrix(U) @ RatMatrix(L)


def _coboundary(mu: LieAlgebra, f: RatMatrix) -> dict:
    """(delta f)(x, y) = f[x,y] - [fx, y] - [x, fy] on basis pairs."""
    n = mu.dim
    out = {}
    for i, j in combinations(range(n), 2):
        ei = tuple(Fraction(int(k == i)) for k in range(n))
        ej = tuple(Fraction(int(k == j)) for k in range(n))
        v = [a - b - c for a, b, c in zip(f.apply(mu.bracket(ei, ej)), mu.bracket(f.apply(ei), ej),
                                          mu.bracket(ei, f.apply(ej)))]
        entry = {k: c for k, c in enumerate(v) if c}
        if entry:
            out[(i, j)] = entry
    return out


def _random_sparse(rng: random.Random, n: int, terms: int) -> dict:
    out: dict = {}
    pairs = list(combinations(range(n), 2))
    for _ in range(terms):
        i, j = rng.choice(pairs)
        out.setdefault((i, j), {})[rng.randrange(n)] = rng.choice([-1, 1, 2])
    return out


def random_pair(seed: int) -> tuple[LieAlgebra, dict]:
    rng = random.Random(seed)
    mu = load(rng.choice(SMALL))
    mu = change_basis(mu, _random_basis(rng, mu.dim))
    n = mu.dim
    kind = seed % 4
    if kind == 0:
        f = RatMatrix([[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)])
        sigma = _coboundary(mu, f)
    elif kind == 1:
        sigma = _random_sparse(rng, n, 1)
    elif kind == 2:
        sigma = _random_sparse(rng, n, 3)
    else:
        other = [m for m in SMALL if load(m).dim == n]
        sigma = change_basis(load(rng.choice(other)), _random_basis(rng, n)).table
    return mu, sigma


def shifted_table(mu: LieAlgebra, sigma: dict, t) -> dict:
    out = {k: dict(v) for k, v in mu.table.items()}
    for k, v in sigma.items():
        e = out.setdefault(k, {})
        for q, c in v.items():
            e[q] = e.get(q, 0) + t * Fraction(c)
    return out
