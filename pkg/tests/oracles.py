"""Independent oracles for the test suite.

The cochain oracle evaluates alternating forms on ordered tuples and puts
the bracket in the first slot, unlike the package's sorted-subset engine;
ranks come from sympy.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

import sympy
from hypothesis import strategies as st

from liecoh.exactlinalg import RatMatrix, rank


def perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _form_value(S: tuple, args: tuple) -> int:
    """e^S evaluated on basis vectors with indices ``args``."""
    if len(set(args)) != len(args) or tuple(sorted(args)) != S:
        return 0
    return perm_sign(args)


def ce_matrix(dim: int, bracket, lam: list, p: int) -> sympy.Matrix:
    """Coboundary C^p -> C^{p+1} for a one-dimensional module with weights ``lam``.

    ``bracket(i, j)`` returns {k: c}.
    """
    src = list(combinations(range(dim), p))
    dst = list(combinations(range(dim), p + 1))
    M = sympy.zeros(len(dst), len(src))
    for r, T in enumerate(dst):
        for c, S in enumerate(src):
            val = Fraction(0)
            for i in range(p + 1):
                rest = T[:i] + T[i + 1:]
                val += (-1) ** i * Fraction(lam[T[i]]) * _form_value(S, rest)
            for i in range(p + 1):
                for j in range(i + 1, p + 1):
                    rest = tuple(T[m] for m in range(p + 1) if m not in (i, j))
                    for k, coef in bracket(T[i], T[j]).items():
                        val += (-1) ** (i + j) * Fraction(coef) * _form_value(S, (k,) + rest)
            M[r, c] = sympy.Rational(val.numerator, val.denominator)
    return M


def ce_dims(L, lam=None) -> tuple[int, ...]:
    """dim H^p(L, lam) from the evaluation-based complex."""
    n = L.dim
    lam = list(lam) if lam is not None else [0] * n

    def br(i, j):
        v = L.bracket_basis(i, j)
        return {k: c for k, c in (v.items() if isinstance(v, dict) else enumerate(v)) if c}

    ranks = [ce_matrix(n, br, lam, p).rank() if p < n else 0 for p in range(n + 1)]
    out = []
    from math import comb

    for p in range(n + 1):
        out.append(comb(n, p) - ranks[p] - (ranks[p - 1] if p else 0))
    return tuple(out)


def sympy_matrix(M) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(a.numerator, a.denominator) for a in row] for row in M.tolist()])


def jacobi_holds(dim: int, table: dict) -> bool:
    """Jacobi identity for a bracket given on pairs i < j as {k: c}, with plain dict arithmetic."""

    def br(i, j):
        if i == j:
            return {}
        if i < j:
            return {k: Fraction(c) for k, c in table.get((i, j), {}).items()}
        return {k: -Fraction(c) for k, c in table.get((j, i), {}).items()}

    for x in range(dim):
        for y in range(dim):
            for z in range(dim):
                acc: dict = {}
                for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                    for m, u in br(a, b).items():
                        for q, v in br(m, c).items():
                            acc[q] = acc.get(q, 0) + u * v
                if any(acc.values()):
                    return False
    return True


def invertible(n: int):
    """Hypothesis strategy for invertible integer n x n matrices."""
    ent = st.integers(-2, 2)
    rows = st.lists(st.lists(ent, min_size=n, max_size=n), min_size=n, max_size=n)
    return rows.map(RatMatrix).filter(lambda M: rank(M) == n)


def convolve(a, b) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return tuple(out)


def subset_sum_counts(vectors) -> dict[tuple, int]:
    counts: dict[tuple, int] = {}
    for k in range(len(vectors) + 1):
        for S in combinations(vectors, k):
            w = tuple(sum(v[i] for v in S) for i in range(len(vectors[0])))
            counts[w] = counts.get(w, 0) + 1
    return counts


def weyl_group_by_matrices(simple_coroot_pairing):
    """Closure of simple reflections by brute force over words, as a set of matrices."""
    r = len(simple_coroot_pairing)

    def refl(i):
        M = sympy.eye(r)
        for j in range(r):
            M[i, j] -= simple_coroot_pairing[j][i]
        return M

    gens = [refl(i) for i in range(r)]
    seen = {tuple(sympy.eye(r))}
    frontier = [sympy.eye(r)]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                v = g * w
                key = tuple(v)
                if key not in seen:
                    seen.add(key)
                    nxt.append(v)
        frontier = nxt
    return seen


def character_space(L) -> list[list[Fraction]]:
    """Basis of functionals vanishing on [L, L], via sympy nullspace."""
    rows = []
    for i, j in combinations(range(L.dim), 2):
        v = L.bracket_basis(i, j)
        items = v.items() if isinstance(v, dict) else enumerate(v)
        row = [0] * L.dim
        for k, c in items:
            row[k] = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        rows.append(row)
    M = sympy.Matrix(rows) if rows else sympy.zeros(1, L.dim)
    return [[Fraction(int(x.p), int(x.q)) for x in v] for v in M.nullspace()]


__all__ = ["ce_dims", "ce_matrix", "perm_sign", "sympy_matrix", "convolve", "jacobi_holds", "invertible", "character_space", "subset_sum_counts", "permutations"]
