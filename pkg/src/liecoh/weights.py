"""Lie triangularization and the character multisets of solvable algebras."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NonSplit, NotSolvable
from .exactlinalg import RatMatrix, Vector, inverse, kernel_basis, rational_eigenvalues, unit_vec
from .liealg import LieAlgebra, Subspace, derived_series, is_solvable
from .modules import Character, LieModule, adjoint_module, quotient_module


class WeightMultiset:
    """Characters with positive multiplicities."""

    def __init__(self, entries: dict[Character, int] | Iterable[Character]):
        if isinstance(entries, dict):
            counts = Counter({c: m for c, m in entries.items() if m})
        else:
            counts = Counter(entries)
        if any(m < 0 for m in counts.values()):
            raise ValueError("multiplicities must be positive")
        self.entries: dict[Character, int] = dict(sorted(counts.items()))

    def support(self) -> list[Character]:
        return list(self.entries)

    def multiplicity(self, c: Character) -> int:
        return self.entries.get(c, 0)

    def total(self) -> int:
        return sum(self.entries.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightMultiset):
            return NotImplemented
        return self.entries == other.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.items())

    def to_json(self) -> list[dict]:
        return [{"character": c.to_strings(), "multiplicity": m} for c, m in self.entries.items()]

    def __repr__(self) -> str:
        return "WeightMultiset({" + ", ".join(f"{c.to_strings()}: {m}" for c, m in self.entries.items()) + "})"


def _intersect(U: list[Vector], K: list[Vector], n: int) -> list[Vector]:
    if not U or not K:
        return []
    cols = list(U) + [tuple(-a for a in k) for k in K]
    out = []
    for coeffs in kernel_basis(RatMatrix.from_columns(cols, nrows=n)):
        v = [Fraction(0)] * n
        for c, u in zip(coeffs[: len(U)], U):
            if c:
                v = [x + c * y for x, y in zip(v, u)]
        out.append(tuple(v))
    return out


def common_eigenvector(mats: Sequence[RatMatrix], n: int) -> tuple[Vector, tuple[Fraction, ...]] | None:
    """A rational common eigenvector of the given matrices and its eigenvalues.

    Eigenvalue tuples are tried in increasing order, generator by generator.
    """
    def search(idx: int, U: list[Vector], ts: tuple):
        if idx == len(mats):
            return U[0], ts
        A = mats[idx]
        eigs, _ = rational_eigenvalues(A)
        for t in sorted(set(eigs)):
            K = kernel_basis(A - RatMatrix.identity(n).scale(t))
            inter = _intersect(U, K, n)
            if inter:
                found = search(idx + 1, inter, ts + (t,))
                if found:
                    return found
        return None

    return search(0, [unit_vec(n, i) for i in range(n)], ())


def lie_flag(S: LieAlgebra, M: LieModule) -> tuple[list[Vector], list[Character]]:
    """Basis of M triangularizing the action, with the diagonal characters."""
    if not is_solvable(S):
        raise NotSolvable("Lie triangularization needs a solvable algebra")
    n = M.dim
    flag: list[Vector] = []
    chars: list[Character] = []
    for _ in range(n):
        # induced action on M / span(flag), in complement coordinates
        Qm = quotient_module(M, flag) if flag else M
        found = common_eigenvector(list(Qm.rho), Qm.dim)
        if found is None:
            raise NonSplit(f"no rational common eigenvector at flag step {len(flag) + 1}")
        v, ts = found
        if not S.dim:
            ts = ()
        # lift: quotient coordinates sit on the non-pivot columns of span(flag)
        comp = _complement_columns(flag, n)
        lifted = [Fraction(0)] * n
        for c, j in zip(v, comp):
            lifted[j] = c
        flag.append(tuple(lifted))
        chars.append(Character(S, ts, check=False))
    return flag, chars


def _complement_columns(vectors: Sequence[Vector], n: int) -> list[int]:
    from .exactlinalg import row_space

    W = row_space(vectors, n) if vectors else []
    piv = {next(j for j, a in enumerate(w) if a) for w in W}
    return [j for j in range(n) if j not in piv]


def triangularized(M: LieModule, basis: Sequence[Vector]) -> list[RatMatrix]:
    P = RatMatrix.from_columns(list(basis), nrows=M.dim)
    Pinv = inverse(P)
    return [Pinv @ m @ P for m in M.rho]


def chi(S: LieAlgebra, M: LieModule) -> WeightMultiset:
    _, chars = lie_flag(S, M)
    return WeightMultiset(chars)


def adjoint_characters(S: LieAlgebra) -> list[Character]:
    return lie_flag(S, adjoint_module(S))[1]


def chi_exterior(S: LieAlgebra, p: int, flag_chars: Sequence[Character] | None = None) -> WeightMultiset:
    """Multiset of sums of p distinct adjoint flag characters."""
    if not 0 <= p <= S.dim:
        raise ValueError(f"degree {p} outside 0..{S.dim}")
    chars = list(flag_chars) if flag_chars is not None else adjoint_characters(S)
    counts: Counter = Counter()
    for combo in combinations(range(len(chars)), p):
        vals = [Fraction(0)] * S.dim
        for i in combo:
            vals = [a + b for a, b in zip(vals, chars[i].values)]
        counts[tuple(vals)] += 1
    return WeightMultiset({Character(S, v, check=False): m for v, m in counts.items()})


def exterior_supports(S: LieAlgebra, flag_chars: Sequence[Character] | None = None) -> list[list[Character]]:
    """Supports of chi_exterior for every degree, by incremental subset sums."""
    chars = list(flag_chars) if flag_chars is not None else adjoint_characters(S)
    # layer[p] = set of distinct sums using p of the characters seen so far
    layers: list[set] = [{tuple(Fraction(0) for _ in range(S.dim))}] + [set() for _ in chars]
    for k, c in enumerate(chars):
        for p in range(k + 1, 0, -1):
            layers[p] |= {tuple(a + b for a, b in zip(v, c.values)) for v in layers[p - 1]}
    return [sorted(Character(S, v, check=False) for v in layer) for layer in layers]


def weights_mod_second_derived(S: LieAlgebra) -> WeightMultiset:
    series = derived_series(S)
    second = series[2] if len(series) > 2 else Subspace.zero(S)
    Qm = quotient_module(adjoint_module(S), list(second.basis))
    return chi(S, Qm)
