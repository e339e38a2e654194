"""Lie algebras given by rational structure constants, and their structure theory."""

from __future__ import annotations

import json
import random
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import (
    JacobiViolation,
    NonSplit,
    NotADerivation,
    NotAnIdeal,
    NotCommuting,
    NotSolvable,
    ParseError,
    SearchExhausted,
)
from .exactlinalg import (
    Q,
    RatMatrix,
    Vector,
    fmt,
    inverse,
    is_nilpotent_matrix,
    kernel_basis,
    rank,
    row_space,
    unit_vec,
)


def _add_into(acc: dict, vecd: Mapping, c) -> None:
    for k, v in vecd.items():
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


class LieAlgebra:
    """A finite-dimensional Lie algebra over Q.

    ``brackets`` maps pairs ``(i, j)`` of 0-based basis indices to the
    coefficients ``{k: c}`` of ``[x_i, x_j] = sum_k c x_k``. Pairs with
    ``i > j`` are accepted and flipped; only ``i < j`` is stored.
    """

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
        labels: Sequence[str] | None = None,
        check: bool = True,
    ):
        self.dim = dim
        self.labels = tuple(labels) if labels is not None else tuple(f"x{i + 1}" for i in range(dim))
        if len(self.labels) != dim:
            raise ValueError("label count differs from dimension")
        table: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), coeffs in (brackets or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"bracket index out of range: {(i, j)}")
            if i == j:
                if any(Q(c) != 0 for c in coeffs.values()):
                    raise ValueError(f"[x{i},x{i}] must vanish")
                continue
            sign = 1
            if i > j:
                i, j, sign = j, i, -1
            entry = table.setdefault((i, j), {})
            for k, c in coeffs.items():
                if not 0 <= k < dim:
                    raise IndexError(f"bracket target out of range: {k}")
                s = entry.get(k, Fraction(0)) + sign * Q(c)
                if s:
                    entry[k] = s
                else:
                    entry.pop(k, None)
        self._table = {key: val for key, val in table.items() if val}
        bt: list[list[dict]] = [[{} for _ in range(dim)] for _ in range(dim)]
        for (i, j), val in self._table.items():
            bt[i][j] = val
            bt[j][i] = {k: -c for k, c in val.items()}
        self._bt = bt
        if check:
            validate(self)

    # -- basic protocol -----------------------------------------------------
    @property
    def table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        return {key: dict(val) for key, val in self._table.items()}

    def bracket_basis(self, i: int, j: int) -> dict[int, Fraction]:
        return self._bt[i][j]

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        acc: dict = {}
        nzu = [(i, a) for i, a in enumerate(u) if a]
        nzv = [(j, b) for j, b in enumerate(v) if b]
        for i, a in nzu:
            row = self._bt[i]
            for j, b in nzv:
                if row[j]:
                    _add_into(acc, row[j], a * b)
        return tuple(Fraction(acc.get(k, 0)) for k in range(self.dim))

    def basis(self) -> list[Vector]:
        return [unit_vec(self.dim, i) for i in range(self.dim)]

    def is_abelian(self) -> bool:
        return not self._table

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    def __hash__(self) -> int:
        return hash((self.dim, tuple(sorted((k, tuple(sorted(v.items()))) for k, v in self._table.items()))))

    def __repr__(self) -> str:
        parts = []
        for (i, j), val in sorted(self._table.items()):
            rhs = " + ".join(f"{fmt(c)}*{self.labels[k]}" for k, c in sorted(val.items()))
            parts.append(f"[{self.labels[i]},{self.labels[j]}]={rhs}")
        return f"LieAlgebra(dim={self.dim}; {', '.join(parts) or 'abelian'})"

    def relabel(self, labels: Sequence[str]) -> "LieAlgebra":
        return LieAlgebra(self.dim, self._table, labels, check=False)


# ---------------------------------------------------------------------------
# validation and matrices


def jacobi_residual(L: LieAlgebra, i: int, j: int, k: int) -> dict[int, Fraction]:
    acc: dict = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for m, coef in L._bt[a][b].items():
            _add_into(acc, L._bt[m][c], coef)
    return acc


def validate(L: LieAlgebra) -> bool:
    """Check the Jacobi identity on every basis triple; raise on the first failure."""
    for i, j, k in combinations(range(L.dim), 3):
        res = jacobi_residual(L, i, j, k)
        if res:
            residual = tuple(Fraction(res.get(m, 0)) for m in range(L.dim))
            raise JacobiViolation(i, j, k, residual)
    return True


def ad_matrix(L: LieAlgebra, v: Sequence) -> RatMatrix:
    """Matrix of ad(v) = [v, .]; column j holds [v, x_j]."""
    rows: list[dict] = [{} for _ in range(L.dim)]
    for i, a in enumerate(v):
        if not a:
            continue
        for j in range(L.dim):
            for k, c in L._bt[i][j].items():
                s = rows[k].get(j, 0) + a * c
                if s:
                    rows[k][j] = s
                else:
                    rows[k].pop(j, None)
    return RatMatrix.from_sparse(L.dim, L.dim, rows)


def ad_basis(L: LieAlgebra, i: int) -> RatMatrix:
    return ad_matrix(L, unit_vec(L.dim, i))


def killing_matrix(L: LieAlgebra) -> RatMatrix:
    ads = [ad_basis(L, i) for i in range(L.dim)]
    return RatMatrix([[(ads[i] @ ads[j]).trace() for j in range(L.dim)] for i in range(L.dim)])


def is_derivation(L: LieAlgebra, D: RatMatrix) -> bool:
    return derivation_defect(L, D) is None


def derivation_defect(L: LieAlgebra, D: RatMatrix):
    """First pair (i, j) where D[x_i,x_j] != [Dx_i,x_j] + [x_i,Dx_j], or None."""
    cols = D.columns()
    for i, j in combinations(range(L.dim), 2):
        lhs = D.apply(L.bracket(unit_vec(L.dim, i), unit_vec(L.dim, j)))
        rhs1 = L.bracket(cols[i], unit_vec(L.dim, j))
        rhs2 = L.bracket(unit_vec(L.dim, i), cols[j])
        if any(a != b + c for a, b, c in zip(lhs, rhs1, rhs2)):
            return (i, j)
    return None


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Subspace of a Lie algebra kept in canonical (integer-cleared echelon) form."""

    def __init__(self, ambient: LieAlgebra, vectors: Iterable[Sequence]):
        self.ambient = ambient
        vectors = [tuple(Q(a) for a in v) for v in vectors]
        self.basis: tuple[Vector, ...] = tuple(row_space(vectors, ambient.dim))
        self._pivots = tuple(next(j for j, a in enumerate(b) if a) for b in self.basis)

    @classmethod
    def whole(cls, L: LieAlgebra) -> "Subspace":
        return cls(L, L.basis())

    @classmethod
    def zero(cls, L: LieAlgebra) -> "Subspace":
        return cls(L, [])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient.dim == other.ambient.dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash(self.basis)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, basis={[[fmt(a) for a in b] for b in self.basis]})"

    def coordinates(self, v: Sequence) -> Vector | None:
        """Coordinates of v in ``self.basis``, or None when v is outside."""
        coords = []
        rem = list(Q(a) for a in v)
        for b, pc in zip(self.basis, self._pivots):
            c = rem[pc] / b[pc]
            coords.append(c)
            if c:
                for j, a in enumerate(b):
                    if a:
                        rem[j] -= c * a
        if any(rem):
            return None
        return tuple(coords)

    def contains(self, v: Sequence) -> bool:
        return self.coordinates(v) is not None

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def __and__(self, other: "Subspace") -> "Subspace":
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient)
        cols = list(self.basis) + [tuple(-a for a in w) for w in other.basis]
        M = RatMatrix.from_columns(cols, nrows=self.ambient.dim)
        out = []
        for k in kernel_basis(M):
            v = [Fraction(0)] * self.ambient.dim
            for c, b in zip(k[: self.dim], self.basis):
                if c:
                    v = [x + c * y for x, y in zip(v, b)]
            out.append(v)
        return Subspace(self.ambient, out)

    def complement_in(self, bigger: "Subspace") -> list[Vector]:
        """Vectors of ``bigger``'s canonical basis completing self to bigger."""
        chosen: list[Vector] = []
        current = list(self.basis)
        r = len(current)
        for v in bigger.basis:
            trial = current + [v]
            if rank(RatMatrix(trial)) > r:
                current = trial
                chosen.append(v)
                r += 1
        return chosen

    def complement(self) -> list[Vector]:
        """Standard basis vectors at the non-pivot columns."""
        piv = set(self._pivots)
        return [unit_vec(self.ambient.dim, j) for j in range(self.ambient.dim) if j not in piv]

    def bracket_with(self, other: "Subspace") -> "Subspace":
        L = self.ambient
        return Subspace(L, [L.bracket(u, v) for u in self.basis for v in other.basis])

    def is_subalgebra(self) -> bool:
        L = self.ambient
        return all(self.contains(L.bracket(u, v)) for u, v in combinations(self.basis, 2))

    def is_ideal(self) -> bool:
        L = self.ambient
        return all(self.contains(L.bracket(x, v)) for x in L.basis() for v in self.basis)


def subalgebra(U: Subspace, labels: Sequence[str] | None = None) -> LieAlgebra:
    """The subalgebra U as a Lie algebra in the basis ``U.basis``."""
    L = U.ambient
    table = {}
    for i, j in combinations(range(U.dim), 2):
        c = U.coordinates(L.bracket(U.basis[i], U.basis[j]))
        if c is None:
            raise NotAnIdeal("subspace is not closed under the bracket")
        table[(i, j)] = {k: a for k, a in enumerate(c) if a}
    return LieAlgebra(U.dim, table, labels, check=False)


def change_basis(L: LieAlgebra, B: RatMatrix, labels: Sequence[str] | None = None) -> LieAlgebra:
    """L rewritten in the basis given by the columns of B."""
    Binv = inverse(B)
    cols = B.columns()
    table = {}
    for i, j in combinations(range(L.dim), 2):
        c = Binv.apply(L.bracket(cols[i], cols[j]))
        table[(i, j)] = {k: a for k, a in enumerate(c) if a}
    return LieAlgebra(L.dim, table, labels, check=False)


def normalizer(U: Subspace) -> Subspace:
    """{x : [x, U] in U}."""
    L = U.ambient
    ann = kernel_basis(RatMatrix(U.basis, ncols=L.dim)) if U.basis else L.basis()
    rows = []
    for u in U.basis:
        A = ad_matrix(L, u)  # x -> [u, x]
        for phi in ann:
            rows.append(tuple(sum((phi[k] * A[k, j] for k in range(L.dim)), Fraction(0)) for j in range(L.dim)))
    if not rows:
        return Subspace.whole(L)
    return Subspace(L, kernel_basis(RatMatrix(rows, ncols=L.dim)))


# ---------------------------------------------------------------------------
# series and structure


def derived_series(L: LieAlgebra) -> list[Subspace]:
    series = [Subspace.whole(L)]
    while True:
        cur = series[-1]
        nxt = cur.bracket_with(cur)
        if nxt == cur:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    whole = Subspace.whole(L)
    series = [whole]
    while True:
        cur = series[-1]
        nxt = whole.bracket_with(cur)
        if nxt == cur:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].dim == 0


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L)[-1].dim == 0


def nilradical(L: LieAlgebra) -> Subspace:
    """Largest nilpotent ideal of a split solvable algebra (radical of the Killing form)."""
    if not is_solvable(L):
        raise NotSolvable("nilradical is only computed for solvable algebras")
    K = killing_matrix(L)
    N = Subspace(L, kernel_basis(K))
    if not N.is_ideal():
        raise NonSplit("Killing radical is not an ideal")
    if not all(is_nilpotent_matrix(ad_matrix(L, v)) for v in N.basis):
        raise NonSplit("Killing radical contains non ad-nilpotent elements")
    if N.dim and not is_nilpotent(subalgebra(N)):
        raise NonSplit("Killing radical is not a nilpotent ideal")
    return N


def fitting_null(L: LieAlgebra, v: Sequence) -> Subspace:
    A = ad_matrix(L, v)
    return Subspace(L, kernel_basis(A ** L.dim))


REGULAR_SEED = 0


def _regular_candidates(L: LieAlgebra, seed: int = REGULAR_SEED):
    """Basis vectors, pairs e_i + e_j, then seeded small combinations of a
    complement of the nilradical (roots vanish on the nilradical, so a
    generic such combination is regular), then seeded generic vectors."""
    n = L.dim
    for i in range(n):
        yield {i: 1}
    for i, j in combinations(range(n), 2):
        yield {i: 1, j: 1}
    rng = random.Random(seed)
    comp = nilradical(L).complement()
    for bound in range(2, 2 * n + 2):
        for _ in range(4):
            v: dict[int, int] = {}
            for c in comp:
                k = rng.randint(1, bound)
                for i, a in enumerate(c):
                    if a:
                        v[i] = v.get(i, 0) + k * a
            yield v
    while True:
        yield {i: rng.randint(-3 * n, 3 * n) for i in range(n)}


def cartan_subalgebra(L: LieAlgebra, seed: int = REGULAR_SEED) -> Subspace:
    """A nilpotent self-normalizing subalgebra, as the Fitting null component of
    a regular element found by a deterministic search."""
    if not is_solvable(L):
        raise NotSolvable("Cartan search is implemented for solvable algebras")
    n = L.dim
    if n == 0:
        return Subspace.zero(L)
    budget = n + n * (n - 1) // 2 + 8 * n + 72
    for count, cand in enumerate(_regular_candidates(L, seed)):
        if count >= budget:
            break
        v = tuple(Fraction(cand.get(i, 0)) for i in range(n))
        F = fitting_null(L, v)
        if not F.is_subalgebra():
            raise NonSplit("Fitting null component is not a subalgebra")
        if is_nilpotent(subalgebra(F)) and normalizer(F) == F:
            return F
    raise SearchExhausted(f"no regular element among the first {budget} candidates")


def derivation_space(L: LieAlgebra) -> list[RatMatrix]:
    """Basis of Der(L), as the kernel of the derivation equations in the n^2 unknowns D[k][l]."""
    n = L.dim
    rows = []
    for i, j in combinations(range(n), 2):
        br = L._bt[i][j]
        for m in range(n):
            row: dict[int, Fraction] = {}
            # D[x_i,x_j] component m
            for k, c in br.items():
                _add_into(row, {m * n + k: 1}, c)
            # -[D x_i, x_j]_m = -sum_k D[k][i] c_{kj}^m
            for k in range(n):
                c = L._bt[k][j].get(m)
                if c:
                    _add_into(row, {k * n + i: 1}, -c)
                c = L._bt[i][k].get(m)
                if c:
                    _add_into(row, {k * n + j: 1}, -c)
            if row:
                rows.append(row)
    if not rows:
        sols = [unit_vec(n * n, t) for t in range(n * n)]
    else:
        sols = kernel_basis(RatMatrix.from_sparse(len(rows), n * n, rows))
    return [RatMatrix([s[r * n:(r + 1) * n] for r in range(n)]) for s in sols]


def diagonal_derivations(L: LieAlgebra) -> list[RatMatrix]:
    """Basis of the derivations that are diagonal in the given basis."""
    n = L.dim
    rows = []
    for (i, j), val in L._table.items():
        for k in val:
            row = {k: Fraction(1)}
            _add_into(row, {i: 1}, -1)
            _add_into(row, {j: 1}, -1)
            if row:
                rows.append(row)
    if not rows:
        sols = [unit_vec(n, t) for t in range(n)]
    else:
        sols = kernel_basis(RatMatrix.from_sparse(len(rows), n, rows))
    return [RatMatrix.diag(s) for s in sols]


# ---------------------------------------------------------------------------
# constructions


def semidirect(
    derivations: RatMatrix | Sequence[RatMatrix],
    H: LieAlgebra,
    labels: Sequence[str] | None = None,
) -> LieAlgebra:
    """a x| H with a abelian spanned by the given commuting derivations of H.

    Basis order: the a-basis first, then the basis of H.
    """
    if isinstance(derivations, RatMatrix):
        derivations = [derivations]
    derivations = list(derivations)
    r = len(derivations)
    for idx, D in enumerate(derivations):
        if D.shape != (H.dim, H.dim):
            raise NotADerivation(idx, "wrong shape")
        bad = derivation_defect(H, D)
        if bad is not None:
            raise NotADerivation(idx, f"fails on pair {bad}")
    for a, b in combinations(range(r), 2):
        if not derivations[a].commutator(derivations[b]).is_zero():
            raise NotCommuting(a, b)
    table: dict = {}
    for (i, j), val in H._table.items():
        table[(i + r, j + r)] = {k + r: c for k, c in val.items()}
    for a, D in enumerate(derivations):
        for j in range(H.dim):
            col = {k + r: c for k, c in enumerate(D.col(j)) if c}
            if col:
                table[(a, j + r)] = col
    if labels is None:
        alabels = ["D"] if r == 1 else [f"D{a + 1}" for a in range(r)]
        labels = alabels + list(H.labels)
    return LieAlgebra(r + H.dim, table, labels)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    table = dict(L1._table)
    off = L1.dim
    for (i, j), val in L2._table.items():
        table[(i + off, j + off)] = {k + off: c for k, c in val.items()}
    labels = list(L1.labels) + list(L2.labels)
    if len(set(labels)) != len(labels):
        labels = [f"{lab}_1" for lab in L1.labels] + [f"{lab}_2" for lab in L2.labels]
    return LieAlgebra(L1.dim + L2.dim, table, labels, check=False)


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, {}, [f"a{i + 1}" for i in range(n)])


def heisenberg3() -> LieAlgebra:
    return LieAlgebra(3, {(0, 1): {2: 1}}, ["x", "y", "z"])


# ---------------------------------------------------------------------------
# file format


def algebra_to_dict(L: LieAlgebra) -> dict:
    brackets = []
    for (i, j), val in sorted(L._table.items()):
        brackets.append([i + 1, j + 1, [[k + 1, fmt(c)] for k, c in sorted(val.items())]])
    return {"dim": L.dim, "basis": list(L.labels), "brackets": brackets}


def dumps_algebra(L: LieAlgebra) -> str:
    return json.dumps(algebra_to_dict(L), indent=1)


def _entry_line(text: str, index: int) -> int | None:
    # best-effort line of the index-th bracket entry (three-level list opening)
    pos = text.find('"brackets"')
    if pos < 0:
        return None
    depth, seen = 0, -1
    for off, ch in enumerate(text[pos:]):
        if ch == "[":
            depth += 1
            if depth == 2:
                seen += 1
                if seen == index:
                    return text.count("\n", 0, pos + off) + 1
        elif ch == "]":
            depth -= 1
            if depth == 0:
                break
    return None


def algebra_from_dict(data: Mapping, text: str | None = None, check: bool = True) -> LieAlgebra:
    def fail(reason, idx=None):
        line = _entry_line(text, idx) if (text is not None and idx is not None) else None
        raise ParseError(line, reason)

    if not isinstance(data, Mapping):
        fail("top level must be an object")
    if "dim" not in data:
        fail("missing field 'dim'")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 0:
        fail("'dim' must be a non-negative integer")
    labels = data.get("basis")
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim):
        fail("'basis' must list one label per dimension")
    table: dict = {}
    for idx, entry in enumerate(data.get("brackets", [])):
        if not (isinstance(entry, list) and len(entry) == 3 and isinstance(entry[2], list)):
            fail(f"bracket entry {idx + 1} must be [i, j, [[k, coeff], ...]]", idx)
        i, j, terms = entry
        if not (isinstance(i, int) and isinstance(j, int)):
            fail(f"bracket entry {idx + 1}: indices must be integers", idx)
        if i >= j:
            fail(f"bracket entry {idx + 1}: need i < j, got {i}, {j}", idx)
        if not (1 <= i <= dim and 1 <= j <= dim):
            fail(f"bracket entry {idx + 1}: index out of range 1..{dim}", idx)
        if (i - 1, j - 1) in table:
            fail(f"bracket entry {idx + 1}: duplicate pair ({i}, {j})", idx)
        coeffs = {}
        for term in terms:
            if not (isinstance(term, list) and len(term) == 2 and isinstance(term[0], int)):
                fail(f"bracket entry {idx + 1}: terms must be [k, \"p/q\"]", idx)
            k, c = term
            if not 1 <= k <= dim:
                fail(f"bracket entry {idx + 1}: target {k} out of range", idx)
            try:
                coeffs[k - 1] = Q(c) if isinstance(c, (str, int)) else Q(str(c))
            except (ValueError, ZeroDivisionError):
                fail(f"bracket entry {idx + 1}: bad rational {c!r}", idx)
        table[(i - 1, j - 1)] = coeffs
    return LieAlgebra(dim, table, labels, check=check)


def loads_algebra(text: str, check: bool = True) -> LieAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    return algebra_from_dict(data, text, check=check)


def restrict_to_span(L: LieAlgebra, vectors: Sequence[Sequence]) -> Subspace:
    return Subspace(L, vectors)
