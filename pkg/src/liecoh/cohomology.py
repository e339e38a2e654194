"""Chevalley-Eilenberg cohomology, Lie derivatives on cochains, and the
reductions to an ideal of codimension one or to a torus of derivations.

Cochains of degree p live in the span of ``e^S (x) v_a`` for p-subsets S of the
basis (lexicographic) and module basis vectors v_a; the coordinate index of
that basis cochain is ``position(S) * dim V + a``.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import (
    CommutationFailure,
    ComplexTooLarge,
    ModuleMismatch,
    NonSplit,
    NotADerivation,
    NotAnIdeal,
    NotCommuting,
    NotSemisimple,
    TheoremCheckFailure,
    WrongCodimension,
)
from .exactlinalg import (
    Q,
    RatMatrix,
    Vector,
    kernel_basis,
    rank,
    rational_eigenvalues,
    rref,
    restrict,
    semisimple_part,
)
from .liealg import (
    LieAlgebra,
    Subspace,
    ad_matrix,
    change_basis,
    derivation_defect,
    semidirect,
    subalgebra,
)
from .modules import Character, LieModule, trivial_module

MAX_DIM = 16


def _guard(n: int) -> None:
    if n > MAX_DIM:
        raise ComplexTooLarge(f"refusing a cochain complex on an algebra of dimension {n} > {MAX_DIM}")


# ---------------------------------------------------------------------------
# sparse echelon helper


class _Echelon:
    """Fully reduced row echelon of sparse vectors, grown one vector at a time."""

    def __init__(self):
        self.rows: dict[int, dict] = {}

    def reduce(self, v: dict) -> dict:
        v = dict(v)
        for pc in [c for c in v if c in self.rows]:
            f = v.get(pc)
            if f:
                for j, a in self.rows[pc].items():
                    s = v.get(j, 0) - f * a
                    if s:
                        v[j] = s
                    else:
                        v.pop(j, None)
        return v

    def add(self, v: dict) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        pc = min(r)
        inv = 1 / r[pc]
        r = {j: a * inv for j, a in r.items()}
        for q, row in self.rows.items():
            f = row.get(pc)
            if f:
                for j, a in r.items():
                    s = row.get(j, 0) - f * a
                    if s:
                        row[j] = s
                    else:
                        row.pop(j, None)
        self.rows[pc] = r
        return True

    def __len__(self) -> int:
        return len(self.rows)


def _solve_columns(cols: list[dict], targets: list[dict]) -> list[list[Fraction]]:
    """Coefficients expressing each target in the independent columns ``cols``."""
    k = len(cols)
    if not targets:
        return []
    # rows of the augmented system: one per coordinate
    rowmap: dict[int, dict] = {}
    for j, c in enumerate(cols):
        for i, a in c.items():
            rowmap.setdefault(i, {})[j] = a
    for t, c in enumerate(targets):
        for i, a in c.items():
            rowmap.setdefault(i, {})[k + t] = a
    ncols = k + len(targets)
    M = RatMatrix.from_sparse(len(rowmap), ncols, list(rowmap.values()))
    pivrows, pivcols = rref(M)
    if pivcols and pivcols[-1] >= k:
        raise TheoremCheckFailure("vector not in the span of the given cohomology basis")
    out = []
    for t in range(len(targets)):
        x = [Fraction(0)] * k
        for r, pc in zip(pivrows, pivcols):
            x[pc] = r.get(k + t, Fraction(0))
        out.append(x)
    return out


# ---------------------------------------------------------------------------
# cochain spaces


class _Cochains:
    """Cochains on a family of basis subsets closed under the differential."""

    def __init__(self, L: LieAlgebra, rho: Sequence[RatMatrix] | None, dimV: int, subsets: list[list[tuple]]):
        self.L = L
        self.dimV = dimV
        self.rho = [m._rows for m in rho] if rho is not None else None
        self.subsets = subsets
        self.index = [{S: i for i, S in enumerate(layer)} for layer in subsets]
        self._d: dict[int, RatMatrix] = {}
        self._rank: dict[int, int] = {}
        self._hdata: dict[int, tuple] = {}
        self._checked = False

    @property
    def top(self) -> int:
        return len(self.subsets) - 1

    def size(self, p: int) -> int:
        if 0 <= p <= self.top:
            return len(self.subsets[p]) * self.dimV
        return 0

    def d(self, p: int) -> RatMatrix:
        """Coboundary C^p -> C^{p+1}."""
        if p in self._d:
            return self._d[p]
        nsrc, ndst = self.size(p), self.size(p + 1)
        if nsrc == 0 or ndst == 0:
            M = RatMatrix.zeros(ndst, nsrc)
            self._d[p] = M
            return M
        L, dimV, rho = self.L, self.dimV, self.rho
        src = self.index[p]
        rows: list[dict] = []
        for T in self.subsets[p + 1]:
            brow: list[dict] = [{} for _ in range(dimV)]
            m = len(T)
            # rho(x_{t_i}) f(.. omit i ..)
            if rho is not None:
                for i, t in enumerate(T):
                    act = rho[t]
                    if not any(act):
                        continue
                    S = T[:i] + T[i + 1:]
                    sidx = src.get(S)
                    sign = -1 if i % 2 else 1
                    for b in range(dimV):
                        for a, c in act[b].items():
                            if sidx is None:
                                raise TheoremCheckFailure("cochain block not closed under the differential")
                            col = sidx * dimV + a
                            s = brow[b].get(col, 0) + sign * c
                            if s:
                                brow[b][col] = s
                            else:
                                brow[b].pop(col, None)
            # f([x_i, x_j], .. omit i, j ..)
            for i in range(m):
                ti = T[i]
                for j in range(i + 1, m):
                    br = L._bt[ti][T[j]]
                    if not br:
                        continue
                    rest = T[:i] + T[i + 1:j] + T[j + 1:]
                    for k, c in br.items():
                        pos = bisect_left(rest, k)
                        if pos < len(rest) and rest[pos] == k:
                            continue
                        S = rest[:pos] + (k,) + rest[pos:]
                        sidx = src.get(S)
                        if sidx is None:
                            raise TheoremCheckFailure("cochain block not closed under the differential")
                        coef = c if (i + j + pos) % 2 == 0 else -c
                        for b in range(dimV):
                            col = sidx * dimV + b
                            s = brow[b].get(col, 0) + coef
                            if s:
                                brow[b][col] = s
                            else:
                                brow[b].pop(col, None)
            rows.extend(brow)
        M = RatMatrix._wrap(ndst, nsrc, rows)
        self._d[p] = M
        return M

    def rank_d(self, p: int) -> int:
        if p not in self._rank:
            self._rank[p] = rank(self.d(p)) if 0 <= p <= self.top else 0
        return self._rank[p]

    def dims(self) -> tuple[int, ...]:
        if not self._checked:
            self.check_square_zero()
            self._checked = True
        return tuple(self.size(p) - self.rank_d(p) - self.rank_d(p - 1) for p in range(self.top + 1))

    def check_square_zero(self) -> None:
        for p in range(self.top - 1):
            if not (self.d(p + 1) @ self.d(p)).is_zero():
                raise TheoremCheckFailure(f"d∘d != 0 in degree {p}")

    # -- cohomology bases -----------------------------------------------
    def hdata(self, p: int):
        """(representatives, coboundary echelon, reduced representatives)."""
        if p in self._hdata:
            return self._hdata[p]
        n = self.size(p)
        bech = _Echelon()
        if p > 0:
            dprev = self.d(p - 1)
            for col in dprev.T._rows:
                if col:
                    bech.add(col)
        if p < self.top:
            cands = kernel_basis(self.d(p))
        else:
            cands = [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
        ech = _Echelon()
        ech.rows = {k: dict(v) for k, v in bech.rows.items()}
        reps: list[dict] = []
        reduced: list[dict] = []
        for k in cands:
            kd = {i: a for i, a in enumerate(k) if a}
            if ech.add(kd):
                reps.append(kd)
                reduced.append(bech.reduce(kd))
        expected = self.size(p) - self.rank_d(p) - self.rank_d(p - 1)
        if len(reps) != expected:
            raise TheoremCheckFailure("cohomology basis size disagrees with rank count")
        self._hdata[p] = (reps, bech, reduced)
        return self._hdata[p]

    def coordinates(self, p: int, vectors: list[dict]) -> list[list[Fraction]]:
        """Coordinates of cocycles modulo coboundaries in the representative basis."""
        reps, bech, reduced = self.hdata(p)
        if not reps:
            for v in vectors:
                if bech.reduce(v):
                    raise TheoremCheckFailure("cocycle is not a coboundary although H^p = 0")
            return [[] for _ in vectors]
        return _solve_columns(reduced, [bech.reduce(v) for v in vectors])

    # -- Lie derivative ------------------------------------------------------
    def theta(self, D: RatMatrix, rhoD: RatMatrix | None, p: int) -> RatMatrix:
        """theta(D) f (x) = -f(D x) + rho(D) f(x) on degree p cochains."""
        dimV = self.dimV
        n = self.size(p)
        idx = self.index[p] if 0 <= p <= self.top else {}
        Dcols = [D.col(j) for j in range(D.ncols)]
        rows: list[dict] = []
        rhorows = rhoD._rows if rhoD is not None else None
        for sidx, T in enumerate(self.subsets[p]):
            brow: list[dict] = [{} for _ in range(dimV)]
            Tset = set(T)
            for i, t in enumerate(T):
                col = Dcols[t]
                for k, c in enumerate(col):
                    if not c:
                        continue
                    if k != t and k in Tset:
                        continue
                    rest = T[:i] + T[i + 1:]
                    pos = bisect_left(rest, k)
                    S = rest[:pos] + (k,) + rest[pos:]
                    tidx = idx.get(S)
                    if tidx is None:
                        raise TheoremCheckFailure("derivation does not preserve the cochain block")
                    coef = -c if (i - pos) % 2 == 0 else c
                    for b in range(dimV):
                        cc = tidx * dimV + b
                        s = brow[b].get(cc, 0) + coef
                        if s:
                            brow[b][cc] = s
                        else:
                            brow[b].pop(cc, None)
            if rhorows is not None:
                for b in range(dimV):
                    for a, c in rhorows[b].items():
                        cc = sidx * dimV + a
                        s = brow[b].get(cc, 0) + c
                        if s:
                            brow[b][cc] = s
                        else:
                            brow[b].pop(cc, None)
            rows.extend(brow)
        return RatMatrix._wrap(n, n, rows)

    def check_theta_commutes(self, D: RatMatrix, rhoD: RatMatrix | None) -> None:
        for p in range(self.top):
            lhs = self.theta(D, rhoD, p + 1) @ self.d(p)
            rhs = self.d(p) @ self.theta(D, rhoD, p)
            if lhs != rhs:
                raise CommutationFailure(f"theta does not commute with d in degree {p}")

    def induced(self, D: RatMatrix, rhoD: RatMatrix | None, p: int) -> RatMatrix:
        reps, _, _ = self.hdata(p)
        if not reps:
            return RatMatrix.zeros(0)
        th = self.theta(D, rhoD, p)
        images = [_apply_sparse(th, v) for v in reps]
        if p < self.top:
            dp = self.d(p)
            for w in images:
                if _apply_sparse(dp, w):
                    raise CommutationFailure("theta does not map cocycles to cocycles")
        coords = self.coordinates(p, images)
        return RatMatrix.from_columns(coords, nrows=len(reps))


def _apply_sparse(M: RatMatrix, v: dict) -> dict:
    out = {}
    for i, row in enumerate(M._rows):
        s = 0
        for j, a in v.items():
            b = row.get(j)
            if b:
                s += a * b
        if s:
            out[i] = Fraction(s)
    return out


def _all_subsets(n: int) -> list[list[tuple]]:
    return [list(combinations(range(n), p)) for p in range(n + 1)]


def _module_parts(L: LieAlgebra, V: LieModule | None):
    if V is None:
        return None, 1
    if V.algebra.dim != L.dim:
        raise ModuleMismatch("module is over a different algebra")
    if V.is_trivial():
        return None, V.dim
    return list(V.rho), V.dim


def _full_cochains(L: LieAlgebra, V: LieModule | None) -> _Cochains:
    _guard(L.dim)
    rho, dimV = _module_parts(L, V)
    return _Cochains(L, rho, dimV, _all_subsets(L.dim))


# ---------------------------------------------------------------------------
# public complex and cohomology


@dataclass(frozen=True)
class CochainComplex:
    algebra: LieAlgebra
    module: LieModule
    degree_dims: tuple[int, ...]
    d: tuple[RatMatrix, ...]
    subsets: tuple[tuple[tuple[int, ...], ...], ...] = field(repr=False)


@dataclass(frozen=True)
class CohomologySpace:
    degree: int
    dim: int
    representatives: tuple[Vector, ...]


def build_complex(L: LieAlgebra, V: LieModule | None = None) -> CochainComplex:
    V = V if V is not None else trivial_module(L)
    C = _full_cochains(L, V)
    C.check_square_zero()
    ds = tuple(C.d(p) for p in range(L.dim))
    return CochainComplex(L, V, tuple(C.size(p) for p in range(L.dim + 1)), ds,
                          tuple(tuple(layer) for layer in C.subsets))


def _check_euler(dims: Sequence[int], n: int, dimV: int) -> None:
    chi = sum((-1) ** p * h for p, h in enumerate(dims))
    expect = sum((-1) ** p * comb(n, p) for p in range(n + 1)) * dimV
    if chi != expect:
        raise TheoremCheckFailure(f"Euler characteristic {chi} != {expect}")


def cohomology(L: LieAlgebra, V: LieModule | None = None, representatives: bool = True) -> list[CohomologySpace]:
    C = _full_cochains(L, V)
    dims = C.dims()
    _check_euler(dims, L.dim, C.dimV)
    out = []
    for p, h in enumerate(dims):
        reps: tuple = ()
        if representatives and h:
            n = C.size(p)
            reps = tuple(tuple(v.get(i, Fraction(0)) for i in range(n)) for v in C.hdata(p)[0])
        out.append(CohomologySpace(p, h, reps))
    return out


def cohomology_dims(L: LieAlgebra, V: LieModule | None = None) -> tuple[int, ...]:
    C = _full_cochains(L, V)
    dims = C.dims()
    _check_euler(dims, L.dim, C.dimV)
    return dims


def betti(L: LieAlgebra) -> tuple[int, ...]:
    return cohomology_dims(L)


# ---------------------------------------------------------------------------
# Lie derivative and induced operators


def _check_derivation(H: LieAlgebra, D: RatMatrix) -> None:
    if D.shape != (H.dim, H.dim):
        raise NotADerivation(0, "wrong shape")
    bad = derivation_defect(H, D)
    if bad is not None:
        raise NotADerivation(0, f"fails on pair {bad}")


def lie_derivative_on_cochains(D: RatMatrix, H: LieAlgebra, p: int, V: LieModule | None = None,
                               rho_D: RatMatrix | None = None) -> RatMatrix:
    """Matrix of theta(D) on degree-p cochains of H with values in V.

    ``V`` is a module over H and ``rho_D`` the matrix by which D acts on V
    (zero when omitted); commutation with the coboundary is verified.
    """
    _check_derivation(H, D)
    C = _full_cochains(H, V)
    C.check_theta_commutes(D, rho_D)
    return C.theta(D, rho_D, p)


def induced_theta_on_H(D: RatMatrix, H: LieAlgebra, p: int, V: LieModule | None = None,
                       rho_D: RatMatrix | None = None) -> RatMatrix:
    """The operator induced by theta(D) on H^p(H, V), in the representative basis."""
    _check_derivation(H, D)
    C = _full_cochains(H, V)
    C.check_theta_commutes(D, rho_D)
    return C.induced(D, rho_D, p)


# ---------------------------------------------------------------------------
# gradings by generalized weights


def _joint_decomposition(family: Sequence[RatMatrix], n: int) -> list[tuple[tuple[Fraction, ...], list[Vector]]]:
    pieces: list[tuple[tuple, list[Vector]]] = [((), [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)])]
    for F in family:
        nxt = []
        for w, basis in pieces:
            if not basis:
                continue
            R = restrict(F, basis)
            eigs, split = rational_eigenvalues(R)
            if not split:
                raise NonSplit("operator family has non-rational eigenvalues")
            m = len(basis)
            for t in sorted(set(eigs)):
                A = R - RatMatrix.identity(m).scale(t)
                ks = kernel_basis(A ** m)
                vecs = []
                for coeffs in ks:
                    v = [Fraction(0)] * n
                    for c, b in zip(coeffs, basis):
                        if c:
                            v = [x + c * y for x, y in zip(v, b)]
                    vecs.append(tuple(v))
                nxt.append((w + (t,), vecs))
        pieces = nxt
    return pieces


class WeightGrading:
    """An algebra rewritten in a basis of joint generalized eigenvectors of a
    nilpotent family of derivations, with the weight of each basis vector.

    ``inner=True`` means the family is ad(c) for the basis ``generators`` of a
    nilpotent subalgebra; then H(L, lambda) only involves the block of cochains
    whose weight equals lambda on the generators.
    """

    def __init__(self, L: LieAlgebra, family: Sequence[RatMatrix], generators: Sequence[Vector] | None = None):
        _guard(L.dim)
        self.original = L
        self.family = list(family)
        self.generators = list(generators) if generators is not None else None
        for idx, F in enumerate(self.family):
            bad = derivation_defect(L, F)
            if bad is not None:
                raise NotADerivation(idx, f"fails on pair {bad}")
        pieces = _joint_decomposition(self.family, L.dim)
        basis: list[Vector] = []
        weights: list[tuple] = []
        for w, vecs in pieces:
            for v in vecs:
                basis.append(v)
                weights.append(w)
        self.change = RatMatrix.from_columns(basis, nrows=L.dim)
        self.algebra = change_basis(L, self.change, _adapted_labels(L))
        self.weights: tuple[tuple[Fraction, ...], ...] = tuple(weights)
        self._layers: dict[tuple, list[list[tuple]]] | None = None

    @property
    def inner(self) -> bool:
        return self.generators is not None

    def _blocks(self) -> dict[tuple, list[list[tuple]]]:
        if self._layers is None:
            n = self.algebra.dim
            m = len(self.family)
            zero = tuple(Fraction(0) for _ in range(m))
            blocks: dict[tuple, list[list[tuple]]] = {}
            for p in range(n + 1):
                for S in combinations(range(n), p):
                    w = zero
                    for i in S:
                        w = tuple(a + b for a, b in zip(w, self.weights[i]))
                    blocks.setdefault(w, [[] for _ in range(n + 1)])[p].append(S)
            self._layers = blocks
        return self._layers

    def block_weights(self) -> list[tuple]:
        return sorted(self._blocks())

    def block_weights_in_degree(self, p: int) -> list[tuple]:
        return sorted(w for w, layers in self._blocks().items() if layers[p])

    def block(self, w: tuple) -> list[list[tuple]]:
        n = self.algebra.dim
        return self._blocks().get(tuple(w), [[] for _ in range(n + 1)])

    def adapted_values(self, lam: Character) -> list[Fraction]:
        return [lam(c) for c in self.change.columns()]

    def target(self, lam: Character) -> tuple:
        if not self.inner:
            raise ValueError("character blocks need an inner grading")
        return tuple(lam(g) for g in self.generators)

    def block_cochains(self, w: tuple, lam_values: Sequence[Fraction] | None = None) -> _Cochains:
        rho = None
        if lam_values is not None and any(lam_values):
            rho = [RatMatrix([[a]]) for a in lam_values]
        return _Cochains(self.algebra, rho, 1, self.block(w))

    def character_dims(self, lam: Character) -> tuple[int, ...]:
        """dim H^p(L, lam) for all p from the single relevant block."""
        C = self.block_cochains(self.target(lam), self.adapted_values(lam))
        dims = C.dims()
        _check_euler(dims, self.algebra.dim, 1)
        return dims

    def betti(self) -> tuple[int, ...]:
        """Trivial-coefficient cohomology as a sum over all blocks."""
        n = self.algebra.dim
        total = [0] * (n + 1)
        zero = tuple(Fraction(0) for _ in self.family)
        for w in self._blocks():
            if self.inner and w != zero:
                continue
            for p, h in enumerate(self.block_cochains(w).dims()):
                total[p] += h
        _check_euler(total, n, 1)
        return tuple(total)


def _adapted_labels(L: LieAlgebra) -> list[str]:
    return [f"b{i + 1}" for i in range(L.dim)]


def cartan_grading(L: LieAlgebra, cartan: Subspace | None = None) -> WeightGrading:
    from .liealg import cartan_subalgebra

    c = cartan if cartan is not None else cartan_subalgebra(L)
    gens = list(c.basis)
    return WeightGrading(L, [ad_matrix(L, g) for g in gens], gens)


def torus_grading(L: LieAlgebra, torus: Sequence[RatMatrix]) -> WeightGrading:
    for a, b in combinations(range(len(torus)), 2):
        if not torus[a].commutator(torus[b]).is_zero():
            raise NotCommuting(a, b)
    for idx, T in enumerate(torus):
        if semisimple_part(T) != T:
            raise NotSemisimple(idx)
    return WeightGrading(L, torus, None)


def graded_betti(L: LieAlgebra, torus: Sequence[RatMatrix] | None = None) -> tuple[int, ...]:
    """Betti numbers via a torus of semisimple derivations (diagonal ones by default)."""
    from .liealg import diagonal_derivations

    if torus is None:
        torus = diagonal_derivations(L)
    return torus_grading(L, torus).betti()


# ---------------------------------------------------------------------------
# codimension-one reduction


def _restricted_data(G: LieAlgebra, H: Subspace, D: Sequence, V: LieModule | None):
    if not H.is_ideal():
        raise NotAnIdeal("H is not an ideal of G")
    if H.dim != G.dim - 1:
        raise WrongCodimension(f"H has codimension {G.dim - H.dim}, expected 1")
    if H.contains(D):
        raise WrongCodimension("D lies inside H")
    h = subalgebra(H)
    adD = ad_matrix(G, D)
    Dh = RatMatrix.from_columns([H.coordinates(adD.apply(b)) for b in H.basis], nrows=H.dim)
    if V is None:
        V = trivial_module(G)
    Vh = LieModule(h, [V.act(b) for b in H.basis], check=False)
    rhoD = V.act(D)
    return h, Dh, Vh, rhoD


def _hs_from_cochains(C: _Cochains, Dh: RatMatrix, rhoD: RatMatrix | None, ntop: int) -> tuple[int, ...]:
    rho_zero = rhoD is None or rhoD.is_zero()
    rD = None if rho_zero else rhoD
    hdims = C.dims()
    ranks = []
    for q in range(C.top + 1):
        if hdims[q] == 0:
            ranks.append(0)
            continue
        ranks.append(rank(C.induced(Dh, rD, q)))
    out = []
    for p in range(ntop + 1):
        inv = hdims[p] - ranks[p] if p <= C.top else 0
        coinv = hdims[p - 1] - ranks[p - 1] if 1 <= p <= C.top + 1 else 0
        out.append(inv + coinv)
    _check_euler(out, ntop, C.dimV)
    return tuple(out)


def hs_codim1_dims(G: LieAlgebra, H: Subspace, D: Sequence, V: LieModule | None = None,
                   cartan: Subspace | None = None) -> tuple[int, ...]:
    """dim H^p(G, V) from H^p(H, V): invariants in degree p plus coinvariants
    in degree p - 1 of the induced action of D.

    With ``cartan`` (a nilpotent subalgebra of G containing D) and a
    one-dimensional V, only the cochains of H in the weight block selected by
    V are used.
    """
    D = tuple(Q(a) for a in D)
    h, Dh, Vh, rhoD = _restricted_data(G, H, D, V)
    if cartan is None:
        C = _full_cochains(h, Vh)
        C.check_theta_commutes(Dh, rhoD)
        return _hs_from_cochains(C, Dh, rhoD, G.dim)
    if not cartan.contains(D):
        raise ValueError("the grading subalgebra must contain D")
    if Vh.dim != 1:
        raise ModuleMismatch("graded reduction needs one-dimensional coefficients")
    gens = list(cartan.basis)
    family = []
    for g in gens:
        A = ad_matrix(G, g)
        family.append(RatMatrix.from_columns([H.coordinates(A.apply(b)) for b in H.basis], nrows=H.dim))
    lam = [V.act(g)[0, 0] for g in gens] if V is not None else [Fraction(0)] * len(gens)
    grading = WeightGrading(h, family, None)
    vals = [Vh.act(c)[0, 0] for c in grading.change.columns()]
    Cinv = grading.change
    from .exactlinalg import inverse

    Dg = inverse(Cinv) @ Dh @ Cinv
    Cb = grading.block_cochains(tuple(lam), vals)
    return _hs_from_cochains(Cb, Dg, rhoD, G.dim)


# ---------------------------------------------------------------------------
# abelian torus of semisimple derivations


@lru_cache(maxsize=64)
def _invariant_data(A: tuple[RatMatrix, ...], H: LieAlgebra):
    """Trivial-coefficient cohomology of H with the induced actions of A."""
    C = _full_cochains(H, None)
    dims = C.dims()
    ops = []
    for q, h in enumerate(dims):
        ops.append([C.induced(D, None, q) if h else RatMatrix.zeros(0) for D in A])
    return dims, ops


def _check_torus(A: Sequence[RatMatrix], H: LieAlgebra) -> None:
    for idx, D in enumerate(A):
        if D.shape != (H.dim, H.dim):
            raise NotADerivation(idx, "wrong shape")
        bad = derivation_defect(H, D)
        if bad is not None:
            raise NotADerivation(idx, f"fails on pair {bad}")
        if semisimple_part(D) != D:
            raise NotSemisimple(idx)
    for a, b in combinations(range(len(A)), 2):
        if not A[a].commutator(A[b]).is_zero():
            raise NotCommuting(a, b)


def _joint_kernel_dim(mats: Sequence[RatMatrix], n: int) -> int:
    if n == 0:
        return 0
    if not mats:
        return n
    stacked = mats[0]
    for m in mats[1:]:
        stacked = stacked.vstack(m)
    return n - rank(stacked)


def torus_reduction_dims(A: Sequence[RatMatrix], H: LieAlgebra, V: LieModule | None = None) -> tuple[int, ...]:
    """dim H^p(a x| H, V) as sum_i C(r, i) dim H^{p-i}(H, V)^a.

    ``V`` is a module over ``semidirect(A, H)`` (a-basis first) on which the
    a-part acts semisimply. For a character trivial on H the invariants are
    computed from trivial-coefficient cohomology shifted by the character.
    """
    A = tuple(A)
    r = len(A)
    _check_torus(A, H)
    G_dim = r + H.dim
    if V is not None and V.algebra.dim != G_dim:
        raise ModuleMismatch("module must live on the semidirect product")
    rhoA = [V.rho[j] for j in range(r)] if V is not None else [RatMatrix.zeros(1) for _ in range(r)]
    for idx, m in enumerate(rhoA):
        if semisimple_part(m) != m:
            raise NotSemisimple(idx)
    trivial_on_h = V is None or all(V.rho[r + i].is_zero() for i in range(H.dim))
    if trivial_on_h and (V is None or V.dim == 1):
        dims, ops = _invariant_data(A, H)
        shifts = [m[0, 0] for m in rhoA]
        inv = []
        for q, h in enumerate(dims):
            mats = [op + RatMatrix.identity(h).scale(s) for op, s in zip(ops[q], shifts)] if h else []
            inv.append(_joint_kernel_dim(mats, h))
    else:
        Vh = LieModule(H, [V.rho[r + i] for i in range(H.dim)], check=False)
        C = _full_cochains(H, Vh)
        dims = C.dims()
        inv = []
        for q, h in enumerate(dims):
            mats = [C.induced(D, m, q) for D, m in zip(A, rhoA)] if h else []
            inv.append(_joint_kernel_dim(mats, h))
    out = []
    for p in range(G_dim + 1):
        out.append(sum(comb(r, i) * inv[p - i] for i in range(r + 1) if 0 <= p - i <= H.dim))
    _check_euler(out, G_dim, V.dim if V is not None else 1)
    return tuple(out)


def semidirect_character(A: Sequence[RatMatrix], H: LieAlgebra, a_values: Sequence) -> Character:
    """The character of a x| H that is ``a_values`` on the a-basis and zero on H."""
    G = semidirect(list(A), H)
    return Character(G, list(a_values) + [0] * H.dim)
