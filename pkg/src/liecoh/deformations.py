"""Extensions, linear deformations of brackets, the nilshadow, and planes of
elementary deformations preserving total cohomology."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Mapping, Sequence

from .cohomology import graded_betti, torus_grading
from .errors import (
    ExtensionViolation,
    JacobiViolation,
    NotADerivation,
    NotAlternating,
    NotAnIdeal,
    NotCommuting,
    TauNonzero,
    TheoremCheckFailure,
)
from .exactlinalg import (
    Q,
    RatMatrix,
    Vector,
    fmt,
    inverse,
    kernel_basis,
    nilpotent_part,
    semisimple_part,
    unit_vec,
)
from .liealg import (
    LieAlgebra,
    Subspace,
    ad_matrix,
    cartan_subalgebra,
    change_basis,
    derivation_defect,
    derivation_space,
    derived_series,
    is_nilpotent,
    nilradical,
    semidirect,
    subalgebra,
    validate,
)

# ---------------------------------------------------------------------------
# extension data


def _zero(n: int) -> Vector:
    return tuple(Fraction(0) for _ in range(n))


@dataclass
class ExtensionData:
    """An extension of ``a`` by ``h``: alpha[i] acts on h for the i-th basis
    element of a, rho[(i, j)] (i < j) is the h-valued part of [X_i, X_j]."""

    a: LieAlgebra
    h: LieAlgebra
    alpha: list[RatMatrix]
    rho: dict[tuple[int, int], Vector] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.alpha) != self.a.dim:
            raise ValueError("alpha needs one matrix per basis element of a")
        rho = {}
        for (i, j), v in self.rho.items():
            v = tuple(Q(x) for x in v)
            if i == j:
                if any(v):
                    raise NotAlternating(f"rho({i},{i}) must vanish")
                continue
            if i > j:
                i, j, v = j, i, tuple(-x for x in v)
            rho[(i, j)] = v
        self.rho = rho

    def alpha_of(self, X: Sequence) -> RatMatrix:
        return _combo(self.alpha, X, self.h.dim)

    def rho_of(self, X: Sequence, Y: Sequence) -> Vector:
        return _alt(self.rho, X, Y, self.h.dim)


@dataclass
class DeformationDirection:
    beta: list[RatMatrix]
    tau: dict[tuple[int, int], Vector] = field(default_factory=dict)

    def __post_init__(self):
        tau = {}
        for (i, j), v in self.tau.items():
            v = tuple(Q(x) for x in v)
            if i == j:
                if any(v):
                    raise NotAlternating(f"tau({i},{i}) must vanish")
                continue
            if i > j:
                i, j, v = j, i, tuple(-x for x in v)
            tau[(i, j)] = v
        self.tau = tau

    def is_zero_tau(self) -> bool:
        return not any(any(v) for v in self.tau.values())


def _combo(mats: Sequence[RatMatrix], X: Sequence, n: int) -> RatMatrix:
    out = RatMatrix.zeros(n)
    for c, m in zip(X, mats):
        if c:
            out = out + m.scale(c)
    return out


def _alt(table: Mapping[tuple[int, int], Vector], X: Sequence, Y: Sequence, n: int) -> Vector:
    acc = [Fraction(0)] * n
    for (i, j), v in table.items():
        c = X[i] * Y[j] - X[j] * Y[i]
        if c:
            acc = [a + c * b for a, b in zip(acc, v)]
    return tuple(acc)


def _cyclic(triple):
    X, Y, Z = triple
    return ((X, Y, Z), (Y, Z, X), (Z, X, Y))


def _vsum(vs, n):
    acc = [Fraction(0)] * n
    for v in vs:
        acc = [a + b for a, b in zip(acc, v)]
    return tuple(acc)


def _ad_h(h: LieAlgebra, v: Vector) -> RatMatrix:
    return ad_matrix(h, v)


def _hom_residual(a: LieAlgebra, h: LieAlgebra, alpha, rho, i: int, j: int) -> RatMatrix:
    n = a.dim
    Xi, Xj = unit_vec(n, i), unit_vec(n, j)
    lhs = alpha[i].commutator(alpha[j])
    rhs = _combo(alpha, a.bracket(Xi, Xj), h.dim) + _ad_h(h, _alt(rho, Xi, Xj, h.dim))
    return lhs - rhs


def _cocycle_residual(a: LieAlgebra, h: LieAlgebra, alpha, rho, i: int, j: int, k: int) -> Vector:
    n = a.dim
    basis = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k))
    lhs = _vsum((_combo(alpha, X, h.dim).apply(_alt(rho, Y, Z, h.dim)) for X, Y, Z in _cyclic(basis)), h.dim)
    rhs = _vsum((_alt(rho, a.bracket(X, Y), Z, h.dim) for X, Y, Z in _cyclic(basis)), h.dim)
    return tuple(x - y for x, y in zip(lhs, rhs))


def validate_extension(E: ExtensionData) -> bool:
    """Check that alpha lands in Der(h) and both compatibility identities hold."""
    for idx, A in enumerate(E.alpha):
        bad = derivation_defect(E.h, A)
        if bad is not None:
            raise ExtensionViolation("derivation", (idx,), bad)
    for i, j in combinations(range(E.a.dim), 2):
        res = _hom_residual(E.a, E.h, E.alpha, E.rho, i, j)
        if not res.is_zero():
            raise ExtensionViolation("homomorphism", (i, j), res)
    for i, j, k in combinations(range(E.a.dim), 3):
        res = _cocycle_residual(E.a, E.h, E.alpha, E.rho, i, j, k)
        if any(res):
            raise ExtensionViolation("cocycle", (i, j, k), res)
    return True


def build_extension(E: ExtensionData, labels: Sequence[str] | None = None) -> LieAlgebra:
    """The bracket on a + h (a-basis first) defined by a, alpha, rho and h."""
    validate_extension(E)
    r = E.a.dim
    table: dict = {}
    for i, j in combinations(range(r), 2):
        entry = {k: c for k, c in E.a.bracket_basis(i, j).items()}
        for k, c in enumerate(E.rho.get((i, j), ())):
            if c:
                entry[r + k] = c
        if entry:
            table[(i, j)] = entry
    for i, A in enumerate(E.alpha):
        for j in range(E.h.dim):
            col = {r + k: c for k, c in enumerate(A.col(j)) if c}
            if col:
                table[(i, r + j)] = col
    for (i, j), val in E.h.table.items():
        table[(r + i, r + j)] = {r + k: c for k, c in val.items()}
    if labels is None:
        labels = [f"X{i + 1}" for i in range(r)] + list(E.h.labels)
    return LieAlgebra(r + E.h.dim, table, labels)


def extension_from_decomposition(S: LieAlgebra, a_vectors: Sequence[Vector], ideal: Subspace) -> tuple[ExtensionData, RatMatrix]:
    """Read S = a + h as an extension; also returns the change of basis (a, h)."""
    if not ideal.is_ideal():
        raise NotAnIdeal("the given subspace is not an ideal")
    r = len(a_vectors)
    if r + ideal.dim != S.dim:
        raise ValueError("a and the ideal do not span S")
    B = RatMatrix.from_columns(list(a_vectors) + list(ideal.basis), nrows=S.dim)
    Binv = inverse(B)
    h = subalgebra(ideal)
    alpha = []
    for X in a_vectors:
        A = ad_matrix(S, X)
        alpha.append(RatMatrix.from_columns([ideal.coordinates(A.apply(b)) for b in ideal.basis], nrows=ideal.dim))
    a_table = {}
    rho = {}
    for i, j in combinations(range(r), 2):
        c = Binv.apply(S.bracket(a_vectors[i], a_vectors[j]))
        a_table[(i, j)] = {k: x for k, x in enumerate(c[:r]) if x}
        rho[(i, j)] = tuple(c[r:])
    a = LieAlgebra(r, a_table, [f"X{i + 1}" for i in range(r)])
    return ExtensionData(a, h, alpha, rho), B


# ---------------------------------------------------------------------------
# linear deformations


def _check_alternating(sigma: Mapping[tuple[int, int], Mapping[int, object]]) -> None:
    for (i, j), val in sigma.items():
        if i == j and any(Q(c) for c in val.values()):
            raise NotAlternating(f"sigma({i},{i}) must vanish")
        if i > j and (j, i) in sigma:
            other = {k: -Q(c) for k, c in sigma[(j, i)].items()}
            mine = {k: Q(c) for k, c in val.items()}
            if {k: c for k, c in other.items() if c} != {k: c for k, c in mine.items() if c}:
                raise NotAlternating(f"sigma({i},{j}) != -sigma({j},{i})")


def _as_algebra(dim: int, table, check: bool = False) -> LieAlgebra:
    return LieAlgebra(dim, table, check=check)


def _sum_table(t1, t2, s=1) -> dict:
    out: dict = {}
    for key, val in t1.items():
        out[key] = dict(val)
    for key, val in t2.items():
        entry = out.setdefault(key, {})
        for k, c in val.items():
            entry[k] = entry.get(k, 0) + s * c
    return out


def mixed_cocycle_residual(mu: LieAlgebra, sigma: LieAlgebra) -> dict:
    """Per basis triple, the vector  cyc mu(sigma(x,y),z) + cyc sigma(mu(x,y),z)."""
    out = {}
    n = mu.dim
    for i, j, k in combinations(range(n), 3):
        acc: dict = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, coef in sigma._bt[a][b].items():
                for q, d in mu._bt[m][c].items():
                    acc[q] = acc.get(q, 0) + coef * d
            for m, coef in mu._bt[a][b].items():
                for q, d in sigma._bt[m][c].items():
                    acc[q] = acc.get(q, 0) + coef * d
        acc = {q: Fraction(v) for q, v in acc.items() if v}
        if acc:
            out[(i, j, k)] = acc
    return out


def _jacobi_ok(L: LieAlgebra) -> bool:
    try:
        validate(L)
        return True
    except JacobiViolation:
        return False


@dataclass
class InfinitesimalReport:
    is_deformation: bool
    sigma_is_lie: bool
    cocycle_residual: dict
    certified: list[str] = field(default_factory=list)


def is_infinitesimal_deformation(mu: LieAlgebra, sigma: Mapping[tuple[int, int], Mapping[int, object]]) -> InfinitesimalReport:
    """Whether mu + t sigma is a Lie bracket for all t.

    Holds iff sigma satisfies Jacobi and the mixed identity with mu. On a
    positive answer the brackets mu + sigma and mu + t sigma (t = 2, 3) are
    also validated.
    """
    _check_alternating(sigma)
    sig = _as_algebra(mu.dim, sigma)
    sigma_lie = _jacobi_ok(sig)
    residual = mixed_cocycle_residual(mu, sig)
    ok = sigma_lie and not residual
    certified = []
    if ok:
        for t in (1, 2, 3):
            if not _jacobi_ok(_as_algebra(mu.dim, _sum_table(mu.table, sig.table, t))):
                raise TheoremCheckFailure(f"mu + {t} sigma fails Jacobi although sigma is a Lie cocycle")
            certified.append(f"mu+{t}*sigma is a Lie bracket")
    return InfinitesimalReport(ok, sigma_lie, residual, certified)


@dataclass
class DeformationReport:
    conditions: dict[str, bool]
    witnesses: dict[str, tuple]
    cross_check: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.conditions.values())

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "conditions": self.conditions,
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
            "cross_check": self.cross_check,
        }


def _shifted(E: ExtensionData, D: DeformationDirection, t) -> ExtensionData:
    t = Q(t)
    alpha = [A + B.scale(t) for A, B in zip(E.alpha, D.beta)]
    keys = set(E.rho) | set(D.tau)
    rho = {}
    for key in keys:
        u = E.rho.get(key, _zero(E.h.dim))
        v = D.tau.get(key, _zero(E.h.dim))
        rho[key] = tuple(x + t * y for x, y in zip(u, v))
    return ExtensionData(E.a, E.h, alpha, rho)


def check_linear_deformation(E: ExtensionData, D: DeformationDirection) -> DeformationReport:
    """Conditions on (beta, tau) making (alpha + t beta, rho + t tau) an extension for every t:
    (1) beta(X), beta(Y) commute; (2) cyclic beta(X) tau(Y,Z) = 0;
    (3) [alpha X, beta Y] + [beta X, alpha Y] = beta[X,Y] + ad tau(X,Y);
    (4) cyclic beta(X) rho(Y,Z) + cyclic alpha(X) tau(Y,Z) = cyclic tau([X,Y], Z)."""
    a, h = E.a, E.h
    n, m = a.dim, h.dim
    conds = {"1": True, "2": True, "3": True, "4": True}
    wit: dict[str, tuple] = {}
    for i, j in combinations(range(n), 2):
        if conds["1"] and not D.beta[i].commutator(D.beta[j]).is_zero():
            conds["1"], wit["1"] = False, (i, j)
        Xi, Xj = unit_vec(n, i), unit_vec(n, j)
        lhs = E.alpha[i].commutator(D.beta[j]) + D.beta[i].commutator(E.alpha[j])
        rhs = _combo(D.beta, a.bracket(Xi, Xj), m) + ad_matrix(h, _alt(D.tau, Xi, Xj, m))
        if conds["3"] and lhs != rhs:
            conds["3"], wit["3"] = False, (i, j)
    for i, j, k in combinations(range(n), 3):
        basis = (unit_vec(n, i), unit_vec(n, j), unit_vec(n, k))
        cyc = _cyclic(basis)
        c2 = _vsum((_combo(D.beta, X, m).apply(_alt(D.tau, Y, Z, m)) for X, Y, Z in cyc), m)
        if conds["2"] and any(c2):
            conds["2"], wit["2"] = False, (i, j, k)
        lhs = _vsum(
            [_combo(D.beta, X, m).apply(_alt(E.rho, Y, Z, m)) for X, Y, Z in cyc]
            + [_combo(E.alpha, X, m).apply(_alt(D.tau, Y, Z, m)) for X, Y, Z in cyc],
            m,
        )
        rhs = _vsum((_alt(D.tau, a.bracket(X, Y), Z, m) for X, Y, Z in cyc), m)
        if conds["4"] and lhs != rhs:
            conds["4"], wit["4"] = False, (i, j, k)
    cross = {}
    for t in (1, -1, 2):
        try:
            validate_extension(_shifted(E, D, t))
            cross[str(t)] = True
        except ExtensionViolation:
            cross[str(t)] = False
    if all(conds.values()) and not all(cross.values()):
        raise TheoremCheckFailure("conditions hold but a shifted extension fails")
    return DeformationReport(conds, wit, cross)


def is_elementary(E: ExtensionData, D: DeformationDirection) -> bool:
    """beta a homomorphism into Der(h), commuting with alpha and killing rho."""
    if not D.is_zero_tau():
        raise TauNonzero("elementary directions have tau = 0")
    if not E.a.is_abelian():
        return False
    for B in D.beta:
        if derivation_defect(E.h, B) is not None:
            return False
    n = E.a.dim
    for i, j in combinations(range(n), 2):
        if not D.beta[i].commutator(D.beta[j]).is_zero():
            return False
    for i in range(n):
        for j in range(n):
            if not E.alpha[i].commutator(D.beta[j]).is_zero():
                return False
    for key, v in E.rho.items():
        if any(v):
            for B in D.beta:
                if any(B.apply(v)):
                    return False
    return True


def deform(E: ExtensionData, D: DeformationDirection, t) -> LieAlgebra:
    return build_extension(_shifted(E, D, t))


@dataclass
class SplitCertificate:
    first: DeformationDirection
    second: DeformationDirection
    first_elementary: bool
    second_elementary: bool
    corners: dict[tuple[int, int, int], bool]

    @property
    def ok(self) -> bool:
        return self.first_elementary and self.second_elementary and all(self.corners.values())


def split_elementary(E: ExtensionData, D: DeformationDirection, part1: Sequence[int]) -> SplitCertificate:
    """Split beta along a = a1 + a2 (a1 = basis indices ``part1``) and certify both stages."""
    if not is_elementary(E, D):
        raise ValueError("direction is not elementary")
    n = E.a.dim
    zero = RatMatrix.zeros(E.h.dim)
    p1 = set(part1)
    D1 = DeformationDirection([D.beta[i] if i in p1 else zero for i in range(n)])
    D2 = DeformationDirection([zero if i in p1 else D.beta[i] for i in range(n)])
    first = is_elementary(E, D1)
    second = is_elementary(_shifted(E, D1, 1), D2)
    corners = {}
    for t, t1, t2 in product((0, 1), repeat=3):
        alpha = [A.scale(t) + B1.scale(t1) + B2.scale(t2) for A, B1, B2 in zip(E.alpha, D1.beta, D2.beta)]
        rho = {key: tuple(t * x for x in v) for key, v in E.rho.items()}
        try:
            build_extension(ExtensionData(E.a, E.h, alpha, rho))
            corners[(t, t1, t2)] = True
        except (ExtensionViolation, JacobiViolation):
            corners[(t, t1, t2)] = False
    return SplitCertificate(D1, D2, first, second, corners)


# ---------------------------------------------------------------------------
# nilshadow


@dataclass
class NilshadowResult:
    original: LieAlgebra
    shadow: LieAlgebra
    nilradical: Subspace
    cartan: Subspace
    complement: list[Vector]
    semisimple_parts: list[RatMatrix]
    change_log: list[tuple[int, int, int, Fraction, Fraction]]

    def to_json(self) -> dict:
        from .liealg import algebra_to_dict

        return {
            "schema": 1,
            "kind": "nilshadow",
            "shadow": algebra_to_dict(self.shadow),
            "nilradical": [[fmt(a) for a in v] for v in self.nilradical.basis],
            "cartan": [[fmt(a) for a in v] for v in self.cartan.basis],
            "complement": [[fmt(a) for a in v] for v in self.complement],
            "semisimple_parts": [[[fmt(a) for a in row] for row in m.tolist()] for m in self.semisimple_parts],
            "change_log": [[i, j, k, fmt(o), fmt(nw)] for i, j, k, o, nw in self.change_log],
        }


def _complement_in_cartan(c: Subspace, n: Subspace) -> list[Vector]:
    return (c & n).complement_in(c)


def nilshadow(S: LieAlgebra) -> NilshadowResult:
    N = nilradical(S)
    C = cartan_subalgebra(S)
    a = _complement_in_cartan(C, N)
    if len(a) + N.dim != S.dim:
        raise TheoremCheckFailure("Cartan complement does not complete the nilradical")
    ss = [semisimple_part(ad_matrix(S, X)) for X in a]
    for x, y in combinations(range(len(ss)), 2):
        if not ss[x].commutator(ss[y]).is_zero():
            raise NotCommuting(x, y)
    for idx, T in enumerate(ss):
        if any(any(T.apply(Y)) for Y in a):
            raise TheoremCheckFailure("semisimple part does not vanish on the complement")
        if not all(N.contains(T.apply(v)) for v in N.basis):
            raise TheoremCheckFailure("semisimple part does not preserve the nilradical")
        if derivation_defect(S, T) is not None:
            raise NotADerivation(idx, "semisimple part of ad is not a derivation")
    B = RatMatrix.from_columns(list(a) + list(N.basis), nrows=S.dim)
    Binv = inverse(B)
    r = len(a)

    def a_part(v) -> Vector:
        return tuple(Binv.apply(v)[:r])

    def corr(X: Vector, Y: Vector) -> Vector:
        acc = [Fraction(0)] * S.dim
        for c, T in zip(a_part(X), ss):
            if c:
                acc = [p + c * q for p, q in zip(acc, T.apply(Y))]
        return tuple(acc)

    table = {}
    log = []
    for i, j in combinations(range(S.dim), 2):
        ei, ej = unit_vec(S.dim, i), unit_vec(S.dim, j)
        old = S.bracket(ei, ej)
        new = tuple(o - x + y for o, x, y in zip(old, corr(ei, ej), corr(ej, ei)))
        table[(i, j)] = {k: c for k, c in enumerate(new) if c}
        for k in range(S.dim):
            if old[k] != new[k]:
                log.append((i + 1, j + 1, k + 1, old[k], new[k]))
    shadow = LieAlgebra(S.dim, table, S.labels)
    if not is_nilpotent(shadow):
        raise TheoremCheckFailure("nilshadow is not nilpotent")
    for u, v in combinations(N.basis, 2):
        if shadow.bracket(u, v) != S.bracket(u, v):
            raise TheoremCheckFailure("nilshadow changes the bracket on the nilradical")
    # reached from S by the elementary direction ad(X)_s|_n at t = -1
    E, _ = extension_from_decomposition(S, a, N)
    beta = [RatMatrix.from_columns([N.coordinates(T.apply(b)) for b in N.basis], nrows=N.dim) for T in ss]
    Dir = DeformationDirection(beta)
    if r and not is_elementary(E, Dir):
        raise TheoremCheckFailure("semisimple direction is not elementary")
    if deform(E, Dir, -1) != change_basis(shadow, B):
        raise TheoremCheckFailure("nilshadow differs from the t = -1 deformation")
    return NilshadowResult(S, shadow, N, C, list(a), ss, log)


def shadow_betti(res: NilshadowResult) -> tuple[int, ...]:
    """Betti numbers of the nilshadow, graded by the torus of semisimple parts."""
    torus = [T for T in res.semisimple_parts if not T.is_zero()]
    if torus:
        return torus_grading(res.shadow, _independent(torus)).betti()
    return graded_betti(res.shadow)


def _independent(mats: Sequence[RatMatrix]) -> list[RatMatrix]:
    from .exactlinalg import rank

    chosen: list[RatMatrix] = []
    rows: list = []
    for m in mats:
        flat = tuple(a for row in m.tolist() for a in row)
        if rank(RatMatrix(rows + [flat])) > len(rows):
            rows.append(flat)
            chosen.append(m)
    return chosen


# ---------------------------------------------------------------------------
# total cohomology invariance


@dataclass
class InvarianceReport:
    th: tuple[int, ...]
    shadow_betti: tuple[int, ...]
    presentations: list[dict]

    @property
    def ok(self) -> bool:
        return self.th == self.shadow_betti and all(p["ok"] for p in self.presentations)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "th_invariance",
            "ok": self.ok,
            "TH": list(self.th),
            "shadow_betti": list(self.shadow_betti),
            "presentations": self.presentations,
        }


def jordan_presentations(S: LieAlgebra, res: NilshadowResult | None = None) -> list[tuple[int, Subspace, Vector]]:
    """Codimension-one ideals H_k = n + span(X_j, j != k) with D = X_k."""
    res = res or nilshadow(S)
    out = []
    for k, X in enumerate(res.complement):
        H = Subspace(S, list(res.nilradical.basis) + [Y for j, Y in enumerate(res.complement) if j != k])
        out.append((k, H, X))
    return out


def nilpotent_part_presentation(S: LieAlgebra, H: Subspace, D: Vector) -> LieAlgebra:
    """D_n x| H where D_n is the nilpotent part of ad(D) restricted to H."""
    h = subalgebra(H)
    A = ad_matrix(S, D)
    AD = RatMatrix.from_columns([H.coordinates(A.apply(b)) for b in H.basis], nrows=H.dim)
    return semidirect([nilpotent_part(AD)], h)


def verify_th_invariance(S: LieAlgebra, presentations: bool = True) -> InvarianceReport:
    from .gamma import total_cohomology

    th = total_cohomology(S).th
    res = nilshadow(S)
    sb = shadow_betti(res)
    pres = []
    if presentations:
        for k, H, X in jordan_presentations(S, res):
            G = nilpotent_part_presentation(S, H, X)
            th_n = total_cohomology(G).th
            pres.append({"direction": k + 1, "TH": list(th_n), "ok": th_n == th})
    return InvarianceReport(th, sb, pres)


# ---------------------------------------------------------------------------
# planes of elementary deformations


@dataclass
class DeformationPlane:
    plane_basis: list[RatMatrix]
    toral_basis: list[RatMatrix]
    samples: list[dict]
    extension: ExtensionData

    @property
    def ok(self) -> bool:
        return all(s["ok"] for s in self.samples)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "deformation_plane",
            "plane_dim": len(self.plane_basis),
            "toral_dim": len(self.toral_basis),
            "ok": self.ok,
            "samples": self.samples,
        }


MAX_SAMPLES = 27


def _grid_indices(total: int, cap: int) -> list[int]:
    if total <= cap:
        return list(range(total))
    return sorted({round(k * (total - 1) / (cap - 1)) for k in range(cap)})


def deformation_plane(S: LieAlgebra, ideal: Subspace | None = None, a: Sequence[Vector] | None = None,
                      max_samples: int = MAX_SAMPLES, sample_th: bool = True) -> DeformationPlane:
    """Derivations of the ideal commuting with ad(a) and killing [a, a]; the
    torus of semisimple parts of ad(a); total cohomology along sampled members."""
    from .gamma import total_cohomology

    res = None
    if ideal is None or a is None:
        res = nilshadow(S)
        ideal = ideal if ideal is not None else res.nilradical
        a = a if a is not None else res.complement
    if not ideal.is_ideal():
        raise NotAnIdeal("the given subspace is not an ideal")
    derived = derived_series(S)[1] if S.dim else Subspace.zero(S)
    if not ideal.contains_subspace(derived):
        raise NotAnIdeal("the ideal must contain the derived algebra")
    E, _ = extension_from_decomposition(S, list(a), ideal)
    h = E.h
    m = h.dim
    ders = derivation_space(h)
    # constraints: [D, alpha_i] = 0 and D([X_i, X_j]) = 0
    rows: list[list[Fraction]] = []
    for A in E.alpha:
        comms = [Dm.commutator(A) for Dm in ders]
        for p in range(m):
            for q in range(m):
                rows.append([cm[p, q] for cm in comms])
    for v in E.rho.values():
        imgs = [Dm.apply(v) for Dm in ders]
        for p in range(m):
            rows.append([im[p] for im in imgs])
    if rows and ders:
        coeffs = kernel_basis(RatMatrix(rows, ncols=len(ders)))
    else:
        coeffs = [unit_vec(len(ders), t) for t in range(len(ders))]
    plane = [_combo(ders, c, m) for c in coeffs]
    toral = _independent([semisimple_part(A) for A in E.alpha])
    toral = [T for T in toral if not T.is_zero()]
    r = S.dim - (res.nilradical.dim if res else nilradical(S).dim)
    if len(toral) < min(len(a), r):
        raise TheoremCheckFailure("toral part smaller than the rank of S over its nilradical")
    # toral directions must lie in the plane
    for T in toral:
        if any(not T.commutator(A).is_zero() for A in E.alpha) or any(any(T.apply(v)) for v in E.rho.values()):
            raise TheoremCheckFailure("semisimple part of ad(a) is not in the deformation plane")
    base_th = total_cohomology(S).th if sample_th else None
    samples = []
    ra, rt = len(a), len(toral)
    total = 3 ** (ra * rt) if rt else 1
    for idx in _grid_indices(total, max_samples):
        digits = []
        x = idx
        for _ in range(ra * rt):
            digits.append(x % 3 - 1)
            x //= 3
        beta = []
        for i in range(ra):
            cs = digits[i * rt:(i + 1) * rt]
            beta.append(_combo(toral, cs, m))
        Dir = DeformationDirection(beta)
        G = deform(E, Dir, 1)
        entry = {"coefficients": digits, "elementary": is_elementary(E, Dir)}
        if sample_th:
            th = total_cohomology(G).th
            entry["TH"] = list(th)
            entry["ok"] = th == base_th and entry["elementary"]
        else:
            entry["ok"] = entry["elementary"]
        samples.append(entry)
    return DeformationPlane(plane, toral, samples, E)
