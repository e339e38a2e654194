"""Rank-two root systems, Weyl groups, Borel subalgebras and the weight
polytopes of their nilradicals."""

from __future__ import annotations

import csv
import io
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import TheoremCheckFailure
from .liealg import LieAlgebra, Subspace, nilradical, subalgebra

Weight = tuple[int, ...]


@dataclass(frozen=True)
class RootSystem:
    """Simple roots and positive roots in figure coordinates.

    ``positive_coeffs[k]`` expresses the k-th positive root in the simple roots;
    ``cartan[i][j]`` is <alpha_i, alpha_j^vee>.
    """

    name: str
    simple: tuple[Weight, ...]
    positive_coeffs: tuple[tuple[int, ...], ...]
    cartan: tuple[tuple[int, ...], ...]
    # bracket table of the nilradical on positive-root indices: (i, j) -> (k, c)
    brackets: tuple[tuple[int, int, int, int], ...]

    @property
    def rank(self) -> int:
        return len(self.simple)

    def to_figure(self, coeffs) -> Weight:
        return tuple(sum(c * s[i] for c, s in zip(coeffs, self.simple)) for i in range(len(self.simple[0])))

    @property
    def positive(self) -> tuple[Weight, ...]:
        return tuple(self.to_figure(c) for c in self.positive_coeffs)

    @property
    def rho_coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(sum(c[i] for c in self.positive_coeffs), 2) for i in range(self.rank))


def _A1() -> RootSystem:
    return RootSystem("A1", ((2,),), ((1,),), ((2,),), ())


def _A1xA1() -> RootSystem:
    return RootSystem("A1xA1", ((2, 0), (0, 2)), ((1, 0), (0, 1)), ((2, 0), (0, 2)), ())


def _A2() -> RootSystem:
    # e1 = alpha, e2 = beta, e3 = alpha + beta
    return RootSystem("A2", ((2, 0), (-1, 1)), ((1, 0), (0, 1), (1, 1)), ((2, -1), (-1, 2)), ((0, 1, 2, 1),))


def _B2() -> RootSystem:
    # alpha short, beta long; x = [e_a, e_b], y = [e_a, x]
    return RootSystem(
        "B2",
        ((2, 0), (-2, 1)),
        ((1, 0), (0, 1), (1, 1), (2, 1)),
        ((2, -1), (-2, 2)),
        ((0, 1, 2, 1), (0, 2, 3, 1)),
    )


def _G2() -> RootSystem:
    # alpha short, beta long; x1 = [e_a, e_b], x2 = [e_a, x1], x3 = [e_a, x2],
    # x4 = [e_b, x3]; Jacobi then forces [x1, x2] = -x4
    return RootSystem(
        "G2",
        ((2, 0), (-3, 1)),
        ((1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)),
        ((2, -1), (-3, 2)),
        ((0, 1, 2, 1), (0, 2, 3, 1), (0, 3, 4, 1), (1, 4, 5, 1), (2, 3, 5, -1)),
    )


ROOT_SYSTEMS = {"A1": _A1, "A1xA1": _A1xA1, "A2": _A2, "B2": _B2, "G2": _G2}


def root_system(name: str) -> RootSystem:
    try:
        return ROOT_SYSTEMS[name]()
    except KeyError:
        raise ValueError(f"unknown root system {name!r}; choose from {sorted(ROOT_SYSTEMS)}") from None


# ---------------------------------------------------------------------------
# Weyl group


@dataclass(frozen=True)
class WeylElement:
    matrix: tuple[tuple[int, ...], ...]  # action on simple-root coordinates, columns = images of simple roots
    length: int
    rho_shift: Weight  # rho - w rho, figure coordinates

    def apply(self, coeffs) -> tuple[int, ...]:
        return tuple(sum(self.matrix[i][j] * coeffs[j] for j in range(len(coeffs))) for i in range(len(self.matrix)))


def _reflection(R: RootSystem, i: int) -> tuple[tuple[int, ...], ...]:
    r = R.rank
    # s_i(alpha_j) = alpha_j - <alpha_j, alpha_i^vee> alpha_i
    cols = []
    for j in range(r):
        col = [int(k == j) for k in range(r)]
        col[i] -= R.cartan[j][i]
        cols.append(col)
    return tuple(tuple(cols[j][k] for j in range(r)) for k in range(r))


def _matmul(A, B):
    n = len(A)
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def weyl_group(R: RootSystem) -> list[WeylElement]:
    """All Weyl group elements by breadth-first closure over simple reflections."""
    r = R.rank
    ident = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    gens = [_reflection(R, i) for i in range(r)]
    dist = {ident: 0}
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        for s in gens:
            v = _matmul(s, w)
            if v not in dist:
                dist[v] = dist[w] + 1
                queue.append(v)
    pos = set(R.positive_coeffs)
    out = []
    rho2 = tuple(sum(c[i] for c in R.positive_coeffs) for i in range(r))  # 2 rho
    for w, ell in sorted(dist.items(), key=lambda kv: (kv[1], kv[0])):
        img = lambda c: tuple(sum(w[i][j] * c[j] for j in range(r)) for i in range(r))  # noqa: E731
        inversions = sum(1 for c in R.positive_coeffs if tuple(-x for x in img(c)) in pos)
        if inversions != ell:
            raise TheoremCheckFailure("Weyl length differs from the inversion count")
        wrho2 = img(rho2)
        shift = tuple((a - b) // 2 for a, b in zip(rho2, wrho2))
        out.append(WeylElement(w, ell, R.to_figure(shift)))
    return out


def length_profile(R: RootSystem) -> tuple[int, ...]:
    counts = Counter(w.length for w in weyl_group(R))
    return tuple(counts[k] for k in range(max(counts) + 1))


# ---------------------------------------------------------------------------
# Borel subalgebra


def borel_algebra(R: RootSystem) -> LieAlgebra:
    """Cartan part h_1..h_r first, then e_gamma for the positive roots;
    h_i acts on e_gamma by the i-th figure coordinate of gamma."""
    r = R.rank
    pos = R.positive
    table: dict = {}
    for i in range(r):
        for k, g in enumerate(pos):
            if g[i]:
                table[(i, r + k)] = {r + k: g[i]}
    for a, b, c, coef in R.brackets:
        table[(r + a, r + b)] = {r + c: coef}
    labels = [f"h{i + 1}" for i in range(r)] + [f"e{k + 1}" for k in range(len(pos))]
    return LieAlgebra(r + len(pos), table, labels)


def borel_nilradical(R: RootSystem) -> LieAlgebra:
    b = borel_algebra(R)
    return subalgebra(Subspace(b, b.basis()[R.rank:]))


# ---------------------------------------------------------------------------
# Kostant prediction and polytopes


def kostant_gamma(R: RootSystem, p: int) -> set[Weight]:
    """Weights rho - w rho over lengths p - rank .. p."""
    return {w.rho_shift for w in weyl_group(R) if p - R.rank <= w.length <= p}


def chi_polytope(R: RootSystem, include_cartan: bool = False) -> dict[Weight, int]:
    """Multiplicities of sums of distinct positive roots; ``include_cartan``
    scales by 2^rank (the exterior algebra of the whole Borel)."""
    pos = R.positive
    counts: Counter = Counter()
    for k in range(len(pos) + 1):
        for S in combinations(pos, k):
            counts[tuple(sum(g[i] for g in S) for i in range(len(pos[0]) if pos else 0))] += 1
    scale = 2 ** R.rank if include_cartan else 1
    return {w: m * scale for w, m in sorted(counts.items())}


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def extreme_points(points) -> set[Weight]:
    """Vertices of the convex hull (collinear boundary points excluded)."""
    pts = sorted(set(points))
    if len(pts) <= 2 or len(pts[0]) == 1:
        return {pts[0], pts[-1]} if pts else set()
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return set(lower[:-1] + upper[:-1])


def polytope_grid(R: RootSystem, gamma: set[Weight] | None = None) -> str:
    """Text rendering: rows by second coordinate (top first); '*' marks Gamma vertices."""
    mult = chi_polytope(R)
    gamma = gamma or set()
    if R.rank == 1:
        return "  ".join(f"{w[0]}:{m}{'*' if w in gamma else ''}" for w, m in mult.items())
    xs = [w[0] for w in mult]
    ys = [w[1] for w in mult]
    lines = []
    for y in range(max(ys), min(ys) - 1, -1):
        cells = []
        for x in range(min(xs), max(xs) + 1):
            m = mult.get((x, y))
            cells.append(f"{m}{'*' if (x, y) in gamma else ''}".rjust(3) if m else "  .")
        lines.append(f"{y:>3} |" + "".join(cells))
    lines.append("     " + "".join(f"{x:>3}" for x in range(min(xs), max(xs) + 1)))
    return "\n".join(lines)


def polytope_csv(R: RootSystem, gamma: set[Weight]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["weight", "multiplicity", "is_gamma_vertex"])
    for wt, m in chi_polytope(R).items():
        w.writerow(["(" + ";".join(str(a) for a in wt) + ")", m, int(wt in gamma)])
    return buf.getvalue()


@dataclass
class KostantReport:
    name: str
    length_profile: tuple[int, ...]
    nilradical_betti: tuple[int, ...]
    predicted: list[set[Weight]]
    computed: list[dict[Weight, int]]
    vertices: set[Weight]

    @property
    def ok(self) -> bool:
        union = set().union(*self.predicted)
        return (
            self.length_profile == self.nilradical_betti
            and all(set(c) == p for c, p in zip(self.computed, self.predicted))
            and union == self.vertices
        )

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "borel",
            "type": self.name,
            "ok": self.ok,
            "length_profile": list(self.length_profile),
            "nilradical_betti": list(self.nilradical_betti),
            "degrees": [
                {
                    "degree": p,
                    "predicted": sorted(list(w) for w in pred),
                    "computed": [{"weight": list(w), "dim": d} for w, d in sorted(comp.items())],
                }
                for p, (pred, comp) in enumerate(zip(self.predicted, self.computed))
            ],
            "vertices": sorted(list(v) for v in self.vertices),
        }


def verify_kostant(R: RootSystem) -> KostantReport:
    from .cohomology import graded_betti
    from .gamma import gamma_circ

    b = borel_algebra(R)
    r = R.rank
    n = nilradical(b)
    if n.dim != len(R.positive):
        raise TheoremCheckFailure("Borel nilradical has the wrong dimension")
    betti = graded_betti(borel_nilradical(R))
    predicted, computed = [], []
    for p in range(b.dim + 1):
        predicted.append(kostant_gamma(R, p))
        comp = {}
        for lam, d in gamma_circ(b, p).items():
            if any(lam.values[r:]):
                raise TheoremCheckFailure("character of the Borel does not vanish on its nilradical")
            comp[tuple(int(v) for v in lam.values[:r])] = d
        computed.append(comp)
    verts = extreme_points(chi_polytope(R))
    return KostantReport(R.name, length_profile(R), betti, predicted, computed, verts)
