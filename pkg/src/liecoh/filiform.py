"""The filiform algebras f_n = E x| V_n, their rank-two solvable extensions s_n,
the q-binomial weight count of exterior powers of V_n, and the weight diagrams
of H*(f_n)."""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from .errors import OutOfRange, TheoremCheckFailure
from .exactlinalg import RatMatrix, rank
from .liealg import LieAlgebra, semidirect
from .rootsys import extreme_points

Weight = tuple[int, int]
ALPHA: Weight = (2, 0)


def beta(n: int, k: int) -> Weight:
    return (n - 2 * k, 1)


def _check_n(n: int) -> None:
    if n < 1:
        raise OutOfRange("n must be at least 1")


def filiform(n: int) -> LieAlgebra:
    """Basis (E, e_n, e_{n-2}, ..., e_{-n}); [E, e_{n-2k}] = e_{n-2k+2} for k >= 1."""
    _check_n(n)
    table = {(0, 1 + k): {k: 1} for k in range(1, n + 1)}
    labels = ["E"] + [f"e{n - 2 * k}" for k in range(n + 1)]
    return LieAlgebra(n + 2, table, labels)


def s_n_derivations(n: int) -> tuple[RatMatrix, RatMatrix]:
    H = RatMatrix.diag([2] + [n - 2 * k for k in range(n + 1)])
    I = RatMatrix.diag([0] + [1] * (n + 1))
    return H, I


def s_n_algebra(n: int) -> LieAlgebra:
    """span(H, I) x| f_n with basis (H, I, E, e_n, ..., e_{-n})."""
    return semidirect(list(s_n_derivations(n)), filiform(n), ["H", "I"] + list(filiform(n).labels))


# ---------------------------------------------------------------------------
# Laurent polynomials and the q-binomial formula


@dataclass(frozen=True)
class LaurentPoly:
    coeffs: tuple[tuple[int, int], ...]  # sorted (exponent, coefficient), nonzero

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((e, c) for e, c in d.items() if c)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.coeffs)

    def coefficient(self, e: int) -> int:
        return self.as_dict().get(e, 0)

    def at_one(self) -> int:
        return sum(c for _, c in self.coeffs)

    def is_palindromic(self) -> bool:
        d = self.as_dict()
        return all(d.get(-e, 0) == c for e, c in d.items())

    def coefficient_list(self, step: int = 2) -> list[int]:
        if not self.coeffs:
            return []
        lo, hi = self.coeffs[0][0], self.coeffs[-1][0]
        d = self.as_dict()
        return [d.get(e, 0) for e in range(lo, hi + 1, step)]

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*q^{e}" if c != 1 else f"q^{e}" for e, c in self.coeffs)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(a[i + len(b) - 1], b[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[i] = c
        for j, y in enumerate(b):
            a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


def gaussian_binomial(m: int, k: int) -> list[int]:
    """Coefficients (low first) of [m choose k]_x."""
    if k < 0 or k > m:
        return [0]
    num, den = [1], [1]
    for i in range(k):
        num = _poly_mul(num, [1] + [0] * (m - i - 1) + [-1])  # 1 - x^{m-i}
        den = _poly_mul(den, [1] + [0] * i + [-1])  # 1 - x^{i+1}
    return _poly_divexact(num, den)


def exterior_character(n: int, p: int) -> LaurentPoly:
    """Weights of Lambda^p V_n: q^{-p(n+1-p)} [n+1 choose p]_{q^2}."""
    if not 0 <= p <= n + 1:
        raise OutOfRange(f"p must lie in 0..{n + 1}")
    g = gaussian_binomial(n + 1, p)
    shift = -p * (n + 1 - p)
    return LaurentPoly.from_dict({shift + 2 * j: c for j, c in enumerate(g)})


def exterior_character_bruteforce(n: int, p: int) -> LaurentPoly:
    """Same count by enumerating p-subsets of the weights n, n-2, ..., -n."""
    weights = [n - 2 * k for k in range(n + 1)]
    return LaurentPoly.from_dict(Counter(sum(S) for S in combinations(weights, p)))


def highest_weight_multiplicities(n: int, p: int) -> dict[int, int]:
    """m(w) = coeff(w) - coeff(w + 2) for w >= 0."""
    d = exterior_character(n, p).as_dict()
    out = {}
    for w in sorted(d):
        if w >= 0:
            m = d.get(w, 0) - d.get(w + 2, 0)
            if m < 0:
                raise TheoremCheckFailure("negative highest-weight multiplicity")
            if m:
                out[w] = m
    return out


# ---------------------------------------------------------------------------
# weight diagrams of H*(f_n)


@dataclass
class FiliformDiagram:
    """Per degree p: plotted weight -> multiplicity, for classes coming from
    E-invariants of Lambda^p V* (diamonds) and E-coinvariants of
    Lambda^{p-1} V* tensored with E* (bullets). Plotted weights are the
    negatives of the (H, I)-weights of the classes."""

    n: int
    diamonds: dict[int, dict[Weight, int]] = field(default_factory=dict)
    bullets: dict[int, dict[Weight, int]] = field(default_factory=dict)

    def dims(self) -> tuple[int, ...]:
        return tuple(
            sum(self.diamonds.get(p, {}).values()) + sum(self.bullets.get(p, {}).values()) for p in range(self.n + 3)
        )

    def weights(self, p: int) -> dict[Weight, int]:
        out: Counter = Counter()
        out.update(self.diamonds.get(p, {}))
        out.update(self.bullets.get(p, {}))
        return dict(out)

    def diamond_set(self) -> set[Weight]:
        return {w for d in self.diamonds.values() for w in d}

    def bullet_set(self) -> set[Weight]:
        return {w for d in self.bullets.values() for w in d}

    def rows(self) -> list[tuple[int, Weight, int, str]]:
        out = []
        for p in range(self.n + 3):
            dm = self.diamonds.get(p, {})
            bl = self.bullets.get(p, {})
            for w in sorted(set(dm) | set(bl)):
                marker = "both" if (w in dm and w in bl) else ("diamond" if w in dm else "bullet")
                out.append((p, w, dm.get(w, 0) + bl.get(w, 0), marker))
        return out

    def to_csv(self) -> str:
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["degree", "weight_H", "weight_I", "multiplicity", "marker"])
        for p, w, m, mk in self.rows():
            wr.writerow([p, w[0], w[1], m, mk])
        return buf.getvalue()

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "filiform_diagram",
            "n": self.n,
            "betti": list(self.dims()),
            "classes": [{"degree": p, "weight": list(w), "multiplicity": m, "marker": mk} for p, w, m, mk in self.rows()],
        }

    def to_text(self) -> str:
        """Grid in plotted coordinates: 'D' diamond, 'o' bullet, '#' both; digits for multiplicity > 1."""
        cells: dict[Weight, str] = {}
        dset, bset = self.diamond_set(), self.bullet_set()
        mult: Counter = Counter()
        for p in range(self.n + 3):
            for w, m in self.weights(p).items():
                mult[w] += m
        for w in dset | bset:
            ch = "#" if (w in dset and w in bset) else ("D" if w in dset else "o")
            cells[w] = ch + (str(mult[w]) if mult[w] > 1 else "")
        if not cells:
            return ""
        xs = [w[0] for w in cells]
        ys = [w[1] for w in cells]
        lines = []
        for y in range(max(ys), min(ys) - 1, -1):
            row = "".join(cells.get((x, y), ".").rjust(4) for x in range(min(xs), max(xs) + 1))
            lines.append(f"{y:>3} |{row}")
        lines.append("     " + "".join(f"{x:>4}" for x in range(min(xs), max(xs) + 1)))
        return "\n".join(lines)


def _cochain_weight(n: int, S) -> Weight:
    # (H, I)-weight of e^S: minus the sum of the weights of the e's in S
    return (-sum(n - 2 * k for k in S), -len(S))


def _theta_E(n: int, p: int, src: list, dst_index: dict) -> RatMatrix:
    """theta_0(E) from Lambda^p V* (subsets of 0..n) to itself, restricted to
    the given source subsets; E e_{n-2k} = e_{n-2k+2}, so
    theta(E) e*^j = -e*^{j+1} (index k -> k-1 on the dual side)."""
    rows: list[dict] = [{} for _ in range(len(dst_index))]
    for col, S in enumerate(src):
        # (theta f)(x_T) = -f(E x_T); in dual terms e*^S -> -sum over i of e*^{S with s_i -> s_i + 1}
        for i, s in enumerate(S):
            if s == n:
                continue
            t = s + 1
            if t in S:
                continue
            T = tuple(sorted(S[:i] + (t,) + S[i + 1:]))
            pos = T.index(t)
            sign = -1 if (i - pos) % 2 == 0 else 1
            r = dst_index[T]
            rows[r][col] = rows[r].get(col, 0) + sign
    return RatMatrix.from_sparse(len(dst_index), len(src), rows)


def filiform_cohomology_diagram(n: int) -> FiliformDiagram:
    """H^p(f_n) = (Lambda^p V*)^E + (Lambda^{p-1} V*)_E (x) E*, decorated by (H, I)-weights."""
    _check_n(n)
    if n > 8:
        raise OutOfRange("diagram computation is limited to n <= 8")
    m = n + 1
    diag = FiliformDiagram(n)
    ker_by_degree: dict[int, dict[Weight, int]] = {}
    coker_by_degree: dict[int, dict[Weight, int]] = {}
    for p in range(m + 1):
        subsets = list(combinations(range(m), p))
        by_w: dict[Weight, list] = {}
        for S in subsets:
            by_w.setdefault(_cochain_weight(n, S), []).append(S)
        ker: dict[Weight, int] = {}
        coker: dict[Weight, int] = {}
        # theta(E) raises the H-weight of dual cochains by 2
        for w, src in by_w.items():
            tgt_w = (w[0] + 2, w[1])
            tgt = by_w.get(tgt_w, [])
            r = rank(_theta_E(n, p, src, {T: i for i, T in enumerate(tgt)})) if tgt else 0
            if len(src) - r:
                ker[w] = len(src) - r
        for w, tgt in by_w.items():
            src_w = (w[0] - 2, w[1])
            src = by_w.get(src_w, [])
            r = rank(_theta_E(n, p, src, {T: i for i, T in enumerate(tgt)})) if src else 0
            if len(tgt) - r:
                coker[w] = len(tgt) - r
        ker_by_degree[p] = ker
        coker_by_degree[p] = coker
    for p in range(m + 2):
        if p <= m:
            diag.diamonds[p] = {(-w[0], -w[1]): k for w, k in ker_by_degree[p].items()}
        if p >= 1:
            # E* has weight -alpha; plotted weight is the negative
            diag.bullets[p] = {(-w[0] + 2, -w[1]): k for w, k in coker_by_degree[p - 1].items()}
    _check_diagram(diag)
    return diag


def _check_diagram(diag: FiliformDiagram) -> None:
    n = diag.n
    m = n + 1
    for p in range(m + 1):
        hw = highest_weight_multiplicities(n, p)
        expect_d = {(-w, p): k for w, k in hw.items()}
        if diag.diamonds[p] != expect_d:
            raise TheoremCheckFailure(f"invariant classes in degree {p} disagree with the character formula")
        expect_b = {(w + 2, p): k for w, k in hw.items()}
        if diag.bullets[p + 1] != expect_b:
            raise TheoremCheckFailure(f"coinvariant classes in degree {p + 1} disagree with the character formula")
    # the two explicit families of classes
    for p in range(0, m + 1):
        low = tuple(-sum(c) for c in zip(*[beta(n, k) for k in range(n - p + 1, n + 1)])) if p else (0, 0)
        if diag.diamonds[p].get((-low[0], -low[1]), 0) < 1:
            raise TheoremCheckFailure(f"lowest wedge class missing in degree {p}")
    for p in range(1, m + 2):
        parts = [ALPHA] + [beta(n, k) for k in range(0, p - 1)]
        top = tuple(sum(c) for c in zip(*parts))
        if diag.bullets[p].get(top, 0) < 1:
            raise TheoremCheckFailure(f"top wedge class with E* missing in degree {p}")


# ---------------------------------------------------------------------------
# characters of s_n with nonvanishing cohomology


def polygon_vertices(n: int) -> list[Weight]:
    """0, alpha, alpha + beta_0, ..., alpha + beta_0 + ... + beta_n,
    beta_0 + ... + beta_n, beta_1 + ... + beta_n, ..., beta_n."""
    out: list[Weight] = [(0, 0), ALPHA]
    acc = ALPHA
    for k in range(n + 1):
        acc = (acc[0] + beta(n, k)[0], acc[1] + beta(n, k)[1])
        out.append(acc)
    for j in range(n + 1):
        parts = [beta(n, k) for k in range(j, n + 1)]
        out.append(tuple(sum(c) for c in zip(*parts)))
    return out


@dataclass
class SnGammaReport:
    n: int
    direct: list[dict[Weight, int]]
    via_diagram: list[dict[Weight, int]]
    vertices: list[Weight]

    @property
    def agree(self) -> bool:
        return self.direct == self.via_diagram

    @property
    def vertices_in_gamma(self) -> bool:
        union = set().union(*[set(d) for d in self.direct])
        return set(self.vertices) <= union

    @property
    def ok(self) -> bool:
        return self.agree and self.vertices_in_gamma

    def gamma_union(self) -> set[Weight]:
        return set().union(*[set(d) for d in self.direct])

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "s_n_gamma",
            "n": self.n,
            "ok": self.ok,
            "routes_agree": self.agree,
            "vertices_in_gamma": self.vertices_in_gamma,
            "vertices": [list(v) for v in self.vertices],
            "degrees": [
                {"degree": p, "gamma": [{"weight": list(w), "dim": d} for w, d in sorted(g.items())]}
                for p, g in enumerate(self.direct)
            ],
        }


def gamma_s_n(n: int) -> SnGammaReport:
    from .gamma import gamma_circ

    if n > 7:
        raise OutOfRange("s_n reports are limited to n <= 7")
    S = s_n_algebra(n)
    direct = []
    for p in range(S.dim + 1):
        direct.append({(int(l.values[0]), int(l.values[1])): d for l, d in gamma_circ(S, p).items()
                       if not any(l.values[2:])})
        if any(any(l.values[2:]) for l in gamma_circ(S, p)):
            raise TheoremCheckFailure("character of s_n does not vanish on f_n")
    diag = filiform_cohomology_diagram(n)
    via = []
    for p in range(S.dim + 1):
        acc: Counter = Counter()
        for i, c in enumerate((1, 2, 1)):
            if p - i >= 0:
                for w, m in diag.weights(p - i).items():
                    acc[w] += c * m
        via.append(dict(acc))
    verts = polygon_vertices(n)
    hull = extreme_points(set().union(*[set(d) for d in via]))
    if hull != set(verts):
        raise TheoremCheckFailure("polygon vertices differ from the hull of the character set")
    return SnGammaReport(n, direct, via, verts)
