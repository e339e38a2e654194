"""Characters with nonvanishing cohomology, total cohomology, and the checks
tying them to the adjoint weights."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .cohomology import WeightGrading, _full_cochains, cartan_grading
from .errors import CommutationFailure, NonSplit, TheoremCheckFailure
from .exactlinalg import Q, RatMatrix, fmt, rational_eigenvalues
from .liealg import LieAlgebra, Subspace, ad_matrix, subalgebra
from .modules import Character, character_sum
from .weights import adjoint_characters, exterior_supports, weights_mod_second_derived


class _GammaContext:
    """Flag characters, candidate supports and the Cartan grading of one algebra."""

    def __init__(self, S: LieAlgebra):
        self.S = S
        self.flag = adjoint_characters(S)
        self.supports = exterior_supports(S, self.flag)
        self.grading: WeightGrading = cartan_grading(S)
        self._dims: dict[Character, tuple[int, ...]] = {}
        self._check_blocks()

    def _check_blocks(self) -> None:
        # block weights of the grading are the restrictions of the candidates
        for p, cands in enumerate(self.supports):
            targets = sorted({self.grading.target(c) for c in cands})
            if len(targets) != len(cands):
                raise TheoremCheckFailure("distinct candidates agree on the Cartan subalgebra")
            if targets != self.grading.block_weights_in_degree(p):
                raise TheoremCheckFailure(f"flag weights and Cartan weights disagree in degree {p}")

    def dims(self, lam: Character) -> tuple[int, ...]:
        if lam not in self._dims:
            self._dims[lam] = self.grading.character_dims(lam)
        return self._dims[lam]


@lru_cache(maxsize=32)
def _context(S: LieAlgebra) -> _GammaContext:
    return _GammaContext(S)


def gamma_candidates(S: LieAlgebra, p: int) -> list[Character]:
    """Support of chi_exterior(S, p), sorted by value vector."""
    ctx = _context(S)
    if not 0 <= p <= S.dim:
        return []
    return list(ctx.supports[p])


def character_cohomology_dims(S: LieAlgebra, lam: Character) -> tuple[int, ...]:
    """dim H^p(S, lam) for every p, via the weight block of lam."""
    return _context(S).dims(lam)


def gamma_circ(S: LieAlgebra, p: int) -> dict[Character, int]:
    ctx = _context(S)
    out = {}
    for lam in gamma_candidates(S, p):
        h = ctx.dims(lam)[p]
        if h:
            out[lam] = h
    return out


@dataclass
class GammaDegree:
    degree: int
    candidates: list[Character]
    survivors: dict[Character, int]

    @property
    def total(self) -> int:
        return sum(self.survivors.values())


@dataclass
class GammaReport:
    algebra: LieAlgebra
    degrees: list[GammaDegree]
    name: str = ""

    @property
    def th(self) -> tuple[int, ...]:
        return tuple(d.total for d in self.degrees)

    def gamma(self, p: int) -> list[Character]:
        return sorted(self.degrees[p].survivors)

    def characters(self) -> list[Character]:
        return sorted({c for d in self.degrees for c in d.survivors})

    def table(self) -> list[list[int]]:
        chars = self.characters()
        return [[d.survivors.get(c, 0) for c in chars] for d in self.degrees]

    def to_json(self) -> dict:
        chars = self.characters()
        return {
            "schema": 1,
            "kind": "gamma",
            "algebra": self.name,
            "dim": self.algebra.dim,
            "characters": [c.to_strings() for c in chars],
            "table": self.table(),
            "TH": list(self.th),
            "degrees": [
                {
                    "degree": d.degree,
                    "candidates": [c.to_strings() for c in d.candidates],
                    "gamma": [{"character": c.to_strings(), "dim": h} for c, h in sorted(d.survivors.items())],
                }
                for d in self.degrees
            ],
        }

    def to_csv(self) -> str:
        chars = self.characters()
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["degree"] + ["(" + ";".join(c.to_strings()) + ")" for c in chars] + ["TH"])
        for d, row in zip(self.degrees, self.table()):
            w.writerow([d.degree] + row + [d.total])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"total cohomology of {self.name or 'algebra'} (dim {self.algebra.dim}): TH = {list(self.th)}"]
        for d in self.degrees:
            items = ", ".join(f"({', '.join(c.to_strings())})^{h}" for c, h in sorted(d.survivors.items()))
            lines.append(f"  p={d.degree}: {items or '-'}")
        return "\n".join(lines)


def total_cohomology(S: LieAlgebra, name: str = "") -> GammaReport:
    ctx = _context(S)
    degrees = []
    for p in range(S.dim + 1):
        degrees.append(GammaDegree(p, gamma_candidates(S, p), gamma_circ(S, p)))
    # lowest and highest degree are one-dimensional
    zero = Character.zero(S)
    if degrees[0].survivors != {zero: 1}:
        raise TheoremCheckFailure("degree zero must carry only the zero character")
    top = character_sum(S, ctx.flag)
    if degrees[-1].survivors != {top: 1}:
        raise TheoremCheckFailure("top degree must carry only the trace character")
    return GammaReport(S, degrees, name)


# ---------------------------------------------------------------------------
# codimension-one correspondence


def _restrict_char(lam: Character, h: LieAlgebra, H: Subspace) -> Character:
    return Character(h, [lam(b) for b in H.basis], check=False)


def r_p_sets(S: LieAlgebra, H: Subspace, D: Sequence, p: int) -> set[tuple[Fraction, Character]]:
    """Pairs (z, mu): mu with H^p(h, mu) != 0 and z an eigenvalue of
    -theta_0(D) on that space, computed on the full cochain complex of h."""
    D = tuple(Q(a) for a in D)
    h = subalgebra(H)
    adD = ad_matrix(S, D)
    Dh = RatMatrix.from_columns([H.coordinates(adD.apply(b)) for b in H.basis], nrows=H.dim)
    out: set = set()
    if not 0 <= p <= h.dim:
        return out
    for mu in gamma_circ(h, p):
        # mu o D must vanish for theta_0(D) to commute with d
        if any(mu(Dh.col(j)) for j in range(h.dim)):
            raise CommutationFailure("character of the ideal is not D-invariant")
        C = _full_cochains(h, mu.module())
        op = C.induced(Dh, None, p)
        eigs, split = rational_eigenvalues(-op)
        if not split:
            raise NonSplit("induced action has non-rational eigenvalues")
        for z in set(eigs):
            out.add((z, mu))
    return out


def check_r_correspondence(S: LieAlgebra, H: Subspace, D: Sequence) -> bool:
    """Check that lam -> (lam(D), lam|_h) maps Gamma^p(S) onto R^p u R^{p-1}."""
    D = tuple(Q(a) for a in D)
    h = subalgebra(H)
    prev: set = set()
    for p in range(S.dim + 1):
        cur = r_p_sets(S, H, D, p) if p <= h.dim else set()
        image = {(lam(D), _restrict_char(lam, h, H)) for lam in gamma_circ(S, p)}
        if len(image) != len(gamma_circ(S, p)) or image != cur | prev:
            raise TheoremCheckFailure(f"codimension-one correspondence fails in degree {p}")
        prev = cur
    return True


@dataclass
class Gamma1Check:
    ok: bool
    gamma1: list[Character]
    bound: list[Character]
    counterexamples: list[Character] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "gamma1": [c.to_strings() for c in self.gamma1],
            "bound": [c.to_strings() for c in self.bound],
            "counterexamples": [c.to_strings() for c in self.counterexamples],
        }


def verify_gamma1_bound(S: LieAlgebra) -> Gamma1Check:
    """Degree-one characters against the weights of S on S/S''."""
    g1 = sorted(gamma_circ(S, 1)) if S.dim else []
    bound = weights_mod_second_derived(S).support()
    bad = [c for c in g1 if c not in set(bound)]
    return Gamma1Check(not bad, g1, bound, bad)


def format_character(c: Character) -> str:
    return "(" + ", ".join(fmt(a) for a in c.values) + ")"
