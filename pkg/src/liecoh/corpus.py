"""Corpus runner: every invariance check applied to every catalog member.

Each member pipeline is pure; results are plain dicts so that reports are
byte-identical whatever the parallelism width.
"""

from __future__ import annotations

import json
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from .catalog import catalog_entry, catalog_names, load
from .cohomology import cohomology_dims, hs_codim1_dims, torus_reduction_dims
from .deformations import (
    DeformationDirection,
    check_linear_deformation,
    deformation_plane,
    extension_from_decomposition,
    jordan_presentations,
    nilpotent_part_presentation,
    nilshadow,
    shadow_betti,
    split_elementary,
)
from .errors import LieCohError
from .exactlinalg import RatMatrix
from .filiform import filiform_cohomology_diagram, gamma_s_n
from .gamma import (
    character_cohomology_dims,
    check_r_correspondence,
    gamma_candidates,
    total_cohomology,
    verify_gamma1_bound,
)
from .liealg import LieAlgebra, cartan_subalgebra, is_nilpotent, is_solvable, semidirect, validate
from .rootsys import root_system, verify_kostant
from .weights import chi_exterior

# members up to this dimension get the ungraded complex as an extra oracle
DIRECT_ORACLE_DIM = 6
# codimension-one reduction uses the full complex of the ideal up to this dimension
HS_FULL_DIM = 8


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"check": self.name, "ok": self.ok}
        if self.detail:
            out["detail"] = self.detail
        if self.data:
            out["data"] = self.data
        return out


def _all_candidates(S: LieAlgebra):
    return sorted({c for p in range(S.dim + 1) for c in gamma_candidates(S, p)})


# ---------------------------------------------------------------------------
# individual checks; each returns (ok, detail, data)


def check_gamma(S: LieAlgebra):
    rep = total_cohomology(S)
    bad = []
    for d in rep.degrees:
        cands = set(d.candidates)
        support = set(chi_exterior(S, d.degree).support())
        if cands != support:
            bad.append(f"candidates differ from the exterior weights in degree {d.degree}")
        bad += [f"degree {d.degree}: {c.to_strings()} outside candidates" for c in d.survivors if c not in cands]
    return not bad, "; ".join(bad), {"TH": list(rep.th)}


def check_direct(S: LieAlgebra):
    """Graded character cohomology against the ungraded complex, and zero
    cohomology for characters outside the candidate sets."""
    if S.dim > DIRECT_ORACLE_DIM:
        return True, "skipped above dimension %d" % DIRECT_ORACLE_DIM, {}
    cands = _all_candidates(S)
    bad = []
    for lam in cands:
        direct = cohomology_dims(S, lam.module())
        if direct != character_cohomology_dims(S, lam):
            bad.append(f"{lam.to_strings()}: graded and direct dims differ")
        for p, h in enumerate(direct):
            if h and lam not in gamma_candidates(S, p):
                bad.append(f"{lam.to_strings()}: H^{p} != 0 outside the candidates")
    # a few characters that are not candidates in any degree
    cset = set(cands)
    probes = sorted({mu for lam in cands for mu in (lam.scale(-1), lam.scale(3)) if mu not in cset})[:6]
    for mu in probes:
        if any(cohomology_dims(S, mu.module())):
            bad.append(f"{mu.to_strings()}: nonzero cohomology for a non-candidate")
    return not bad, "; ".join(bad), {"characters": len(cands), "probes": len(probes)}


def check_gamma1(S: LieAlgebra):
    r = verify_gamma1_bound(S)
    return r.ok, "" if r.ok else f"counterexamples {[c.to_strings() for c in r.counterexamples]}", {}


def check_nilshadow(S: LieAlgebra):
    th = total_cohomology(S).th
    res = nilshadow(S)
    sb = shadow_betti(res)
    return th == sb, "" if th == sb else f"TH {list(th)} != nilshadow Betti {list(sb)}", {"shadow_betti": list(sb)}


def check_jordan(S: LieAlgebra):
    th = total_cohomology(S).th
    bad, seen = [], 0
    for k, H, X in jordan_presentations(S):
        G = nilpotent_part_presentation(S, H, X)
        seen += 1
        th_n = total_cohomology(G).th
        if th_n != th:
            bad.append(f"direction {k + 1}: TH {list(th_n)} != {list(th)}")
    return not bad, "; ".join(bad), {"presentations": seen}


def check_hs(S: LieAlgebra):
    pres = jordan_presentations(S)
    if not pres:
        return True, "no codimension-one presentation (nilpotent)", {}
    C = cartan_subalgebra(S)
    cands = _all_candidates(S)
    bad, n = [], 0
    for k, H, X in pres:
        for lam in cands:
            n += 1
            cartan = None if S.dim <= HS_FULL_DIM else C
            hs = hs_codim1_dims(S, H, X, lam.module(), cartan=cartan)
            direct = character_cohomology_dims(S, lam)
            if hs != direct:
                bad.append(f"direction {k + 1}, {lam.to_strings()}: {list(hs)} != {list(direct)}")
    return not bad, "; ".join(bad), {"triples": n}


def check_r_sets(S: LieAlgebra):
    pres = jordan_presentations(S)
    for k, H, X in pres:
        check_r_correspondence(S, H, X)
    return True, "", {"presentations": len(pres)}


def check_torus(S: LieAlgebra, name: str):
    e = catalog_entry(name) if name else None
    if e is None or e.torus is None:
        return True, "no torus presentation", {}
    got = e.torus()
    if got is None:
        return True, "no torus presentation", {}
    A, H = got
    G = semidirect(A, H)
    if G != S:
        return False, "torus presentation does not reproduce the algebra", {}
    bad = []
    cands = _all_candidates(S)
    for lam in cands:
        red = torus_reduction_dims(A, H, lam.module())
        direct = character_cohomology_dims(S, lam)
        if red != direct:
            bad.append(f"{lam.to_strings()}: {list(red)} != {list(direct)}")
    if torus_reduction_dims(A, H) != character_cohomology_dims(S, cands[0].zero(S)):
        bad.append("trivial coefficients disagree")
    return not bad, "; ".join(bad), {"characters": len(cands)}


def check_deformation(S: LieAlgebra):
    if is_nilpotent(S):
        return True, "nilpotent: no toral directions", {}
    plane = deformation_plane(S, max_samples=9)
    bad = [f"sample {s['coefficients']}: TH {s.get('TH')}" for s in plane.samples if not s["ok"]]
    res = nilshadow(S)
    E, _ = extension_from_decomposition(S, res.complement, res.nilradical)
    # the nilshadow direction: minus the semisimple parts of alpha
    N = res.nilradical
    beta = [RatMatrix.from_columns([N.coordinates(T.apply(b)) for b in N.basis], nrows=N.dim).scale(-1)
            for T in res.semisimple_parts]
    D = DeformationDirection(beta)
    lin = check_linear_deformation(E, D)
    if not lin.ok:
        bad.append(f"linear deformation conditions fail: {lin.conditions}")
    cert = split_elementary(E, D, [0])
    if not cert.ok:
        bad.append(f"split certificate fails: corners {cert.corners}")
    return not bad, "; ".join(bad), {
        "plane_dim": len(plane.plane_basis),
        "toral_dim": len(plane.toral_basis),
        "samples": len(plane.samples),
        "corners": sum(cert.corners.values()),
    }


def check_kostant(name: str):
    t = name[len("borel_"):]
    r = verify_kostant(root_system(t))
    return r.ok, "" if r.ok else "Kostant prediction differs", {"profile": list(r.length_profile)}


def check_filiform(name: str):
    n = int(name[len("filiform"):])
    filiform_cohomology_diagram(n)
    return True, "", {}


def check_s_n(name: str):
    n = int(name[1:])
    r = gamma_s_n(n)
    return r.ok, "" if r.ok else "routes disagree or a polygon vertex is missing", {}


MEMBER_CHECKS: dict[str, Callable] = {
    "gamma": check_gamma,
    "direct": check_direct,
    "gamma1": check_gamma1,
    "nilshadow": check_nilshadow,
    "jordan": check_jordan,
    "hs": check_hs,
    "r_sets": check_r_sets,
    "deformation": check_deformation,
}


def _run_check(label: str, fn, *args) -> CheckResult:
    try:
        ok, detail, data = fn(*args)
        return CheckResult(label, ok, detail, data)
    except LieCohError as exc:
        return CheckResult(label, False, f"{type(exc).__name__}: {exc}")
    except Exception as exc:  # a crash is a failure, located by the check name
        tb = traceback.extract_tb(exc.__traceback__)[-1]
        return CheckResult(label, False, f"{type(exc).__name__}: {exc} at {tb.name}")


def corrupt(L: LieAlgebra) -> LieAlgebra:
    """Double the first structure constant (without validation)."""
    table = {k: dict(v) for k, v in sorted(L.table.items())}
    key = next(iter(table))
    k = next(iter(sorted(table[key])))
    table[key][k] *= 2
    return LieAlgebra(L.dim, table, L.labels, check=False)


def run_member(name: str, inject: bool = False) -> dict:
    """All checks for one catalog member; with ``inject`` a structure constant is corrupted."""
    results: list[CheckResult] = []
    try:
        S = load(name)
        if inject:
            S = corrupt(S)
        validate(S)
        if not is_solvable(S):
            raise LieCohError("not solvable")
    except LieCohError as exc:
        results.append(CheckResult("validate", False, f"{type(exc).__name__}: {exc}"))
        return {"name": name, "ok": False, "checks": [r.to_json() for r in results]}
    results.append(CheckResult("validate", True))
    for label, fn in MEMBER_CHECKS.items():
        results.append(_run_check(label, fn, S))
    results.append(_run_check("torus", check_torus, S, "" if inject else name))
    if name.startswith("borel_") and not name.startswith("borel_nil_"):
        results.append(_run_check("kostant", check_kostant, name))
    if name.startswith("filiform"):
        results.append(_run_check("filiform_diagram", check_filiform, name))
    if name[:1] == "s" and name[1:].isdigit():
        results.append(_run_check("s_n_routes", check_s_n, name))
    return {
        "name": name,
        "dim": S.dim,
        "nilpotent": is_nilpotent(S),
        "ok": all(r.ok for r in results),
        "checks": [r.to_json() for r in results],
    }


def _run_member_args(args) -> dict:
    return run_member(*args)


@dataclass
class CorpusReport:
    members: list[dict]
    warnings: list[str]

    @property
    def ok(self) -> bool:
        return all(m["ok"] for m in self.members)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "kind": "corpus",
            "ok": self.ok,
            "members": self.members,
            "warnings": self.warnings,
            "summary": {"total": len(self.members), "failed": sum(not m["ok"] for m in self.members)},
        }

    def to_text(self) -> str:
        lines = []
        for m in self.members:
            failed = [c for c in m["checks"] if not c["ok"]]
            status = "PASS" if m["ok"] else "FAIL"
            lines.append(f"{status} {m['name']}" + (f" (dim {m['dim']})" if "dim" in m else ""))
            for c in failed:
                lines.append(f"    {c['check']}: {c.get('detail', '')}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        total = len(self.members)
        failed = sum(not m["ok"] for m in self.members)
        lines.append(f"{total - failed}/{total} members pass")
        return "\n".join(lines)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)


def run_corpus(names: list[str] | None = None, width: int = 1, inject: set[str] | None = None) -> CorpusReport:
    """Run every member check; members ordered by catalog name."""
    from .catalog import corpus_names

    inject = inject or set()
    names = sorted(names) if names is not None else corpus_names()
    warnings = []
    if not names:
        warnings.append("catalog filter matched no members; vacuous pass")
    jobs = [(n, n in inject) for n in names]
    if width > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=width) as pool:
            members = list(pool.map(_run_member_args, jobs))
    else:
        members = [_run_member_args(j) for j in jobs]
    members.sort(key=lambda m: m["name"])
    return CorpusReport(members, warnings)


def filter_names(pattern: str | None) -> list[str]:
    from fnmatch import fnmatch

    from .catalog import corpus_names

    names = corpus_names()
    if not pattern:
        return names
    pats = [p.strip() for p in pattern.split(",") if p.strip()]
    return [n for n in names if any(fnmatch(n, p) for p in pats)]


__all__ = ["run_corpus", "run_member", "filter_names", "CorpusReport", "catalog_names"]
