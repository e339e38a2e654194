"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse or validation error,
3 a theorem check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import LieCohError, ParseError, TheoremCheckFailure
from .exactlinalg import RatMatrix, fmt

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_THEOREM = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# inputs


def load_algebra(spec: str):
    """A catalog name, or a path to an algebra file."""
    from .catalog import load
    from .liealg import loads_algebra

    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(None, f"cannot read {spec}: {exc.strerror}") from None
        return loads_algebra(text)
    try:
        return load(spec)
    except KeyError as exc:
        raise ParseError(None, str(exc.args[0])) from None


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(None, f"not a rational number: {text!r}") from None


def parse_character(L, text: str):
    from .modules import Character

    values = [parse_rational(t) for t in text.split(",")]
    if len(values) != L.dim:
        raise ParseError(None, f"character needs {L.dim} values, got {len(values)}")
    return Character(L, values)


def _matrix(data, n: int) -> RatMatrix:
    rows = [[parse_rational(str(a)) for a in row] for row in data]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ParseError(None, f"expected a {n}x{n} matrix")
    return RatMatrix(rows)


def _vectors(data, n: int) -> list[tuple[Fraction, ...]]:
    out = []
    for v in data:
        if len(v) != n:
            raise ParseError(None, f"expected vectors of length {n}")
        out.append(tuple(parse_rational(str(a)) for a in v))
    return out


# ---------------------------------------------------------------------------
# output helpers


def _emit(args, payload: dict, text: str, csv_text: str | None = None) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=1, sort_keys=True))
    elif args.format == "csv":
        if csv_text is None:
            raise UsageError("csv output is not available for this command")
        sys.stdout.write(csv_text)
    else:
        print(text)


def _degrees(args, top: int) -> list[int]:
    if args.degree is None:
        return list(range(top + 1))
    if not 0 <= args.degree <= top:
        raise UsageError(f"degree must lie in 0..{top}")
    return [args.degree]


def _vec(v) -> list[str]:
    return [fmt(a) for a in v]


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(args) -> int:
    from .liealg import cartan_subalgebra, derived_series, is_nilpotent, is_solvable, lower_central_series, nilradical
    from .weights import adjoint_characters

    L = load_algebra(args.algebra)
    solv = is_solvable(L)
    payload = {
        "schema": 1,
        "kind": "analyze",
        "dim": L.dim,
        "basis": list(L.labels),
        "solvable": solv,
        "nilpotent": is_nilpotent(L),
        "derived_series": [U.dim for U in derived_series(L)],
        "lower_central_series": [U.dim for U in lower_central_series(L)],
    }
    if solv:
        n = nilradical(L)
        c = cartan_subalgebra(L)
        payload["nilradical"] = [_vec(v) for v in n.basis]
        payload["cartan"] = [_vec(v) for v in c.basis]
        payload["adjoint_weights"] = [ch.to_strings() for ch in adjoint_characters(L)]
    lines = [
        f"dim {L.dim}, basis {' '.join(L.labels)}",
        f"solvable: {payload['solvable']}, nilpotent: {payload['nilpotent']}",
        f"derived series dims: {payload['derived_series']}",
        f"lower central series dims: {payload['lower_central_series']}",
    ]
    if solv:
        lines.append(f"nilradical (dim {len(payload['nilradical'])}): {payload['nilradical']}")
        lines.append(f"Cartan subalgebra (dim {len(payload['cartan'])}): {payload['cartan']}")
        lines.append(f"adjoint weights: {payload['adjoint_weights']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_cohomology(args) -> int:
    from .cohomology import cohomology
    from .gamma import character_cohomology_dims

    L = load_algebra(args.algebra)
    lam = parse_character(L, args.character) if args.character else None
    V = lam.module() if lam is not None else None
    if args.dims_only:
        try:
            from .modules import Character

            dims = character_cohomology_dims(L, lam if lam is not None else Character.zero(L))
        except LieCohError:
            dims = tuple(s.dim for s in cohomology(L, V, representatives=False))
        spaces = None
    else:
        spaces = cohomology(L, V)
        dims = tuple(s.dim for s in spaces)
    degs = _degrees(args, L.dim)
    entries = []
    for p in degs:
        e = {"degree": p, "dim": dims[p]}
        if spaces is not None:
            e["representatives"] = [_vec(v) for v in spaces[p].representatives]
        entries.append(e)
    payload = {
        "schema": 1,
        "kind": "cohomology",
        "algebra": args.algebra,
        "character": lam.to_strings() if lam is not None else None,
        "dims": list(dims),
        "degrees": entries,
    }
    lines = [f"H^*({args.algebra}{', ' + str(lam.to_strings()) if lam is not None else ''}) dims = {list(dims)}"]
    for e in entries:
        lines.append(f"  H^{e['degree']}: dim {e['dim']}")
        for r in e.get("representatives", []):
            lines.append(f"    {r}")
    csv_lines = ["degree,dim"] + [f"{e['degree']},{e['dim']}" for e in entries]
    _emit(args, payload, "\n".join(lines), "\n".join(csv_lines) + "\n")
    return EXIT_OK


def cmd_gamma(args) -> int:
    from .gamma import total_cohomology

    L = load_algebra(args.algebra)
    rep = total_cohomology(L, args.algebra)
    payload = rep.to_json()
    if args.degree is not None:
        _degrees(args, L.dim)
        payload["degrees"] = [d for d in payload["degrees"] if d["degree"] == args.degree]
    _emit(args, payload, rep.to_text(), rep.to_csv())
    return EXIT_OK


def cmd_nilshadow(args) -> int:
    from .deformations import nilshadow, verify_th_invariance

    L = load_algebra(args.algebra)
    res = nilshadow(L)
    inv = verify_th_invariance(L)
    payload = res.to_json()
    payload["certificate"] = inv.to_json()
    lines = [f"nilshadow of {args.algebra} (dim {L.dim})"]
    lines.append(f"  complement of the nilradical in the Cartan subalgebra: {[_vec(v) for v in res.complement]}")
    for i, j, k, old, new in res.change_log:
        lines.append(f"  [{L.labels[i - 1]},{L.labels[j - 1]}] coefficient of {L.labels[k - 1]}: {fmt(old)} -> {fmt(new)}")
    lines.append(f"  TH = {list(inv.th)}; nilshadow Betti = {list(inv.shadow_betti)}")
    for p in inv.presentations:
        lines.append(f"  nilpotent part along direction {p['direction']}: TH = {p['TH']} ({'ok' if p['ok'] else 'MISMATCH'})")
    lines.append("  certificate: " + ("ok" if inv.ok else "FAILED"))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if inv.ok else EXIT_THEOREM


def _direction_from_file(L, path: str):
    from .deformations import DeformationDirection, extension_from_decomposition
    from .liealg import Subspace, nilradical

    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ParseError(None, f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    ideal = Subspace(L, _vectors(data["ideal"], L.dim)) if "ideal" in data else nilradical(L)
    a = _vectors(data["a"], L.dim) if "a" in data else ideal.complement()
    E, _ = extension_from_decomposition(L, a, ideal)
    m = E.h.dim
    if "beta" not in data or len(data["beta"]) != len(a):
        raise ParseError(None, f"direction needs 'beta': one {m}x{m} matrix per element of a ({len(a)})")
    beta = [_matrix(B, m) for B in data["beta"]]
    tau = {}
    for key, v in data.get("tau", {}).items():
        try:
            i, j = (int(t) - 1 for t in key.split(","))
        except ValueError:
            raise ParseError(None, f"tau keys look like '1,2', got {key!r}") from None
        tau[(i, j)] = _vectors([v], m)[0]
    return E, DeformationDirection(beta, tau)


def cmd_deform(args) -> int:
    from .deformations import deform, deformation_plane, is_elementary, check_linear_deformation
    from .gamma import total_cohomology
    from .liealg import algebra_to_dict

    L = load_algebra(args.algebra)
    if args.direction is None:
        plane = deformation_plane(L, max_samples=args.grid or 9)
        payload = plane.to_json()
        lines = [f"elementary deformations of {args.algebra}: plane dim {len(plane.plane_basis)}, "
                 f"toral dim {len(plane.toral_basis)}"]
        for s in plane.samples:
            lines.append(f"  coefficients {s['coefficients']}: TH = {s.get('TH')} {'ok' if s['ok'] else 'MISMATCH'}")
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK if plane.ok else EXIT_THEOREM
    E, D = _direction_from_file(L, args.direction)
    lin = check_linear_deformation(E, D)
    elem = is_elementary(E, D) if D.is_zero_tau() else False
    payload = {"schema": 1, "kind": "deform", "linear": lin.to_json(), "elementary": elem}
    lines = [f"linear deformation conditions: {lin.conditions}", f"elementary: {elem}"]
    ok = True
    if lin.ok:
        ts = [parse_rational(t) for t in args.t.split(",")] if args.t else [Fraction(1)]
        base = total_cohomology(L).th
        payload["members"] = []
        for t in ts:
            G = deform(E, D, t)
            entry = {"t": fmt(t), "algebra": algebra_to_dict(G)}
            if elem:
                th = total_cohomology(G).th
                entry["TH"] = list(th)
                entry["ok"] = th == base
                ok = ok and entry["ok"]
            payload["members"].append(entry)
            lines.append(f"  t = {fmt(t)}: " + (f"TH = {entry['TH']}" if "TH" in entry else "deformed algebra built"))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_THEOREM


def cmd_borel(args) -> int:
    from .rootsys import polytope_csv, polytope_grid, root_system, verify_kostant

    try:
        R = root_system(args.type)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = verify_kostant(R)
    union = set().union(*rep.predicted)
    lines = [
        f"Borel subalgebra of {R.name}: Weyl length profile {list(rep.length_profile)}, "
        f"nilradical Betti {list(rep.nilradical_betti)}",
    ]
    for p, (pred, comp) in enumerate(zip(rep.predicted, rep.computed)):
        lines.append(f"  p={p}: predicted {sorted(pred)} computed {sorted(comp)}")
    lines.append("  Kostant check: " + ("ok" if rep.ok else "FAILED"))
    if args.grid:
        lines.append(polytope_grid(R, union))
    _emit(args, rep.to_json(), "\n".join(lines), polytope_csv(R, union))
    return EXIT_OK if rep.ok else EXIT_THEOREM


def cmd_filiform(args) -> int:
    from .filiform import filiform_cohomology_diagram, gamma_s_n

    if args.s:
        rep = gamma_s_n(args.n)
        lines = [f"characters of s_{args.n} with nonzero cohomology (routes agree: {rep.agree}, "
                 f"polygon vertices covered: {rep.vertices_in_gamma})"]
        for p, g in enumerate(rep.direct):
            lines.append(f"  p={p}: " + ", ".join(f"{w}^{d}" for w, d in sorted(g.items())))
        rows = ["degree,weight_H,weight_I,dim"] + [
            f"{p},{w[0]},{w[1]},{d}" for p, g in enumerate(rep.direct) for w, d in sorted(g.items())
        ]
        _emit(args, rep.to_json(), "\n".join(lines), "\n".join(rows) + "\n")
        return EXIT_OK if rep.ok else EXIT_THEOREM
    diag = filiform_cohomology_diagram(args.n)
    lines = [f"H*(f_{args.n}) Betti numbers {list(diag.dims())}"]
    if args.grid:
        lines.append(diag.to_text())
    else:
        for p, w, m, mk in diag.rows():
            lines.append(f"  p={p} weight {w} x{m} {mk}")
    _emit(args, diag.to_json(), "\n".join(lines), diag.to_csv())
    return EXIT_OK


def cmd_corpus(args) -> int:
    from .corpus import filter_names, run_corpus

    names = filter_names(args.catalog)
    inject = set(args.inject.split(",")) if args.inject else set()
    rep = run_corpus(names, width=args.width, inject=inject)
    if args.format == "json":
        for w in rep.warnings:
            print(f"warning: {w}", file=sys.stderr)
        print(rep.dumps())
    else:
        print(rep.to_text())
    return EXIT_OK if rep.ok else EXIT_THEOREM


def cmd_catalog(args) -> int:
    from .catalog import catalog_entry, catalog_names, load
    from .liealg import algebra_to_dict, dumps_algebra

    if args.emit:
        L = load_algebra(args.emit)
        print(dumps_algebra(L) if args.format != "json" else json.dumps(algebra_to_dict(L), indent=1))
        return EXIT_OK
    rows = []
    for name in catalog_names():
        e = catalog_entry(name)
        rows.append({"name": name, "dim": load(name).dim, "params": e.params, "note": e.note})
    text = "\n".join(f"{r['name']:<20} dim {r['dim']:>2}  {r['note']}" for r in rows)
    _emit(args, {"schema": 1, "kind": "catalog", "entries": rows}, text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="liecoh", description="Exact cohomology of solvable Lie algebras with character coefficients.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, formats=("text", "json")):
        sp.add_argument("--format", choices=formats, default="text")

    sp = sub.add_parser("analyze", help="structure report")
    sp.add_argument("algebra", help="catalog name or algebra file")
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("cohomology", help="H^p(L, lambda) with representatives")
    sp.add_argument("algebra")
    sp.add_argument("--character", help="comma-separated rational values on the basis")
    sp.add_argument("--degree", type=int)
    sp.add_argument("--dims-only", action="store_true")
    common(sp, ("text", "json", "csv"))
    sp.set_defaults(func=cmd_cohomology)

    sp = sub.add_parser("gamma", help="characters with nonzero cohomology and total cohomology")
    sp.add_argument("algebra")
    sp.add_argument("--degree", type=int)
    common(sp, ("text", "json", "csv"))
    sp.set_defaults(func=cmd_gamma)

    sp = sub.add_parser("nilshadow", help="nilshadow and the total cohomology certificate")
    sp.add_argument("algebra")
    common(sp)
    sp.set_defaults(func=cmd_nilshadow)

    sp = sub.add_parser("deform", help="linear deformations of an extension")
    sp.add_argument("algebra")
    sp.add_argument("--direction", help="JSON file with beta (and optional tau, ideal, a)")
    sp.add_argument("--t", help="comma-separated rational parameters (default 1)")
    sp.add_argument("--grid", type=int, help="number of sampled plane points (default 9)")
    common(sp)
    sp.set_defaults(func=cmd_deform)

    sp = sub.add_parser("borel", help="Kostant check for a rank-two Borel subalgebra")
    sp.add_argument("type", help="A1, A1xA1, A2, B2 or G2")
    sp.add_argument("--grid", "--polytope", action="store_true", dest="grid", help="print the weight polytope")
    common(sp, ("text", "json", "csv"))
    sp.set_defaults(func=cmd_borel)

    sp = sub.add_parser("filiform", help="weight diagram of H*(f_n), or characters of s_n")
    sp.add_argument("n", type=int)
    sp.add_argument("--s", action="store_true", help="report characters of s_n instead")
    sp.add_argument("--grid", action="store_true")
    common(sp, ("text", "json", "csv"))
    sp.set_defaults(func=cmd_filiform)

    sp = sub.add_parser("corpus", help="run every check over the catalog")
    sp.add_argument("--catalog", help="comma-separated name patterns (fnmatch)")
    sp.add_argument("--width", type=int, default=1, help="number of worker processes")
    sp.add_argument("--inject", help="corrupt a structure constant of these members")
    common(sp)
    sp.set_defaults(func=cmd_corpus)

    sp = sub.add_parser("catalog", help="list catalog algebras or emit one as an algebra file")
    sp.add_argument("--emit", metavar="NAME")
    common(sp)
    sp.set_defaults(func=cmd_catalog)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help or a usage error
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    if not args.command:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"liecoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TheoremCheckFailure as exc:
        print(f"liecoh: theorem check failed: {exc}", file=sys.stderr)
        return EXIT_THEOREM
    except LieCohError as exc:
        print(f"liecoh: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
