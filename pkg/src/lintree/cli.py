"""Command line front end.

Exit codes: 0 success or "yes", 1 "no" or a failed realization/verification,
2 usage or parse errors, 3 a violated theorem (should never happen).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .gstar_lists import UpwardList, validate_gstar
from .lsp_engine import (
    TheoremViolation,
    decide_ordered,
    decide_unordered,
    degree_list,
    diminimal_list,
    enumerate_ordered,
    format_table,
    max_multiplicity,
    parse_ordered,
)
from .realizer import RealizationError, SpectrumTarget, matrix_from_json, realize
from .tree_model import LinearTreeSpec, diameter, expand, load_tree, stats
from .verify import ParterError, verify_realization


class UsageError(Exception):
    pass


def _tree(path: str) -> LinearTreeSpec:
    try:
        return load_tree(path)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read tree {path}: {exc}") from exc


def _ordered(text: str) -> tuple[int, ...]:
    try:
        return parse_ordered(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _eigenvalues(text, count: int) -> tuple[float, ...]:
    if text is None:
        return tuple(float(i) for i in range(1, count + 1))
    try:
        vals = tuple(float(x) for x in text.split(","))
    except ValueError as exc:
        raise UsageError(f"bad eigenvalue list {text!r}") from exc
    if len(vals) != count:
        raise UsageError(f"{len(vals)} eigenvalues given, list has {count} entries")
    return vals


def cmd_tree_info(args) -> int:
    spec = _tree(args.spec)
    g = expand(spec)
    st = stats(g)
    print(f"n: {spec.vertex_count}")
    print(f"diameter: {diameter(spec)}")
    print(f"degree-two vertices: {st.d2}")
    print(f"high degree vertices: {' '.join(map(str, st.hdvs)) or '-'}")
    print(f"degrees: {' '.join(map(str, st.degrees))}")
    print(f"decomposition: {spec}")
    print(f"spec: {json.dumps(spec.to_json())}")
    return 0


def cmd_validate_list(args) -> int:
    spec = _tree(args.spec)
    if len(spec.stars) != 1:
        raise UsageError("validate-list expects a generalized star")
    try:
        lst = UpwardList.parse(args.list)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    ok, why = validate_gstar(lst, spec.stars[0])
    print("valid" if ok else f"invalid: {why}")
    return 0 if ok else 1


def cmd_enumerate(args) -> int:
    spec = _tree(args.spec)
    try:
        lists = enumerate_ordered(spec, cap=args.cap)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    for L in lists:
        print(" ".join(map(str, L)))
    return 0


def cmd_decide(args) -> int:
    spec = _tree(args.spec)
    L = _ordered(args.list)
    try:
        fn = decide_unordered if args.unordered else decide_ordered
        ok, table = fn(spec, L)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if ok:
        print(format_table(table))
        return 0
    print("not achievable", file=sys.stderr)
    return 1


def _write_matrix(A, out) -> None:
    from .realizer import matrix_to_json

    text = json.dumps(matrix_to_json(A), sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def cmd_realize(args) -> int:
    spec = _tree(args.spec)
    L = _ordered(args.list)
    ev = _eigenvalues(args.eigenvalues, len(L))
    try:
        target = SpectrumTarget.from_list(spec, L, ev)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    try:
        res = realize(spec, target, seed=args.seed)
    except RealizationError as exc:
        print(f"realization failed: {exc}", file=sys.stderr)
        return 1
    print(f"spectral error {res.residual:.3e}, smallest edge {res.min_edge:.3e}", file=sys.stderr)
    _write_matrix(res.matrix, args.out)
    return 0


def cmd_verify(args) -> int:
    spec = _tree(args.spec)
    try:
        A = matrix_from_json(json.loads(Path(args.matrix).read_text()))
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot read matrix {args.matrix}: {exc}") from exc
    L = _ordered(args.list)
    ev = _eigenvalues(args.eigenvalues, len(L))
    try:
        target = SpectrumTarget.from_list(spec, L, ev)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    rep = verify_realization(A, expand(spec), target, tol=args.tol)
    if args.json:
        print(json.dumps(rep.to_json(), indent=2, sort_keys=True))
    else:
        print(rep.to_text())
    return 0 if rep.ok else 1


def cmd_diminimal(args) -> int:
    spec = _tree(args.spec)
    res = diminimal_list(spec)
    print(f"# diameter {res.diameter}, construction {res.method}")
    print(format_table(res.table))
    if args.realize:
        target = SpectrumTarget.from_table(res.table)
        try:
            out = realize(spec, target, seed=args.seed)
        except RealizationError as exc:
            print(f"realization failed: {exc}", file=sys.stderr)
            return 1
        _write_matrix(out.matrix, args.out)
    return 0


def cmd_degree_list(args) -> int:
    spec = _tree(args.spec)
    lst, table = degree_list(spec)
    print(" ".join(map(str, lst)))
    print(format_table(table))
    return 0


def cmd_maxmult(args) -> int:
    spec = _tree(args.spec)
    formula = max_multiplicity(spec)
    print(f"formula: {formula}")
    if spec.vertex_count <= args.cap:
        actual = max(max(L) for L in enumerate_ordered(spec, cap=args.cap))
        print(f"enumerated: {actual}")
        if actual != formula:
            print("formula and enumeration disagree", file=sys.stderr)
            return 1
    return 0


def cmd_census(args) -> int:
    from .census import run_census

    def progress(rec):
        status = "ok" if not rec["failures"] else "FAIL"
        print(f"{rec['name']}: {status}", file=sys.stderr)

    summary = run_census(args.max_n, args.out, realize_max_n=args.realize_max_n, progress=progress)
    print(json.dumps({k: v for k, v in summary.items() if k != "failures"}, sort_keys=True))
    for f in summary["failures"]:
        print(f"{f['tree']}: {'; '.join(f['failures'])}")
    return 0 if summary["trees_with_failures"] == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lintree", description="Multiplicity lists and realizations for linear trees.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("tree-info", help="size, diameter, degree statistics, decomposition")
    s.add_argument("spec")
    s.set_defaults(func=cmd_tree_info)

    s = sub.add_parser("validate-list", help="check an upward list such as '1 ^2 1' against a star")
    s.add_argument("spec")
    s.add_argument("list")
    s.set_defaults(func=cmd_validate_list)

    s = sub.add_parser("enumerate", help="all ordered multiplicity lists, one per line")
    s.add_argument("spec")
    s.add_argument("--cap", type=int, default=12, help="largest vertex count accepted (default 12)")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("decide", help="is a list achievable? prints a certificate table")
    s.add_argument("spec")
    s.add_argument("list")
    s.add_argument("--unordered", action="store_true", help="treat LIST as a multiset")
    s.set_defaults(func=cmd_decide)

    s = sub.add_parser("realize", help="build a matrix with the given list (eigenvalues default to 1..k)")
    s.add_argument("spec")
    s.add_argument("list")
    s.add_argument("--eigenvalues", help="comma separated distinct values, default 1,2,...,k")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out", help="write matrix JSON here instead of stdout")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("verify", help="check a matrix file against a tree and list")
    s.add_argument("matrix")
    s.add_argument("spec")
    s.add_argument("list")
    s.add_argument("--eigenvalues", help="comma separated distinct values, default 1,2,...,k")
    s.add_argument("--tol", type=float, default=1e-6)
    s.add_argument("--json", action="store_true", help="JSON report instead of text")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("diminimal", help="a table with exactly d(T) distinct eigenvalues")
    s.add_argument("spec")
    s.add_argument("--realize", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    s.set_defaults(func=cmd_diminimal)

    s = sub.add_parser("degree-list", help="the degree list and its certificate")
    s.add_argument("spec")
    s.set_defaults(func=cmd_degree_list)

    s = sub.add_parser("maxmult", help="largest multiplicity, formula and enumeration")
    s.add_argument("spec")
    s.add_argument("--cap", type=int, default=12)
    s.set_defaults(func=cmd_maxmult)

    s = sub.add_parser("census", help="audit every linear tree up to a size")
    s.add_argument("--max-n", type=int, required=True)
    s.add_argument("--out", required=True)
    s.add_argument("--realize-max-n", type=int, default=0, help="also realize every list up to this size")
    s.set_defaults(func=cmd_census)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (TheoremViolation, ParterError) as exc:
        print(f"internal theorem violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
