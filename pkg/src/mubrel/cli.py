"""Command-line interface.

Exit status: 0 when the property holds or the command succeeded, 1 when a
checked property fails, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .complementarity import (
    MccsFamily,
    are_complementary_structures,
    family_from_json,
    first_failing_pair,
)
from .errors import FormatError, MubrelError
from .mols import (
    FieldSpec,
    LatinSquare,
    field_ops,
    first_non_orthogonal,
    format_mols,
    gf_mols,
    mccs_to_mols,
    mols_to_mccs,
    parse_mols,
)
from .reproduce import reproduce_paper
from .search import find_orthogonal_mate, max_mccs, max_mols
from .structures import (
    classical_points,
    frobenius_report,
    partition_from_json,
    points_to_json,
    structure_from_json,
    unbiased_points,
)


class _Out:
    def __init__(self, as_json):
        self.as_json = as_json

    def emit(self, payload, text):
        if self.as_json:
            print(json.dumps(payload))
        else:
            print(text)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _load_json(path):
    text = _read(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{path}: line {exc.lineno} column {exc.colno}") from None


def _load_squares(path):
    """Latin squares from the text format or from any JSON this tool writes."""
    text = _read(path)
    if not text.lstrip().startswith(("{", "[")):
        return parse_mols(text)
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"{path}: line {exc.lineno} column {exc.colno}") from None
    grids = obj
    if isinstance(obj, dict):
        key = "squares" if "squares" in obj else "witnesses"
        grids = obj.get(key)
        if grids is None:
            raise FormatError('expected a "squares" or "witnesses" list', path)
    if not isinstance(grids, list):
        raise FormatError("expected a list of squares", path)
    out = []
    for k, g in enumerate(grids):
        try:
            out.append(LatinSquare(g))
        except (MubrelError, TypeError) as exc:
            raise FormatError(str(exc), f"squares[{k}]") from None
    return out


def _load_family(path):
    obj = _load_json(path)
    if isinstance(obj, dict) and "witnesses" in obj and "partitions" not in obj:
        n = obj.get("n")
        if not isinstance(n, int):
            raise FormatError("certificate has no ground-set size", "n")
        return MccsFamily(
            n,
            tuple(partition_from_json(w, n, f"witnesses[{k}]") for k, w in enumerate(obj["witnesses"])),
        )
    return family_from_json(obj)


def _fmt_points(points):
    return ", ".join("{" + ",".join(map(str, p.members)) + "}" for p in points)


def cmd_verify(args, out):
    if args.what == "frobenius":
        cs = structure_from_json(_load_json(args.file))
        report = frobenius_report(cs)
        ok = all(report.values())
        lines = [f"{k}: {'ok' if v else 'FAILS'}" for k, v in report.items()]
        out.emit({"ok": ok, "equations": report}, "\n".join(lines + [f"frobenius: {ok}"]))
        return 0 if ok else 1
    if args.what == "mccs":
        f = _load_family(args.file)
        bad = first_failing_pair(f)
        ok = bad is None
        text = (
            f"{len(f)} mutually complementary partitions of {f.n} points"
            if ok
            else f"partitions {bad[0]} and {bad[1]} are not complementary"
        )
        out.emit({"ok": ok, "size": len(f), "failing_pair": bad}, text)
        return 0 if ok else 1
    squares = _load_squares(args.file)
    bad = first_non_orthogonal(squares)
    ok = bad is None
    text = (
        f"{len(squares)} mutually orthogonal Latin squares"
        if ok
        else f"squares {bad[0]} and {bad[1]} are not orthogonal"
    )
    out.emit({"ok": ok, "size": len(squares), "failing_pair": bad}, text)
    return 0 if ok else 1


def cmd_points(args, out):
    cs = structure_from_json(_load_json(args.file))
    mode = "oracle" if args.oracle else "fast"
    kind = "classical" if args.classical else "unbiased"
    pts = classical_points(cs, mode) if args.classical else unbiased_points(cs, mode)
    out.emit({"kind": kind, "mode": mode, "points": points_to_json(pts)}, f"{kind} points: {_fmt_points(pts)}")
    return 0


def cmd_complementary(args, out):
    a = structure_from_json(_load_json(args.a))
    b = structure_from_json(_load_json(args.b))
    mode = "oracle" if args.oracle else "fast"
    ok = are_complementary_structures(a, b, mode)
    out.emit({"complementary": ok, "mode": mode}, f"complementary: {ok}")
    return 0 if ok else 1


def cmd_convert(args, out):
    if args.direction == "mccs-to-mols":
        table, squares = mccs_to_mols(_load_family(args.file))
        payload = {
            "table": [list(r) for r in table.cells],
            "squares": [s.to_json() for s in squares],
        }
        grid = "\n".join(" ".join(map(str, r)) for r in table.cells)
        text = f"table:\n{grid}\n\n" + (format_mols(squares) if squares else "(no squares)")
        out.emit(payload, text.rstrip("\n"))
        return 0
    squares = _load_squares(args.file)
    d = args.d if args.d is not None else (squares[0].d if squares else None)
    if d is None:
        raise MubrelError("no squares given; pass --d for the order")
    f = mols_to_mccs(squares, d)
    text = "\n".join(str(p) for p in f.partitions)
    out.emit(f.to_json(), text)
    return 0


def _field_from_args(args):
    if args.p is None:
        return None
    modulus = None
    if args.modulus:
        try:
            modulus = tuple(int(c) for c in args.modulus.split(","))
        except ValueError:
            raise FormatError(f"bad coefficient list {args.modulus!r}", "--modulus") from None
    return FieldSpec(args.p, args.k, modulus)


def cmd_gen(args, out):
    spec = _field_from_args(args)
    if args.what == "field":
        if spec is None:
            raise MubrelError("gen field needs --p")
        add, mul = field_ops(spec)
        rows = lambda t: "\n".join(" ".join(map(str, r)) for r in t)  # noqa: E731
        out.emit(
            {"p": spec.p, "k": spec.k, "modulus": spec.modulus, "add": add, "mul": mul},
            f"add:\n{rows(add)}\n\nmul:\n{rows(mul)}",
        )
        return 0
    d = args.d if args.d is not None else (spec.order if spec else None)
    if d is None:
        raise MubrelError("gen mols needs --d or --p/--k")
    squares = gf_mols(d, spec)
    out.emit({"d": d, "squares": [s.to_json() for s in squares]}, format_mols(squares).rstrip("\n"))
    return 0


def cmd_search(args, out):
    if args.what == "mate":
        squares = _load_squares(args.file)
        if len(squares) != 1:
            raise FormatError(f"expected one square, found {len(squares)}", args.file)
        cert = find_orthogonal_mate(squares[0])
        text = cert.kind if cert.kind == "no-mate" else f"mate-found\n{cert.witnesses[1]}"
        out.emit(cert.to_json(), text)
        return 0
    if args.what == "max-mols":
        if args.d is None:
            raise MubrelError("max-mols needs --d")
        cert = max_mols(args.d)
    else:
        if args.n is None:
            raise MubrelError("max-mccs needs --n")
        cert = max_mccs(args.n)
    st = cert.stats
    text = (
        f"{args.what}: {cert.count}\n"
        f"bound: {cert.bound}\n"
        f"enumerated {st.get('enumerated', 0)}, nodes {st.get('nodes', 0)}, "
        f"{st.get('elapsed_ms', 0)} ms"
    )
    out.emit(cert.to_json(), text)
    return 0


def cmd_reproduce(args, out):
    results = reproduce_paper()
    ok = all(passed for _, passed, _ in results)
    lines = [f"[{'PASS' if p else 'FAIL'}] {name}: {detail}" for name, p, detail in results]
    out.emit(
        {"ok": ok, "checks": [{"name": n, "passed": p, "detail": d} for n, p, d in results]},
        "\n".join(lines),
    )
    return 0 if ok else 1


def build_parser():
    # SUPPRESS keeps a subcommand's unset flag from clobbering the top-level one
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="mubrel", description="Complementary classical structures in Rel."
    )
    parser.add_argument("--json", action="store_true", help="write JSON to stdout")
    sub = parser.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", parents=[common], help="check a property of an input file")
    v.add_argument("what", choices=["frobenius", "mccs", "mols"])
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("points", parents=[common], help="classical or unbiased points")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--classical", action="store_true")
    g.add_argument("--unbiased", action="store_true")
    p.add_argument("--oracle", action="store_true", help="scan all subsets instead")
    p.add_argument("file")
    p.set_defaults(func=cmd_points)

    c = sub.add_parser("complementary", parents=[common], help="are two structures complementary")
    c.add_argument("a")
    c.add_argument("b")
    c.add_argument("--oracle", action="store_true")
    c.set_defaults(func=cmd_complementary)

    cv = sub.add_parser("convert", parents=[common], help="MCCS family <-> MOLS")
    cv.add_argument("direction", choices=["mccs-to-mols", "mols-to-mccs"])
    cv.add_argument("file")
    cv.add_argument("--d", type=int, help="order, when the MOLS file is empty")
    cv.set_defaults(func=cmd_convert)

    gn = sub.add_parser("gen", parents=[common], help="finite-field constructions")
    gn.add_argument("what", choices=["mols", "field"])
    gn.add_argument("--d", type=int)
    gn.add_argument("--p", type=int)
    gn.add_argument("--k", type=int, default=1)
    gn.add_argument("--modulus", help="comma-separated coefficients, constant term first")
    gn.set_defaults(func=cmd_gen)

    s = sub.add_parser("search", parents=[common], help="exhaustive searches")
    s.add_argument("what", choices=["mate", "max-mols", "max-mccs"])
    s.add_argument("file", nargs="?")
    s.add_argument("--d", type=int)
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_search)

    r = sub.add_parser("reproduce-paper", parents=[common], help="rerun the worked examples")
    r.set_defaults(func=cmd_reproduce)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "search" and args.what == "mate" and not args.file:
        parser.error("search mate needs a square file")
    out = _Out(args.json)
    try:
        return args.func(args, out)
    except (MubrelError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
