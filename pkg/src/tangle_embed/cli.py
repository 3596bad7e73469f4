"""Command-line front end: ``tangle-embed SUBCOMMAND ...``.

Exit codes: 0 success (or not obstructed), 1 obstructed, 2 usage or
parse error, 3 every obstruction test was inapplicable.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import link, obstruct
from .abelian import order, smith_normal_form
from .formats import FormatError, format_matrix, parse_curve, parse_matrix, parse_presentation
from .link import DiagramError
from .manifold import f_invariant, fill, filling_order, homology
from .tangle import TangleParseError, double_cover, gcd_invariant, krebes_fraction, parse_tangle

EXIT_OK, EXIT_OBSTRUCTED, EXIT_USAGE, EXIT_INAPPLICABLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _fraction(text: str) -> tuple[int, int]:
    try:
        p, q = text.split("/")
        return int(p), int(q)
    except ValueError:
        raise UsageError(f"expected a fraction P/Q, got {text!r}") from None


def _emit(args, data: dict, lines: list[str]):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_snf(args):
    A, cols = parse_matrix(_read(args.file))
    snf = smith_normal_form(A, cols)
    data = {"factors": list(snf.factors), "U": snf.U, "S": snf.S, "V": snf.V}
    lines = ["factors: " + " ".join(map(str, snf.factors))]
    for name in "USV":
        lines += [f"{name}:", format_matrix(getattr(snf, name), cols if name != "U" else len(A)).rstrip()]
    _emit(args, data, lines)


def cmd_homology(args):
    M = parse_presentation(_read(args.file))
    H = homology(M)
    _emit(args, {"homology": str(H), "order": order(H)}, [f"H_1: {H}", f"order: {order(H)}"])


def cmd_fill(args):
    M = parse_presentation(_read(args.file))
    curve = M.curve(parse_curve(args.curve, M))
    H = homology(fill(M, curve))
    data = {"curve": list(curve), "homology": str(H), "order": order(H)}
    _emit(args, data, [f"curve: {' '.join(map(str, curve))}", f"H_1: {H}", f"order: {order(H)}"])


def cmd_finv(args):
    M = parse_presentation(_read(args.file))
    alpha = parse_curve(args.alpha, M)
    beta = parse_curve(args.beta, M)
    a, b = filling_order(M, alpha), filling_order(M, beta)
    f = f_invariant(M, alpha, beta)
    data = {"order_alpha": a, "order_beta": b, "f": f}
    _emit(args, data, [f"|M(alpha)|: {a}", f"|M(beta)|: {b}", f"f: {f}"])


def cmd_tangle(args):
    T = parse_tangle(args.expr)
    frac = krebes_fraction(T)
    H = homology(double_cover(T))
    data = {
        "summands": [str(t) for t in T.summands],
        "fraction": [frac.num, frac.den],
        "gcd": gcd_invariant(T),
        "double_cover": str(H),
    }
    lines = [
        "summands: " + " ".join(str(t) for t in T.summands),
        f"fraction: {frac}",
        f"gcd: {gcd_invariant(T)}",
        f"H_1: {H}",
    ]
    _emit(args, data, lines)


def cmd_link(args):
    d = link.parse_pd(_read(args.file))
    if args.what == "det":
        det = link.determinant(d)
        _emit(args, {"crossings": len(d), "det": det}, [f"crossings: {len(d)}", f"det: {det}"])
    else:
        H = link.double_cover_group(d)
        _emit(args, {"homology": str(H), "order": order(H)}, [f"H_1: {H}", f"order: {order(H)}"])


def cmd_twobridge(args):
    p, q = _fraction(args.fraction)
    try:
        d = link.two_bridge(p, q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    H = link.double_cover_group(d)
    det = link.determinant(d)
    data = {"fraction": [p, q], "det": det, "homology": str(H), "crossings": len(d)}
    lines = [f"crossings: {len(d)}", f"det: {det}", f"H_1: {H}"]
    if args.pd:
        data["pd"] = [list(x) for x in d.crossings]
        lines.append(d.to_text().rstrip())
    _emit(args, data, lines)


def cmd_check(args):
    T = parse_tangle(args.tangle)
    if args.link:
        L = link.parse_pd(_read(args.link))
    else:
        try:
            L = link.two_bridge(*_fraction(args.twobridge))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    report = obstruct.check_embedding(T, L)
    if args.json:
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        for v in report.verdicts:
            detail = ", ".join(f"{k}={v.witness[k]}" for k in sorted(v.witness))
            print(f"{v.test_name}: {v.status}" + (f" ({detail})" if detail else ""))
        print(f"overall: {report.overall}")
    if report.overall == obstruct.OBSTRUCTED:
        return EXIT_OBSTRUCTED
    if all(v.status == obstruct.INAPPLICABLE for v in report.verdicts):
        return EXIT_INAPPLICABLE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tangle-embed",
        description="Homological obstructions to embedding a tangle in a link.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    p = add("snf", cmd_snf, "Smith normal form of a matrix file")
    p.add_argument("file")
    p = add("homology", cmd_homology, "H_1 of a presentation file")
    p.add_argument("file")
    p = add("fill", cmd_fill, "Dehn filling along a curve")
    p.add_argument("file")
    p.add_argument("--curve", required=True, help="curve name or comma-separated vector")
    p = add("finv", cmd_finv, "gcd of two filling orders (alpha, beta must span the boundary)")
    p.add_argument("file")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)
    p = add("tangle", cmd_tangle, "Krebes fraction and double cover of a tangle expression")
    p.add_argument("expr")
    p = add("link", cmd_link, "determinant or double-cover homology of a PD file")
    p.add_argument("what", choices=["det", "homology"])
    p.add_argument("file")
    p = add("twobridge", cmd_twobridge, "the two-bridge link P/Q")
    p.add_argument("fraction", metavar="P/Q")
    p.add_argument("--pd", action="store_true", help="also print the PD code")
    p = add("check", cmd_check, "run every obstruction for a tangle in a link")
    p.add_argument("--tangle", required=True)
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("--link", metavar="FILE.pd")
    target.add_argument("--twobridge", metavar="P/Q")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args) or EXIT_OK
    except (UsageError, FormatError, DiagramError, TangleParseError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
