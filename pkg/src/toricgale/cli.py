"""Command line interface.

    toricgale gale FILE
    toricgale classify FILE [--json | --table | --plotdata] [--weights QFILE] [--ceiling N]
    toricgale family T [--classify] [--json | --table | --plotdata]
    toricgale verify-r2 --count N --seed S

Exit codes: 0 success, 2 input error, 3 enumeration ceiling exceeded,
4 property violation found by ``verify-r2``.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .exactmat import (
    FanMatrix,
    InvalidFanMatrix,
    InvalidWeightMatrix,
    IntMatrix,
    gale_dual,
    lattice_equal,
)
from .fan import EnumerationCeilingError, enumerate_fans
from .matrixfile import MatrixParseError, format_matrix, read_matrix
from .nefsec import classify_all, verify_rank2, weight_matrix_for
from .report import build_report, dumps, plot_data, render_table
from . import corpus

EXIT_INPUT = 2
EXIT_CEILING = 3
EXIT_VIOLATION = 4


class InputError(Exception):
    pass


def _load_fan_matrix(path: str) -> tuple[FanMatrix, str | None]:
    try:
        mf = read_matrix(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    except MatrixParseError as exc:
        raise InputError(f"{path}: {exc}") from exc
    try:
        return FanMatrix(mf.matrix), mf.name
    except InvalidFanMatrix as exc:
        raise InputError(f"{path}: not a fan matrix ({exc})") from exc


def cmd_gale(args, out) -> int:
    v, name = _load_fan_matrix(args.file)
    q = gale_dual(v)
    out.write(format_matrix(q.base, f"Gale dual of {name}" if name else "Gale dual"))
    ok = (q.base @ v.base.T).is_zero()
    out.write(f"# Q @ V^T = 0: {'yes' if ok else 'no'}\n")
    return 0


def _emit_classification(v: FanMatrix, q_matrix: IntMatrix | None, name, args, out) -> int:
    try:
        q = weight_matrix_for(v, q_matrix)
    except InvalidWeightMatrix as exc:
        raise InputError(f"weight matrix rejected ({exc})") from exc
    fans = enumerate_fans(v, args.ceiling)
    classes = classify_all(v, q, fans=fans)
    doc = build_report(v, q, classes, name, "input" if q_matrix is not None else "gale_dual")
    if args.format == "table":
        out.write(render_table(doc))
        return 0
    if args.format == "plotdata":
        doc["plot"] = plot_data(classes, q)
    out.write(dumps(doc))
    return 0


def cmd_classify(args, out) -> int:
    v, name = _load_fan_matrix(args.file)
    q_matrix = None
    if args.weights:
        try:
            q_matrix = read_matrix(args.weights).matrix
        except (OSError, MatrixParseError) as exc:
            raise InputError(f"{args.weights}: {exc}") from exc
    return _emit_classification(v, q_matrix, name, args, out)


def cmd_family(args, out) -> int:
    t = args.t
    q = corpus.weight_family(t)
    v = corpus.fan_family(t)
    out.write(format_matrix(q, f"Q_{t}"))
    out.write(format_matrix(v.base, f"V_{t} (HNF of the integer kernel of Q_{t})"))
    same = lattice_equal(v.base, corpus.displayed_fan_family(t))
    out.write(f"# Q_{t} @ V_{t}^T = 0: {'yes' if (q @ v.base.T).is_zero() else 'no'}\n")
    out.write(f"# V_{t} row lattice equals the displayed V_{t}: {'yes' if same else 'no'}\n")
    if args.classify:
        out.write("\n")
        return _emit_classification(v, q, f"family t={t}", args, out)
    return 0


def cmd_verify_r2(args, out) -> int:
    rep = verify_rank2(args.count, args.seed)
    out.write(f"toricgale {__version__} verify-r2 seed={rep.seed}\n")
    out.write(f"matrices: {rep.count} (rejected draws: {rep.rejected})\n")
    out.write(f"fans: {rep.fans}\n")
    out.write(f"non-projective fans: {rep.non_projective}\n")
    out.write(f"walk/intersection disagreements: {rep.walk_disagreements}\n")
    out.write(f"longest walk: {rep.max_trace} cones\n")
    for line in rep.failures or []:
        out.write(f"FAIL {line}\n")
    out.write(f"{rep.failure_count} failures\n")
    return EXIT_VIOLATION if rep.failure_count else 0


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _add_format(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="format", action="store_const", const="json")
    g.add_argument("--table", dest="format", action="store_const", const="table")
    g.add_argument("--plotdata", dest="format", action="store_const", const="plotdata")
    p.set_defaults(format="json")
    p.add_argument("--ceiling", type=_positive, default=None,
                   help="max candidate maximal cones (default: $TORICGALE_CEILING or 100000)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toricgale", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"toricgale {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gale", help="print the canonical Gale dual of a fan matrix")
    p.add_argument("file")
    p.set_defaults(func=cmd_gale)

    p = sub.add_parser("classify", help="enumerate fans and classify them")
    p.add_argument("file")
    p.add_argument("--weights", help="weight matrix file to use as class group coordinates")
    _add_format(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("family", help="the weight family Q_t and a Gale dual V_t")
    p.add_argument("t", type=_positive)
    p.add_argument("--classify", action="store_true")
    _add_format(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("verify-r2", help="random search for non-projective rank-2 fans")
    p.add_argument("--count", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_verify_r2)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"toricgale: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EnumerationCeilingError as exc:
        print(f"toricgale: error: {exc}", file=sys.stderr)
        return EXIT_CEILING


if __name__ == "__main__":
    sys.exit(main())
