"""``triseq`` command line.

Exit codes: 0 success, 2 domain or input error, 3 ambiguous interval,
4 search budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import serialize as ser
from .cf import cf_expand, cf_geometric
from .dynamics import Ball, Budget, find_partition_triangle_in_ball, mixing_witness
from .errors import ConsistencyFailure, TriseqError
from .families import parse_family
from .geometry import PointEstimate, limit_estimate, triangle_vertices
from .trimap import (
    Ambiguous,
    TriSequence,
    d_values,
    expand,
    expand_interval,
    parse_interval,
    parse_point,
    parse_sequence,
)
from .uniqueness import classify

EXIT_OK, EXIT_DOMAIN, EXIT_AMBIGUOUS, EXIT_BUDGET = 0, 2, 3, 4
FORMATS = ("json", "csv", "svg")


@dataclass(frozen=True)
class RunConfig:
    depth: int = 40
    format: str = "json"
    unique_threshold: Fraction = Fraction(1, 10 ** 6)
    sample_count: int = 25
    budget: Budget = Budget()

    def __post_init__(self):
        if self.depth < 1 or self.sample_count < 1:
            raise ValueError("counts must be positive")
        if self.unique_threshold <= 0:
            raise ValueError("threshold must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _nested(digits) -> list:
    return [triangle_vertices(digits[:k], allow_empty=True).vertices for k in range(len(digits) + 1)]


def _unsupported(cfg: RunConfig, *allowed: str) -> None:
    if cfg.format not in allowed:
        raise UsageError(f"--format {cfg.format} is not available here; use one of {', '.join(allowed)}")


def cmd_expand(args, cfg: RunConfig) -> tuple[str, int]:
    if (args.point is None) == (args.interval is None):
        raise UsageError("give exactly one of --point or --interval")
    max_terms = args.depth or 10_000
    if args.interval is not None:
        _unsupported(cfg, "json")
        res = expand_interval(parse_interval(args.interval), max_terms)
        if isinstance(res, Ambiguous):
            return ser.dumps({"digits": list(res.digits), "ambiguous_at": res.step, "terminated": False}), EXIT_AMBIGUOUS
        return ser.dumps({"digits": list(res.digits), "terminated": res.terminated}), EXIT_OK
    p = parse_point(args.point)
    seq = expand(p, max_terms)
    d = d_values(p, seq.digits)
    if cfg.format == "csv":
        rows = [(k - 3, "" if k < 3 else seq.digits[k - 3], v) for k, v in enumerate(d)]
        return ser.to_csv(("k", "a_k", "d_k"), rows), EXIT_OK
    if cfg.format == "svg":
        return ser.svg_triangles(_nested(seq.digits)), EXIT_OK
    out = {
        "point": p,
        "digits": list(seq.digits),
        "terminated": seq.terminated,
        "terminal": seq.terminal,
        "d": {str(k - 3): v for k, v in enumerate(d)},
    }
    return ser.dumps(out), EXIT_OK


def _seq_arg(text: Optional[str], flag: str = "--seq", allow_empty: bool = False) -> TriSequence:
    if text is None:
        raise UsageError(f"{flag} is required")
    seq = parse_sequence(text)
    if not seq.digits and not allow_empty:
        raise UsageError(f"{flag} must contain at least one digit")
    return seq


def cmd_vertices(args, cfg: RunConfig) -> tuple[str, int]:
    seq = _seq_arg(args.seq)
    tris = _nested(seq.digits)
    if cfg.format == "svg":
        return ser.svg_triangles(tris), EXIT_OK
    if cfg.format == "csv":
        rows = [(n, i, v.x, v.y) for n, tri in enumerate(tris) for i, v in enumerate(tri)]
        return ser.to_csv(("prefix_length", "vertex", "x", "y"), rows), EXIT_OK
    return ser.dumps({"digits": list(seq.digits),
                      "vertices": list(tris[-1]),
                      "nested": [{"prefix_length": n, "vertices": list(t)} for n, t in enumerate(tris)]}), EXIT_OK


def _family(args):
    if not args.family:
        raise UsageError("--family is required")
    return parse_family(args.family)


def cmd_classify(args, cfg: RunConfig) -> tuple[str, int]:
    _unsupported(cfg, "json")
    report = classify(_family(args), cfg.depth, cfg.unique_threshold)
    return ser.dumps(report), EXIT_OK


def cmd_segment(args, cfg: RunConfig) -> tuple[str, int]:
    _unsupported(cfg, "json")
    if args.seq is not None:
        source, name = _seq_arg(args.seq), args.seq
    else:
        source = _family(args)
        name = source.name
    est = limit_estimate(source, cfg.depth)
    out = {"source": name, "depth": est.depth}
    if isinstance(est, PointEstimate):
        out.update(kind="point", point=est.point, radius2=est.radius2, diameter=est.diameter)
    else:
        out.update(kind="segment", even_limit=est.even_limit, odd_limit=est.odd_limit, gap2=est.gap2,
                   even_residual2=est.even_residual2, odd_residual2=est.odd_residual2,
                   diameter2=est.diameter2, length=est.length, length_lower_bound=est.length_lower_bound)
    return ser.dumps(out), EXIT_OK


def cmd_cf(args, cfg: RunConfig) -> tuple[str, int]:
    if args.alpha is None:
        raise UsageError("--alpha is required")
    a = cf_expand(args.alpha)
    g = cf_geometric(args.alpha)
    if a.digits != g.digits:
        raise ConsistencyFailure(f"Gauss and lattice digits disagree for {args.alpha}")
    if cfg.format == "csv":
        return ser.to_csv(("n", "a_n"), enumerate(a.digits, start=1)), EXIT_OK
    _unsupported(cfg, "json", "csv")
    return ser.dumps({"alpha": args.alpha, "digits": list(a.digits), "terminated": a.terminated}), EXIT_OK


def cmd_ball(args, cfg: RunConfig) -> tuple[str, int]:
    if args.center is None or args.eps is None:
        raise UsageError("--center and --eps are required")
    ball = Ball(parse_point(args.center), args.eps)
    tri = find_partition_triangle_in_ball(ball, cfg.budget)
    if cfg.format == "svg":
        return ser.svg_triangles(_nested(tri.prefix.digits)), EXIT_OK
    _unsupported(cfg, "json")
    return ser.dumps({"center": ball.center, "radius": ball.radius, "prefix": list(tri.prefix.digits),
                      "vertices": list(tri.vertices)}), EXIT_OK


def cmd_mixing(args, cfg: RunConfig) -> tuple[str, int]:
    _unsupported(cfg, "json")
    a = _seq_arg(args.a, "--a", allow_empty=True)
    b = _seq_arg(args.b, "--b", allow_empty=True)
    w = mixing_witness(a, b, args.gap, cfg.sample_count)
    out = {
        "a": list(w.prefix_a.digits), "b": list(w.prefix_b.digits), "gap": w.gap,
        "concatenated": list(w.concatenated.digits), "power": w.power,
        "samples": len(w.samples), "forward_passed": w.forward_passed,
        "preimage_passed": w.preimage_passed, "preimage_total": w.preimage_total,
        "passed": w.passed,
    }
    return ser.dumps(out), EXIT_OK


COMMANDS: dict[str, Callable] = {
    "expand": cmd_expand,
    "vertices": cmd_vertices,
    "classify": cmd_classify,
    "segment": cmd_segment,
    "cf": cmd_cf,
    "ball": cmd_ball,
    "mixing": cmd_mixing,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="triseq", description="Triangle sequences, exactly.")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--depth", type=int)

    p = sub.add_parser("expand", parents=[common], help="digits and d_k trace of a point or box")
    p.add_argument("--point")
    p.add_argument("--interval")

    p = sub.add_parser("vertices", parents=[common], help="nested partition triangles of a prefix")
    p.add_argument("--seq")

    p = sub.add_parser("classify", parents=[common], help="uniqueness verdict for a digit family")
    p.add_argument("--family")
    p.add_argument("--threshold", type=_fraction, default=Fraction(1, 10 ** 6))

    p = sub.add_parser("segment", parents=[common], help="where the nested triangles shrink to")
    p.add_argument("--family")
    p.add_argument("--seq")

    p = sub.add_parser("cf", parents=[common], help="classical continued fraction digits")
    p.add_argument("--alpha", type=_fraction)

    p = sub.add_parser("ball", parents=[common], help="a partition triangle inside a ball")
    p.add_argument("--center")
    p.add_argument("--eps", type=_fraction)

    p = sub.add_parser("mixing", parents=[common], help="mixing witness for two prefixes")
    p.add_argument("--a", default="")
    p.add_argument("--b", default="")
    p.add_argument("--gap", type=int, default=0)
    p.add_argument("--samples", type=int, default=25)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig(
            depth=args.depth or 40,
            format=args.format,
            unique_threshold=getattr(args, "threshold", Fraction(1, 10 ** 6)),
            sample_count=getattr(args, "samples", 25),
            budget=Budget.from_env(),
        )
        text, code = COMMANDS[args.command](args, cfg)
    except (UsageError, ValueError) as exc:
        if isinstance(exc, TriseqError):
            print(f"triseq: {type(exc).__name__}: {exc}", file=err)
            return exc.exit_code
        print(f"triseq {args.command}: {exc}", file=err)
        return EXIT_DOMAIN
    except TriseqError as exc:
        print(f"triseq: {type(exc).__name__}: {exc}", file=err)
        return exc.exit_code
    except OSError as exc:
        print(f"triseq: {exc}", file=err)
        return EXIT_DOMAIN
    out.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
