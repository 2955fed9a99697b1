"""Command-line front end.

    dgrid far 1/3 --base 2 --json
    dgrid far --stream growing-zeros --depth 10000
    dgrid expand 4/7 --base 2
    dgrid adjacent "0|:0" "1/3|:1,0" --base 2
    dgrid cover "5/16,3/8" "0|:0" "1/3|:1,0" --base 2
    dgrid estimate "0|:0" "1/3|:1,0" --trials 1000 --seed 0 --scales -5..20
    dgrid witness 1/4 --base 2 -N 5
    dgrid canonicalize "2|:1" --base 2

Exit status: 0 on success (a negative answer is still success), 2 for
malformed input, 1 for mathematically invalid requests. Literals starting
with ``-`` must follow ``--`` on the command line.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import adjacency, far, grids, mei
from .exact import DomainError, expand, parse_rational

DEFAULT_MAX_DENOM = 10**9

STREAMS = {
    "growing-zeros": far.growing_zeros_stream,
    "far-blocks": far.far_block_stream,
}


class UsageError(Exception):
    """Malformed command line or literal (exit status 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _max_denom() -> int:
    raw = os.environ.get("DG_MAX_DENOM")
    if raw is None:
        return DEFAULT_MAX_DENOM
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"DG_MAX_DENOM is not an integer: {raw!r}") from None
    if value < 1:
        raise UsageError(f"DG_MAX_DENOM must be positive: {raw!r}")
    return value


def _checked(x: Fraction, token: str) -> Fraction:
    if x.denominator > _max_denom():
        raise UsageError(f"denominator of {token!r} exceeds DG_MAX_DENOM")
    return x


def _rational(token: str) -> Fraction:
    try:
        return _checked(parse_rational(token), token)
    except ValueError:
        raise UsageError(f"bad rational: {token!r}") from None


def _grid(token: str, base: int) -> grids.GridRep:
    try:
        g = grids.GridRep.parse(token, base)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad grid {token!r}: {exc}") from None
    _checked(g.shift, token)
    return g


def _query(token: str) -> mei.Query:
    try:
        q = mei.Query.parse(token)
    except ValueError as exc:
        raise UsageError(f"bad query {token!r}: {exc}") from None
    _checked(q.left, token)
    _checked(q.right, token)
    return q


def _scales(token: str) -> tuple[int, int]:
    try:
        a, b = token.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise UsageError(f"bad scale range {token!r}, expected a..b") from None
    if lo > hi:
        raise UsageError(f"empty scale range {token!r}")
    return lo, hi


def _base(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad base: {value!r}") from None
    if n < 2:
        raise argparse.ArgumentTypeError(f"base must be >= 2: {value!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dgrid", description="Exact computations on general n-adic grids.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--base", type=_base, default=2)
    common.add_argument("--json", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("far", parents=[common], help="far-number certificate")
    p.add_argument("delta", nargs="?")
    p.add_argument("--stream", choices=sorted(STREAMS))
    p.add_argument("--depth", type=int, default=10_000)

    p = sub.add_parser("expand", parents=[common], help="base-n expansion of x in [0,1)")
    p.add_argument("x")

    p = sub.add_parser("adjacent", parents=[common], help="adjacency decision")
    p.add_argument("g1")
    p.add_argument("g2")

    p = sub.add_parser("cover", parents=[common], help="minimal covering cell")
    p.add_argument("query")
    p.add_argument("g1")
    p.add_argument("g2")

    p = sub.add_parser("estimate", parents=[common], help="empirical cover constant")
    p.add_argument("g1")
    p.add_argument("g2")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scales", default="-5..20")

    p = sub.add_parser("witness", parents=[common], help="adversarial query for a non-far shift")
    p.add_argument("delta")
    p.add_argument("-N", type=int, required=True)

    p = sub.add_parser("canonicalize", parents=[common], help="representation with shift in [0,1)")
    p.add_argument("grid")
    return parser


def _text(pairs) -> str:
    width = max(len(k) for k, _ in pairs)
    lines = []
    for k, v in pairs:
        if isinstance(v, bool):
            v = "true" if v else "false"
        elif isinstance(v, (list, tuple)):
            v = " ".join(str(x) for x in v)
        elif v is None:
            v = "-"
        lines.append(f"{k.ljust(width)}  {v}")
    return "\n".join(lines)


def _render(data: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(data, sort_keys=True)
    flat = []
    for k, v in data.items():
        if isinstance(v, dict):
            flat.extend((f"{k}.{kk}", vv) for kk, vv in v.items())
        else:
            flat.append((k, v))
    return _text(flat)


def _dispatch(args) -> dict:
    n = args.base
    if args.verb == "far":
        if args.stream:
            if args.delta is not None:
                raise UsageError("give either a delta or --stream, not both")
            if args.depth < 1:
                raise UsageError("--depth must be >= 1")
            t, verdict = far.bounded_tie_analysis(STREAMS[args.stream](n), args.depth)
            return {"stream": args.stream, "base": n, "depth": args.depth,
                    "t_lower_bound": t, "verdict": verdict.value}
        if args.delta is None:
            raise UsageError("far needs a delta or --stream")
        return far.certificate(_rational(args.delta), n).to_dict()
    if args.verb == "expand":
        e = expand(_rational(args.x), n)
        return {"x": args.x, "base": n,
                "preperiod": list(e.preperiod), "period": list(e.period)}
    if args.verb == "adjacent":
        return adjacency.is_adjacent(_grid(args.g1, n), _grid(args.g2, n)).to_dict()
    if args.verb == "cover":
        q = _query(args.query)
        return mei.cover(q, _grid(args.g1, n), _grid(args.g2, n)).to_dict()
    if args.verb == "estimate":
        if args.trials < 1:
            raise UsageError("--trials must be >= 1")
        est = mei.cover_constant_estimate(
            _grid(args.g1, n), _grid(args.g2, n), args.trials, _scales(args.scales), args.seed
        )
        return est.to_dict()
    if args.verb == "witness":
        delta = _rational(args.delta)
        m0, k0 = mei.witness_index(delta, n, args.N)
        q = mei.adversarial_witness(delta, n, args.N)
        return {**q.to_dict(), "m0": m0, "k0": k0}
    if args.verb == "canonicalize":
        return grids.canonicalize(_grid(args.grid, n)).to_dict()
    raise UsageError(f"unknown verb {args.verb!r}")  # pragma: no cover


def run(argv: list[str]) -> tuple[int, str]:
    """Execute one command; returns ``(exit_code, output_text)``."""
    try:
        args = build_parser().parse_args(argv)
        return 0, _render(_dispatch(args), args.json)
    except UsageError as exc:
        return 2, f"error: {exc}"
    except DomainError as exc:
        return 1, f"domain error: {exc}"


def main(argv=None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code == 0 else sys.stderr
    print(out, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
