"""Command-line interface.

Exit codes: 0 success, 1 campaign failure, 2 input validation error,
3 internal invariant violation, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .campaign import run_campaign
from .cycles import (
    cycle_from_json_obj,
    rot_angle_float,
    rot_formula_twelfths,
    rot_winding_exact,
)
from .errors import InternalInconsistency, LatticeError
from .generation import CurvatureData, GeneratorParams, random_cycle, reconstruct
from .higher_dim import TriangulatedCycle, degree, validate_unimodular_map
from .invariants import local_mus, local_nus
from .reduction import rot_by_reduction

EXIT_OK = 0
EXIT_CAMPAIGN_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_INTERNAL = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_json(path: str):
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return json.loads(text)


def _emit(obj) -> None:
    print(json.dumps(obj))


def _twelfths(n: int) -> str:
    return f"{n}/12"


def cmd_invariants(args) -> int:
    cycle = cycle_from_json_obj(_read_json(args.input))
    v = cycle.vectors
    mus, nus = local_mus(v), local_nus(v)
    rot = rot_formula_twelfths(cycle)
    if args.json:
        _emit({
            "local_mu": mus,
            "local_nu": nus,
            "mu": sum(mus),
            "nu": sum(nus),
            "rot_twelfths": rot.numerator,
            "rot": rot.to_int(v),
        })
        return EXIT_OK
    d = len(v)
    for i in range(d):
        print(f"window {i}: mu{tuple(v[i - 1])},{tuple(v[i])},{tuple(v[(i + 1) % d])} = {mus[i]}")
    for i in range(d):
        print(f"edge {i}: nu{tuple(v[i])},{tuple(v[(i + 1) % d])} = {nus[i]}")
    print(f"mu(L) = {sum(mus)}")
    print(f"nu(L) = {sum(nus)}")
    print(f"Rot = mu/12 + nu/4 = {_twelfths(rot.numerator)} = {rot.to_int(v)}")
    return EXIT_OK


def cmd_rot(args) -> int:
    cycle = cycle_from_json_obj(_read_json(args.input))
    methods = ["formula", "reduce", "winding"] if args.method == "all" else [args.method]
    values: dict[str, int] = {}
    twelfths: dict[str, int] = {}
    for m in methods:
        if m == "formula":
            t = rot_formula_twelfths(cycle)
            twelfths[m] = t.numerator
            values[m] = t.to_int(cycle.vectors)
        elif m == "reduce":
            r, trace = rot_by_reduction(cycle)
            twelfths[m] = trace.total.numerator
            values[m] = r
        else:
            values[m] = rot_winding_exact(cycle)
            twelfths[m] = 12 * values[m]
    agree = len(set(values.values())) == 1
    if args.json:
        out = {"values": values, "twelfths": twelfths, "agree": agree}
        if args.method == "all":
            out["angle_sum"] = rot_angle_float(cycle)
        if not agree:
            out["input"] = cycle.to_json_obj()
        _emit(out)
    else:
        for m in methods:
            print(f"{m}: {values[m]} ({_twelfths(twelfths[m])})")
        if args.method == "all":
            print(f"angle sum: {rot_angle_float(cycle):.12f}")
    if not agree:
        print(f"method disagreement on {cycle.to_json()}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_reduce(args) -> int:
    cycle = cycle_from_json_obj(_read_json(args.input))
    rot, trace = rot_by_reduction(cycle)
    obj = trace.to_json_obj()
    obj["rot"] = rot
    _emit(obj)
    return EXIT_OK


def cmd_generate(args) -> int:
    if args.length < 2:
        raise UsageError("--length must be >= 2")
    if args.fan and args.length < 3:
        raise UsageError("--fan needs --length >= 3")
    params = GeneratorParams(
        seed=args.seed, target_length=args.length, shear_bound=args.shear_bound, fan=args.fan
    )
    _emit(random_cycle(params).to_json_obj())
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    data = CurvatureData.from_json_obj(_read_json(args.input))
    seq = reconstruct(data)
    _emit({"vectors": [list(v) for v in seq.vectors]})
    return EXIT_OK


def cmd_degree(args) -> int:
    t = validate_unimodular_map(TriangulatedCycle.from_json_obj(_read_json(args.input)))
    _emit({"degree": degree(t)})
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    if args.max_length < 2:
        raise UsageError("--max-length must be >= 2")
    report = run_campaign(args.seed, args.trials, args.max_length, workers=args.workers)
    _emit(report.to_json_obj())
    return EXIT_OK if report.failures == 0 else EXIT_CAMPAIGN_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="unimodular-cycles", description="Rotation numbers of unimodular lattice cycles.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(p):
        p.add_argument("--input", "-i", default="-", help="JSON file, or - for stdin (default)")
        return p

    p = with_input(sub.add_parser("invariants", help="local and global mu, nu and the closed formula"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = with_input(sub.add_parser("rot", help="rotation number by one or all methods"))
    p.add_argument("--method", choices=["formula", "reduce", "winding", "all"], default="all")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_rot)

    p = with_input(sub.add_parser("reduce", help="reduction trace as JSON"))
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("generate", help="random cyclic unimodular sequence as JSON")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--length", type=int, default=10)
    p.add_argument("--shear-bound", type=int, default=4)
    p.add_argument("--fan", action="store_true", help="convex fan: all nu = +1, winding 1")
    p.set_defaults(func=cmd_generate)

    p = with_input(sub.add_parser("reconstruct", help="sequence from u1, u2, nus, mus"))
    p.set_defaults(func=cmd_reconstruct)

    p = with_input(sub.add_parser("degree", help="degree of a unimodular map (dimension 1 or 2)"))
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("verify", help="randomized campaign; prints a JSON report")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-length", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInconsistency as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (LatticeError, ValueError, TypeError, OSError) as exc:
        # json.JSONDecodeError is a ValueError
        print(f"invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
