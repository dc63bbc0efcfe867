"""Command-line front door.

Subcommands: classify, ex, ex-prime, puzzle, construct, verify, tripods,
table, serve.  Exit codes: 0 success, 1 verification failure, 2 usage
error (bad flags, unparsable mnemonics, malformed files).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import ConvexArena, ForbiddenSet, Triangle, classify_geometric, classify_pair, verify_family
from .constructions import (
    ConstructionSpec,
    construction_ids,
    generate_json,
    size_formula,
)
from .extremal import ex, ex_prime
from .misolver import DEFAULT_NODE_BUDGET
from .puzzle import (
    Grid,
    PuzzleViolation,
    search_best,
    solution_from_json,
)
from .reductions import build_table
from . import tripods as tripods_mod

USAGE_ERROR = 2
VERIFY_ERROR = 1


class CliError(Exception):
    """Usage-level problem; maps to exit code 2."""


def _parse_x(text: str) -> ForbiddenSet:
    try:
        return ForbiddenSet.parse(text)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _parse_triangle(text: str) -> Triangle:
    try:
        parts = [int(p) for p in text.split(",")]
        return Triangle.of(*parts)
    except ValueError as exc:
        raise CliError(f"bad triangle {text!r}: {exc}") from None


def _write_or_print(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _cmd_classify(args) -> int:
    arena = ConvexArena(args.m)
    t1 = _parse_triangle(args.t1)
    t2 = _parse_triangle(args.t2)
    fn = classify_geometric if args.geometric else classify_pair
    print(fn(arena, t1, t2).mnemonic)
    return 0


def _solve_cmd(args, solver) -> int:
    x = _parse_x(args.x)
    result = solver(args.n, x, budget=args.budget, canonical_witness=args.canonical)
    if args.json:
        _write_or_print(result.to_json_record(), args.json if args.json != "-" else None)
    else:
        print(result.optimum)
    if not result.exact:
        print("warning: node budget exhausted; value is a lower bound", file=sys.stderr)
    return 0


def _cmd_puzzle(args) -> int:
    grid = Grid(args.grid, args.n)
    x = _parse_x(args.x)
    result = search_best(grid, x, strategy=args.strategy, budget=args.budget, seed=args.seed)
    payload = result.state.to_json()
    payload["score"] = result.state.score
    payload["exact"] = result.exact
    if args.out:
        _write_or_print(payload, args.out)
        print(result.state.score)
    else:
        _write_or_print(payload, None)
    return 0


def _cmd_construct(args) -> int:
    spec = ConstructionSpec(args.id, args.n)
    try:
        payload = generate_json(spec)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    payload["size"] = size_formula(spec)
    _write_or_print(payload, args.out)
    return 0


def _cmd_verify(args) -> int:
    try:
        data = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read {args.file}: {exc}") from None
    try:
        if "rounds" in data:
            if args.x:
                data = dict(data, X=[k.mnemonic for k in _parse_x(args.x)])
            state = solution_from_json(data)
            if args.hash:
                print(state.state_hash())
            else:
                print(f"ok: score {state.score}")
        elif "triangles" in data:
            x = _parse_x(args.x) if args.x else ForbiddenSet.parse(",".join(data.get("X", [])) or "none")
            m = args.m or int(data["m"])
            family = [Triangle.of(*t) for t in data["triangles"]]
            verdict = verify_family(ConvexArena(m), x, family)
            if not verdict:
                t1, t2, kind = verdict.violations[0]
                print(f"violation: {tuple(t1)} vs {tuple(t2)} forms {kind.mnemonic}")
                return VERIFY_ERROR
            print(f"ok: {len(family)} triangles")
        else:
            raise CliError(f"{args.file} is neither a family nor a solution file")
    except PuzzleViolation as exc:
        print(f"violation: {exc}")
        return VERIFY_ERROR
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed file {args.file}: {exc}") from None
    return 0


def _cmd_tripods(args) -> int:
    if args.action == "max":
        try:
            count, witness = tripods_mod.brute_force_max(args.encoding, args.n, cap=args.cap)
        except ValueError as exc:
            raise CliError(str(exc)) from None
        payload = {"encoding": args.encoding, "n": args.n, "maximum": count,
                   "witness": witness.to_json()}
        _write_or_print(payload, args.out)
        return 0
    try:
        data = json.loads(Path(args.file).read_text())
        obj = tripods_mod.from_json(data)
    except (OSError, json.JSONDecodeError, ValueError, KeyError) as exc:
        raise CliError(f"cannot load {args.file}: {exc}") from None
    if args.action == "verify":
        verdict = tripods_mod.verify(obj)
        if not verdict:
            print(f"violation: {verdict.reason} {verdict.witness}")
            return VERIFY_ERROR
        print("ok")
        return 0
    # convert
    try:
        out = tripods_mod.convert(obj, args.to)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    _write_or_print(out.to_json(), args.out)
    return 0


def _cmd_table(args) -> int:
    lattice = build_table(n_max=args.n_max, budget=args.budget)
    violations = lattice.consistency_violations()
    if args.format == "csv":
        text = lattice.to_csv()
    elif args.format == "json":
        text = json.dumps(lattice.to_json(), indent=2)
    else:
        text = lattice.to_markdown()
    if args.out:
        Path(args.out).write_text(text)
    else:
        print(text, end="")
    for flag in lattice.flags:
        print(f"flag: {flag}", file=sys.stderr)
    for v in violations:
        print(f"monotonicity violation: {v}", file=sys.stderr)
    return VERIFY_ERROR if (violations or lattice.flags) else 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triconfig",
        description="Triangle-pair configuration workbench on convex point sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify one pair of triangles")
    p.add_argument("--m", type=int, required=True, help="arena vertex count")
    p.add_argument("--t1", required=True, help="first triangle, e.g. 0,1,2")
    p.add_argument("--t2", required=True, help="second triangle")
    p.add_argument("--geometric", action="store_true", help="use the geometric oracle")
    p.set_defaults(func=_cmd_classify)

    for name, solver in (("ex", ex), ("ex-prime", ex_prime)):
        p = sub.add_parser(name, help=f"exact {name}(n, X)")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--x", required=True, help='forbidden set, e.g. "taco,nested" or "all"')
        p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
        p.add_argument("--canonical", action="store_true", help="lexicographically least witness")
        p.add_argument("--json", nargs="?", const="-", help="emit the full JSON record [to FILE]")
        p.set_defaults(func=lambda a, s=solver: _solve_cmd(a, s))

    p = sub.add_parser("puzzle", help="search the dot puzzle")
    p.add_argument("--grid", choices=["triangular", "square"], default="triangular")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--strategy", choices=["greedy-rounds", "randomized-restart", "dfs-exact"],
                   default="greedy-rounds")
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the solution file here")
    p.set_defaults(func=_cmd_puzzle)

    p = sub.add_parser("construct", help="emit a named construction")
    p.add_argument("--id", required=True, choices=construction_ids())
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="verify a family or solution file")
    p.add_argument("--file", required=True)
    p.add_argument("--x", help="override the file's forbidden set")
    p.add_argument("--m", type=int, help="override the arena size (family files)")
    p.add_argument("--hash", action="store_true", help="print the final state hash")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("tripods", help="grid-packing encodings")
    p.add_argument("action", choices=["verify", "convert", "max"])
    p.add_argument("--encoding", choices=[
        tripods_mod.ENC_TRIPLES, tripods_mod.ENC_MATRIX,
        tripods_mod.ENC_TRIPODS, tripods_mod.ENC_PUZZLE,
    ], default=tripods_mod.ENC_TRIPLES)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--cap", type=int, default=4, help="brute-force size cap")
    p.add_argument("--file", help="input object (verify/convert)")
    p.add_argument("--to", help="target encoding (convert)")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_tripods)

    p = sub.add_parser("table", help="exact table over all 256 subsets")
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--format", choices=["csv", "json", "markdown"], default="csv")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("serve", help="run the JSON API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8765)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
