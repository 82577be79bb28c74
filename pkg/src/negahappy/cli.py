"""Command-line front end.

Exit status: 0 on success, 1 on bad input or a domain error, 2 when a search
finds nothing or a verification fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from negahappy import atlas as atlas_mod
from negahappy.errors import NegahappyError, NotFound
from negahappy.goodset import tower
from negahappy.goodset.certificate import WitnessCertificate, direct_check, violations
from negahappy.goodset.tower import DEFAULT_DIGIT_BUDGET
from negahappy.goodset.witness import build_run_witness, good_witness
from negahappy.happy import is_happy, power_sum, trajectory
from negahappy.negabase import evaluate, expand, format_digits, parse_digits
from negahappy.runs import RunQuery, default_difference, find_run, verify_characterization

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    return int(value) if value else default


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _emit(args, text: str, payload) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        print(text)


def cmd_expand(args) -> int:
    digits = expand(args.value, args.base)
    _emit(args, format_digits(digits), {"base": args.base, "value": args.value, "digits": format_digits(digits)})
    return EXIT_OK


def cmd_eval(args) -> int:
    digits, b = parse_digits(args.digits, args.base)
    value = evaluate(digits, b)
    _emit(args, str(value), {"base": b, "digits": format_digits(digits), "value": value})
    return EXIT_OK


def cmd_step(args) -> int:
    s = power_sum(args.value, args.base, args.exponent)
    _emit(args, str(s), {"base": args.base, "exponent": args.exponent, "value": args.value, "image": s})
    return EXIT_OK


def cmd_trajectory(args) -> int:
    traj = trajectory(args.value, args.base, args.exponent)
    text = " ".join(map(str, traj.tail))
    text = (text + " " if text else "") + "(" + " ".join(map(str, traj.cycle)) + ")"
    _emit(
        args,
        text,
        {"start": traj.start, "iterates": list(traj.iterates), "entry_index": traj.entry_index},
    )
    return EXIT_OK


def cmd_happy(args) -> int:
    verdicts = [(a, is_happy(a, args.base, args.exponent)) for a in args.values]
    if args.format == "json":
        for a, h in verdicts:
            print(json.dumps({"base": args.base, "value": a, "happy": h}))
    else:
        for a, h in verdicts:
            print(f"{a} {'happy' if h else 'unhappy'}")
    return EXIT_OK


def cmd_cycles(args) -> int:
    at = atlas_mod.enumerate_atlas(args.base, args.exponent, bound=args.bound, search_floor=args.floor)
    _emit(args, atlas_mod.render_table([at]), at.to_json())
    return EXIT_OK


def cmd_table(args) -> int:
    bases = atlas_mod.parse_base_range(args.base)
    atlases = atlas_mod.table(bases, args.exponent)
    if args.format == "json":
        print(atlas_mod.table_json(atlases))
    else:
        print(atlas_mod.render_table(atlases))
    if args.check:
        golden = {row["base"]: row for row in atlas_mod.load_golden()}
        bad = False
        for at in atlases:
            if at.b not in golden:
                continue
            for diff in atlas_mod.matches_golden(at, golden[at.b]):
                print(f"base {at.b}: {diff}", file=sys.stderr)
                bad = True
        return EXIT_FAILED if bad else EXIT_OK
    return EXIT_OK


def cmd_runs(args) -> int:
    d = args.d if args.d is not None else default_difference(args.base)
    query = RunQuery(args.base, d, args.length, args.start, args.budget, args.exponent)
    print(f"scanning {args.budget} starts from {args.start} in base {args.base}", file=sys.stderr)
    result = find_run(query, workers=args.workers)
    print(result.to_json())
    return EXIT_OK if result.found else EXIT_FAILED


def cmd_characterize(args) -> int:
    holds = verify_characterization(args.base, args.limit)
    rule = "a = 1 (mod 3)" if args.base == -2 else "a odd"
    _emit(
        args,
        f"base {args.base}: happy <=> {rule} for 1 <= |a| <= {args.limit}: {'holds' if holds else 'FAILS'}",
        {"base": args.base, "limit": args.limit, "holds": holds},
    )
    return EXIT_OK if holds else EXIT_FAILED


def cmd_witness(args) -> int:
    if args.set:
        members = [int(x) for x in args.set.split(",")]
        _, cert = good_witness(args.base, members, args.target, args.max_depth)
    else:
        run = build_run_witness(args.base, args.N, args.max_depth)
        if run.certificate is None:
            print(json.dumps({"base": run.b, "d": run.d, "N": run.N, "n": tower.to_json(run.n)}))
            return EXIT_OK
        cert = run.certificate
    text = cert.dumps()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(
        f"base {cert.b}: T = {list(cert.T)}, k = {cert.k}, {len(cert.levels)} levels, n = {tower.describe(cert.n)}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_verify(args) -> int:
    with open(args.file) if args.file != "-" else sys.stdin as fh:
        cert = WitnessCertificate.loads(fh.read())
    problems = violations(cert, args.digit_budget)
    direct = direct_check(cert, args.digit_budget) if args.direct and not problems else None
    if args.format == "json":
        print(
            json.dumps(
                {"valid": not problems, "violations": [str(p) for p in problems], "direct": direct}
            )
        )
    else:
        for p in problems:
            print(p)
        print("valid" if not problems else "INVALID")
        if direct is not None:
            print(f"direct iteration: {'agrees' if direct else 'DISAGREES'}")
    return EXIT_FAILED if problems or direct is False else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="negahappy", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, exponent=True, base_type=int):
        p = sub.add_parser(name, help=help)
        p.add_argument("-b", "--base", type=base_type, required=True, help="negative base, e.g. -b -10")
        if exponent:
            p.add_argument("-e", "--exponent", type=int, default=2)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.set_defaults(func=func)
        return p

    p = add("expand", cmd_expand, "integer -> negabase digits", exponent=False)
    p.add_argument("value", type=int)
    p = add("eval", cmd_eval, "negabase digits -> integer", exponent=False)
    p.add_argument("digits")
    p = add("step", cmd_step, "one application of S")
    p.add_argument("value", type=int)
    p = add("trajectory", cmd_trajectory, "iterate S until a value repeats")
    p.add_argument("value", type=int)
    p = add("happy", cmd_happy, "happiness test")
    p.add_argument("values", type=int, nargs="+")
    p = add("cycles", cmd_cycles, "fixed points and cycles for one base")
    p.add_argument("--bound", type=int, default=None, help="search bound (required for e != 2)")
    p.add_argument("--floor", type=int, default=atlas_mod.DEFAULT_SEARCH_FLOOR)
    p = add("table", cmd_table, "table of cycles over a base range", base_type=str)
    p.add_argument("--check", action="store_true", help="compare with the reference table")
    p = add("runs", cmd_runs, "search for d-consecutive happy runs")
    p.add_argument("-d", type=int, default=None, help="difference (default gcd(2, b-1))")
    p.add_argument("-L", "--length", type=int, default=3)
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--budget", type=int, default=_env_int("NEGAHAPPY_BUDGET", 10**7))
    p.add_argument("--workers", type=int, default=1)
    p = add("characterize", cmd_characterize, "check the base -2 / -3 characterisations", exponent=False)
    p.add_argument("--limit", type=int, default=10**6)
    p = add("witness", cmd_witness, "build a good-set or run certificate", exponent=False)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--set", help="comma-separated members of T")
    group.add_argument("-N", type=int, help="run length for 1, 1+d, ..., 1+(N-1)d")
    p.add_argument("--target", type=int, default=1)
    p.add_argument("--max-depth", type=int, default=800)
    p.add_argument("-o", "--output")

    p = sub.add_parser("verify", help="check a certificate file ('-' for stdin)")
    p.add_argument("file")
    p.add_argument("--digit-budget", type=int, default=_env_int("NEGAHAPPY_DIGIT_BUDGET", DEFAULT_DIGIT_BUDGET))
    p.add_argument("--direct", action="store_true", help="also iterate S on the digits of t + n when they fit")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_verify)
    return parser


def _join_base_values(argv: list[str]) -> list[str]:
    """Turn ``-b -10..-2`` into ``-b=-10..-2`` so argparse does not read the value as a flag."""
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg in ("-b", "--base") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{arg}={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(_join_base_values(argv))
    try:
        return args.func(args)
    except NotFound as exc:
        print(f"not found: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except NegahappyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
