"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 parse or parameter error,
3 refusal on resource grounds (instance or enumeration too large).
"""

from __future__ import annotations

import argparse
import sys

from . import bench, dp, gen, model, oracle


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schedmax",
        description=(
            "Exact preemptive scheduling of equal-length weighted jobs "
            "for maximum completed weight"
        ),
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance file exactly")
    p_solve.add_argument("--input", required=True, help="instance JSON file")
    p_solve.add_argument("--output", required=True, help="solution JSON file to write")
    p_solve.add_argument(
        "--dump-tables",
        metavar="FILE",
        help="also write every solver table cell (large: grows with n cubed)",
    )

    p_val = sub.add_parser("validate", help="check a solution file against an instance")
    p_val.add_argument("--instance", required=True)
    p_val.add_argument("--solution", required=True)

    p_oracle = sub.add_parser("oracle", help="solve by exhaustive enumeration")
    p_oracle.add_argument("--input", required=True)
    p_oracle.add_argument("--output", required=True)
    p_oracle.add_argument(
        "--max-n",
        type=int,
        default=20,
        help="refuse instances with more real jobs than this (default 20)",
    )

    p_gen = sub.add_parser("gen", help="generate a seeded instance file")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--p", type=int, default=2)
    p_gen.add_argument("--horizon", type=int, default=50)
    p_gen.add_argument("--max-window", type=int, default=10)
    p_gen.add_argument("--max-weight", type=int, default=100)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--family", choices=gen.FAMILIES, default="uniform")
    p_gen.add_argument("--output", required=True)

    p_bench = sub.add_parser("bench", help="measure runtime scaling of the solver")
    p_bench.add_argument(
        "--sizes",
        default="50,100,150,200",
        help="comma-separated, strictly increasing instance sizes",
    )
    p_bench.add_argument("--repeats", type=int, default=3)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--output", required=True)

    return parser


def cmd_solve(args) -> int:
    instance = model.load_instance(args.input)
    if instance.dropped:
        labels = ", ".join(j.id for j in instance.dropped)
        print(f"dropped (deadline before release + p): {labels}", file=sys.stderr)
    tables = dp.compute_tables(instance)
    solution = dp.solve(instance, tables)
    model.write_solution(args.output, instance, solution)
    if args.dump_tables:
        model.write_json(args.dump_tables, dp.tables_to_dict(tables))
    print(f"weight {solution.weight}, {len(solution.completed)} jobs completed")
    return 0


def cmd_validate(args) -> int:
    instance = model.load_instance(args.instance)
    try:
        solution = model.load_solution(args.solution, instance)
    except model.UnknownJobError as exc:
        print(f"INVALID: {exc}")
        return 1
    report = model.validate(instance, solution)
    if report.ok:
        print("OK")
        return 0
    for line in report.violations:
        print(f"INVALID: {line}")
    return 1


def cmd_oracle(args) -> int:
    instance = model.load_instance(args.input)
    limits = oracle.OracleLimits(max_n=args.max_n)
    solution = oracle.oracle_solve(instance, limits)
    model.write_solution(args.output, instance, solution)
    print(f"weight {solution.weight}, {len(solution.completed)} jobs completed")
    return 0


def cmd_gen(args) -> int:
    params = gen.GenParams(
        n=args.n,
        p=args.p,
        horizon=args.horizon,
        max_window=args.max_window,
        max_weight=args.max_weight,
        seed=args.seed,
        family=args.family,
    )
    model.write_json(args.output, gen.generate(params))
    print(f"wrote {args.n} jobs to {args.output}")
    return 0


def cmd_bench(args) -> int:
    try:
        sizes = [int(part) for part in args.sizes.split(",") if part.strip()]
    except ValueError:
        raise model.InputError(f"could not parse sizes {args.sizes!r}") from None
    report = bench.run_bench(sizes, args.repeats, args.seed)
    model.write_json(args.output, bench.report_to_dict(report))
    for size, t in zip(report.sizes, report.times):
        print(f"n={size}: {t:.4f}s")
    print(f"fitted exponent {report.fitted_exponent:.2f}")
    return 0


_COMMANDS = {
    "solve": cmd_solve,
    "validate": cmd_validate,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.cmd](args)
    except model.InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except model.ResourceLimitError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
