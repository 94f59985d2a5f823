"""Command line interface for seeded runs and the full comparison grid."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import harness
from .emoa import DEFAULT_BUDGET
from .problems import available_problems
from .update import strategy_from_name


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emoa-lab",
        description="SMS-EMOA runtime experiments with deterministic or "
        "stochastic population update.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser(
        "run", help="run one seeded trial batch for a single (n, k, strategy) cell"
    )
    run_p.add_argument("--problem", default="ojzj", choices=available_problems())
    run_p.add_argument("--n", type=int, required=True, help="problem size")
    run_p.add_argument("--k", type=int, required=True, help="jump parameter")
    run_p.add_argument(
        "--mu",
        type=int,
        default=None,
        help="population size (default: 2(n-2k+4))",
    )
    run_p.add_argument(
        "--strategy", required=True, choices=("deterministic", "stochastic")
    )
    run_p.add_argument(
        "--subset-fraction",
        type=float,
        default=0.5,
        help="competing fraction of the multiset for the stochastic strategy",
    )
    run_p.add_argument("--runs", type=int, required=True)
    run_p.add_argument("--seed", type=int, required=True, help="base seed")
    run_p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    run_p.add_argument(
        "--out", required=True, help="output directory for trials.csv and summary.csv"
    )
    run_p.add_argument("--jobs", type=int, default=None, help="parallel workers")

    fig_p = sub.add_parser(
        "figure3",
        help="run the full runtime-comparison grid (k=2, n=10..30, both strategies)",
    )
    fig_p.add_argument("--out-dir", required=True)
    fig_p.add_argument("--runs", type=int, default=harness.PAPER_RUNS)
    fig_p.add_argument("--seed", type=int, default=harness.DEFAULT_BASE_SEED)
    fig_p.add_argument("--jobs", type=int, default=None)
    return parser


def _cmd_run(args) -> int:
    plan = harness.ExperimentPlan(
        cells=((args.n, args.k),),
        strategies=(strategy_from_name(args.strategy, args.subset_fraction),),
        runs_per_cell=args.runs,
        base_seed=args.seed,
        budget=args.budget,
        problem=args.problem,
        mu_rule=(lambda n, k: args.mu) if args.mu is not None else None,
        out_dir=args.out,
    )
    _, summaries = harness.run_experiment(plan, jobs=args.jobs)
    for s in summaries:
        print(
            f"{s.problem} n={s.n} k={s.k} mu={s.mu} {s.strategy}: "
            f"{s.successes}/{s.runs} runs found the front, "
            f"mean={s.mean_gens:.1f} median={s.median_gens:.1f} generations"
        )
    print(f"wrote {Path(args.out) / harness.TRIALS_CSV}")
    print(f"wrote {Path(args.out) / harness.SUMMARY_CSV}")
    return 0


def _cmd_figure3(args) -> int:
    _, summaries = harness.run_figure3(
        args.out_dir, runs=args.runs, jobs=args.jobs, base_seed=args.seed
    )
    for s in summaries:
        print(
            f"n={s.n} {s.strategy}: mean={s.mean_gens:.1f} "
            f"std={s.std_gens:.1f} median={s.median_gens:.1f} "
            f"({s.successes}/{s.runs} successes)"
        )
    for entry in harness.std_mean_report(summaries):
        flag = "  [spread outside 0.5..2x mean]" if entry["flagged"] else ""
        print(
            f"std/mean n={entry['n']} {entry['strategy']}: "
            f"{entry['std_over_mean']:.3f}{flag}"
        )
    out = Path(args.out_dir)
    for name in (
        harness.TRIALS_CSV,
        harness.SUMMARY_CSV,
        harness.PLOT_DATA_JSON,
        harness.FIGURE_SVG,
    ):
        print(f"wrote {out / name}")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "figure3":
            return _cmd_figure3(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 2


if __name__ == "__main__":
    sys.exit(main())
