"""Batch experiment runner: seeded trial grids, CSV output, statistics.

A plan expands into one trial per (cell, strategy, run index), each with its
own seed derived as base_seed plus a deterministic offset. Trials may run in
parallel; outputs are sorted canonically so the emitted files do not depend
on scheduling. Rerunning a plan reproduces every stochastic column exactly
(wall-clock milliseconds are the one non-reproducible field).
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .emoa import DEFAULT_BUDGET, EmoaConfig, Termination, run_sms_emoa
from .update import UpdateStrategy, strategy_from_name

TRIALS_CSV = "trials.csv"
SUMMARY_CSV = "summary.csv"
PLOT_DATA_JSON = "plot_data.json"
FIGURE_SVG = "figure3.svg"

TRIAL_FIELDS = (
    "problem,n,k,mu,strategy,seed,run_index,generations,front_found,wall_ms"
)
SUMMARY_FIELDS = (
    "problem,n,k,mu,strategy,runs,mean_gens,std_gens,median_gens,"
    "min_gens,max_gens,successes"
)

PAPER_K = 2
PAPER_NS = (10, 15, 20, 25, 30)
PAPER_RUNS = 1000
DEFAULT_BASE_SEED = 90210


def default_mu_rule(n: int, k: int) -> int:
    """Population size suggested by the stochastic-update guarantee."""
    return 2 * (n - 2 * k + 4)


@dataclass(frozen=True)
class TrialResult:
    problem: str
    n: int
    k: int
    mu: int
    strategy: str
    seed: int
    run_index: int
    generations: int
    front_found: bool
    wall_ms: float

    def sort_key(self):
        return (self.problem, self.n, self.k, self.strategy, self.run_index)


@dataclass(frozen=True)
class SummaryRow:
    problem: str
    n: int
    k: int
    mu: int
    strategy: str
    runs: int
    mean_gens: float
    std_gens: float
    median_gens: float
    min_gens: int
    max_gens: int
    successes: int


@dataclass(frozen=True)
class ExperimentPlan:
    """Trial grid over problem cells and update strategies.

    ``mu_rule`` maps (n, k) to the population size; the default follows the
    stochastic-update guarantee, 2(n - 2k + 4). Seeds are ``base_seed +
    offset`` with offsets enumerating cells x strategies x runs, so every
    trial seed is distinct and any single trial can be replayed in isolation.
    """

    cells: tuple[tuple[int, int], ...]
    strategies: tuple[UpdateStrategy, ...]
    runs_per_cell: int
    base_seed: int = DEFAULT_BASE_SEED
    budget: int = DEFAULT_BUDGET
    problem: str = "ojzj"
    mu_rule: Callable[[int, int], int] | None = None
    out_dir: str | Path | None = None

    def __post_init__(self):
        if self.runs_per_cell < 1:
            raise ValueError(f"runs_per_cell must be at least 1, got {self.runs_per_cell}")
        if not self.cells:
            raise ValueError("plan needs at least one (n, k) cell")
        if not self.strategies:
            raise ValueError("plan needs at least one strategy")

    def mu_for(self, n: int, k: int) -> int:
        rule = self.mu_rule or default_mu_rule
        mu = int(rule(n, k))
        if mu < 1:
            raise ValueError(f"mu rule produced {mu} for (n={n}, k={k})")
        return mu

    def trial_specs(self) -> list["_TrialSpec"]:
        specs = []
        offset = 0
        for n, k in self.cells:
            mu = self.mu_for(n, k)
            for strategy in self.strategies:
                for run_index in range(self.runs_per_cell):
                    specs.append(
                        _TrialSpec(
                            problem=self.problem,
                            n=n,
                            k=k,
                            mu=mu,
                            strategy=strategy,
                            seed=self.base_seed + offset,
                            run_index=run_index,
                            budget=self.budget,
                        )
                    )
                    offset += 1
        return specs


@dataclass(frozen=True)
class _TrialSpec:
    problem: str
    n: int
    k: int
    mu: int
    strategy: UpdateStrategy
    seed: int
    run_index: int
    budget: int


def run_trial(spec: _TrialSpec) -> TrialResult:
    """Execute one seeded trial and time it."""
    config = EmoaConfig(
        problem=spec.problem,
        problem_params={"n": spec.n, "k": spec.k},
        mu=spec.mu,
        strategy=spec.strategy,
        seed=spec.seed,
        budget=spec.budget,
        termination=Termination.FULL_FRONT_COVERAGE,
    )
    start = time.perf_counter()
    record = run_sms_emoa(config)
    wall_ms = (time.perf_counter() - start) * 1000.0
    return TrialResult(
        problem=spec.problem,
        n=spec.n,
        k=spec.k,
        mu=spec.mu,
        strategy=spec.strategy.kind,
        seed=spec.seed,
        run_index=spec.run_index,
        generations=record.generations,
        front_found=record.front_found,
        wall_ms=wall_ms,
    )


def run_experiment(
    plan: ExperimentPlan, jobs: int | None = None
) -> tuple[list[TrialResult], list[SummaryRow]]:
    """Run every trial in the plan and aggregate per-cell summaries.

    Trials execute in parallel worker processes when ``jobs`` exceeds one;
    results are sorted canonically by (problem, n, k, strategy, run index)
    either way. When the plan names an output directory, trial and summary
    CSVs are written there; writability is checked before any trial starts.
    """
    out_dir = Path(plan.out_dir) if plan.out_dir is not None else None
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        probe = out_dir / ".write_probe"
        try:
            probe.write_text("")
        finally:
            if probe.exists():
                probe.unlink()

    specs = plan.trial_specs()
    if jobs is None:
        jobs = os.cpu_count() or 1
    jobs = max(1, min(jobs, len(specs)))
    if any(s.subset_size_rule is not None for s in plan.strategies):
        jobs = 1  # arbitrary rule callables do not cross process boundaries
    if jobs == 1:
        trials = [run_trial(spec) for spec in specs]
    else:
        chunk = max(1, len(specs) // (jobs * 16))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            trials = list(pool.map(run_trial, specs, chunksize=chunk))
    trials.sort(key=TrialResult.sort_key)

    summaries = []
    for key in sorted({(t.problem, t.n, t.k, t.strategy) for t in trials}):
        cell = [t for t in trials if (t.problem, t.n, t.k, t.strategy) == key]
        summaries.append(summarize(cell))

    if out_dir is not None:
        write_trials_csv(out_dir / TRIALS_CSV, trials)
        write_summary_csv(out_dir / SUMMARY_CSV, summaries)
    return trials, summaries


def summarize(trials: Sequence[TrialResult]) -> SummaryRow:
    """Aggregate one cell's trials; statistics cover successful runs only."""
    if not trials:
        raise ValueError("cannot summarize an empty trial list")
    first = trials[0]
    for t in trials:
        if (t.problem, t.n, t.k, t.mu, t.strategy) != (
            first.problem,
            first.n,
            first.k,
            first.mu,
            first.strategy,
        ):
            raise ValueError("summarize expects trials from a single cell")
    gens = np.array([t.generations for t in trials if t.front_found], dtype=np.int64)
    if gens.size:
        mean = float(gens.mean())
        std = float(gens.std(ddof=0))
        median = float(np.median(gens))
        lo, hi = int(gens.min()), int(gens.max())
    else:
        mean = std = median = float("nan")
        lo = hi = 0
    return SummaryRow(
        problem=first.problem,
        n=first.n,
        k=first.k,
        mu=first.mu,
        strategy=first.strategy,
        runs=len(trials),
        mean_gens=mean,
        std_gens=std,
        median_gens=median,
        min_gens=lo,
        max_gens=hi,
        successes=int(gens.size),
    )


def rank_sum_compare(
    a: Sequence[float], b: Sequence[float]
) -> tuple[float, float]:
    """Mann-Whitney U with tie correction and normal approximation.

    Returns (U statistic of ``a``, two-sided p-value). Requires at least 8
    observations per side, the regime where the normal approximation is
    dependable.
    """
    na, nb = len(a), len(b)
    if na < 8 or nb < 8:
        raise ValueError(f"need at least 8 observations per sample, got {na} and {nb}")
    combined = sorted([(v, 0) for v in a] + [(v, 1) for v in b])
    total = na + nb
    rank_sum_a = 0.0
    tie_term = 0.0
    i = 0
    while i < total:
        j = i
        while j < total and combined[j][0] == combined[i][0]:
            j += 1
        mid_rank = (i + j + 1) / 2.0  # average of 1-based ranks i+1 .. j
        count = j - i
        if count > 1:
            tie_term += count**3 - count
        for t in range(i, j):
            if combined[t][1] == 0:
                rank_sum_a += mid_rank
        i = j
    u_a = rank_sum_a - na * (na + 1) / 2.0
    mean_u = na * nb / 2.0
    variance = na * nb / 12.0 * ((total + 1) - tie_term / (total * (total - 1)))
    if variance <= 0:
        return u_a, 1.0  # every observation tied with every other
    z = (u_a - mean_u) / math.sqrt(variance)
    p = math.erfc(abs(z) / math.sqrt(2.0))
    return u_a, p


def std_mean_report(
    summaries: Sequence[SummaryRow], lo: float = 0.5, hi: float = 2.0
) -> list[dict]:
    """Per-cell std/mean ratios, flagging cells outside [lo, hi].

    Informational only: the flag marks cells whose spread is not on the
    order of the mean, it never fails a run.
    """
    report = []
    for row in summaries:
        ratio = row.std_gens / row.mean_gens if row.mean_gens else float("nan")
        report.append(
            {
                "n": row.n,
                "k": row.k,
                "strategy": row.strategy,
                "std_over_mean": ratio,
                "flagged": not (lo <= ratio <= hi) if math.isfinite(ratio) else True,
            }
        )
    return report


def _format_float(x: float) -> str:
    return repr(float(x))


def write_trials_csv(path: str | Path, trials: Sequence[TrialResult]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRIAL_FIELDS.split(","))
        for t in trials:
            writer.writerow(
                [
                    t.problem,
                    t.n,
                    t.k,
                    t.mu,
                    t.strategy,
                    t.seed,
                    t.run_index,
                    t.generations,
                    "true" if t.front_found else "false",
                    f"{t.wall_ms:.3f}",
                ]
            )


def read_trials_csv(path: str | Path) -> list[TrialResult]:
    trials = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            trials.append(
                TrialResult(
                    problem=row["problem"],
                    n=int(row["n"]),
                    k=int(row["k"]),
                    mu=int(row["mu"]),
                    strategy=row["strategy"],
                    seed=int(row["seed"]),
                    run_index=int(row["run_index"]),
                    generations=int(row["generations"]),
                    front_found=row["front_found"] == "true",
                    wall_ms=float(row["wall_ms"]),
                )
            )
    return trials


def write_summary_csv(path: str | Path, summaries: Sequence[SummaryRow]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SUMMARY_FIELDS.split(","))
        for s in summaries:
            writer.writerow(
                [
                    s.problem,
                    s.n,
                    s.k,
                    s.mu,
                    s.strategy,
                    s.runs,
                    _format_float(s.mean_gens),
                    _format_float(s.std_gens),
                    _format_float(s.median_gens),
                    s.min_gens,
                    s.max_gens,
                    s.successes,
                ]
            )


def plot_data(summaries: Sequence[SummaryRow]) -> dict:
    """Mean generations per strategy over n, shaped for plotting."""
    xs = sorted({s.n for s in summaries})
    series: dict[str, list[float]] = {}
    for s in sorted(summaries, key=lambda r: (r.strategy, r.n)):
        series.setdefault(s.strategy, [None] * len(xs))
        series[s.strategy][xs.index(s.n)] = s.mean_gens
    return {
        "x_label": "n",
        "y_label": "mean generations",
        "y_scale": "log",
        "x": xs,
        "series": series,
    }


def write_plot_data(path: str | Path, summaries: Sequence[SummaryRow]) -> None:
    with open(path, "w") as fh:
        json.dump(plot_data(summaries), fh, indent=2)
        fh.write("\n")


_SVG_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")


def write_svg_chart(path: str | Path, summaries: Sequence[SummaryRow]) -> None:
    """Self-contained SVG line chart of mean generations vs n (log y)."""
    data = plot_data(summaries)
    xs = data["x"]
    series = data["series"]
    values = [v for ys in series.values() for v in ys if v is not None and v > 0]
    if not xs or not values:
        raise ValueError("no plottable summary data")
    width, height = 640, 440
    ml, mr, mt, mb = 70, 20, 30, 50
    pw, ph = width - ml - mr, height - mt - mb
    lo = math.floor(math.log10(min(values)))
    hi = math.ceil(math.log10(max(values)))
    if hi == lo:
        hi += 1

    def px(n):
        if len(xs) == 1:
            return ml + pw / 2
        return ml + pw * (n - xs[0]) / (xs[-1] - xs[0])

    def py(v):
        return mt + ph * (1 - (math.log10(v) - lo) / (hi - lo))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
    ]
    for d in range(lo, hi + 1):
        y = py(10**d)
        parts.append(
            f'<line x1="{ml - 4}" y1="{y:.1f}" x2="{ml + pw}" y2="{y:.1f}" '
            f'stroke="#dddddd"/>'
        )
        parts.append(
            f'<text x="{ml - 8}" y="{y + 4:.1f}" text-anchor="end">1e{d}</text>'
        )
    for n in xs:
        x = px(n)
        parts.append(
            f'<text x="{x:.1f}" y="{mt + ph + 18}" text-anchor="middle">{n}</text>'
        )
    parts.append(
        f'<text x="{ml + pw / 2:.1f}" y="{height - 12}" text-anchor="middle">'
        f'{data["x_label"]}</text>'
    )
    parts.append(
        f'<text x="16" y="{mt + ph / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 16 {mt + ph / 2:.1f})">{data["y_label"]} (log)</text>'
    )
    for si, (name, ys) in enumerate(sorted(series.items())):
        color = _SVG_COLORS[si % len(_SVG_COLORS)]
        points = [
            (px(n), py(v)) for n, v in zip(xs, ys) if v is not None and v > 0
        ]
        poly = " ".join(f"{x:.1f},{y:.1f}" for x, y in points)
        parts.append(
            f'<polyline points="{poly}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        for x, y in points:
            parts.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="3" fill="{color}"/>')
        ly = mt + 16 + 18 * si
        parts.append(
            f'<line x1="{ml + 12}" y1="{ly - 4}" x2="{ml + 36}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        parts.append(f'<text x="{ml + 42}" y="{ly}">{name}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n")


def paper_grid_plan(
    out_dir: str | Path | None,
    runs: int = PAPER_RUNS,
    base_seed: int = DEFAULT_BASE_SEED,
    ns: Sequence[int] = PAPER_NS,
) -> ExperimentPlan:
    """The published runtime-comparison grid: k=2, n in 10..30 step 5."""
    return ExperimentPlan(
        cells=tuple((n, PAPER_K) for n in ns),
        strategies=(strategy_from_name("deterministic"), strategy_from_name("stochastic")),
        runs_per_cell=runs,
        base_seed=base_seed,
        out_dir=out_dir,
    )


def run_figure3(
    out_dir: str | Path,
    runs: int = PAPER_RUNS,
    jobs: int | None = None,
    base_seed: int = DEFAULT_BASE_SEED,
    ns: Sequence[int] = PAPER_NS,
) -> tuple[list[TrialResult], list[SummaryRow]]:
    """Run the full comparison grid and emit CSVs, plot data, and the chart."""
    plan = paper_grid_plan(out_dir, runs=runs, base_seed=base_seed, ns=ns)
    trials, summaries = run_experiment(plan, jobs=jobs)
    out = Path(out_dir)
    write_plot_data(out / PLOT_DATA_JSON, summaries)
    write_svg_chart(out / FIGURE_SVG, summaries)
    return trials, summaries
