"""Acceptance suite: one test per release criterion, with a printed verdict.

Each test prints an ``ACCEPTANCE <id> ...: PASS`` line (visible with ``-rA``
or ``-s``) so the whole gate can be audited at a glance.

Two knobs keep the statistical criteria practical:

- ``EMOA_LAB_ACCEPTANCE_SCALE``: ``ci`` (default) runs the sanctioned
  reduced comparison grid (100 runs, n up to 20, alpha 0.05); ``full`` runs
  the complete grid (1000 runs, n up to 30, alpha 0.01, roughly half an hour
  on two cores).
- ``EMOA_LAB_FIGURE3_DIR``: reuse the trials.csv of a prior
  ``emoa-lab figure3`` run (same pinned seeds) instead of recomputing it.
"""

import os
import random
from collections import Counter

import numpy as np
import pytest

from emoa_lab import (
    Bitstring,
    EmoaConfig,
    ExperimentPlan,
    Individual,
    ObjectiveVector,
    OjzjParams,
    RandomSource,
    Termination,
    brute_force_pareto,
    grid_hv_oracle,
    hv_contribution,
    hypervolume_2d,
    pareto_front,
    rank_sum_compare,
    run_experiment,
    run_sms_emoa,
    stochastic_update,
    strategy_from_name,
    summarize,
)
from emoa_lab.harness import TRIALS_CSV, default_mu_rule, read_trials_csv, std_mean_report

DET = strategy_from_name("deterministic")
STO = strategy_from_name("stochastic")

SCALE = os.environ.get("EMOA_LAB_ACCEPTANCE_SCALE", "ci").lower()
FIGURE3_DIR = os.environ.get("EMOA_LAB_FIGURE3_DIR")
JOBS = min(2, os.cpu_count() or 1)

if SCALE == "full":
    GRID_NS = (10, 15, 20, 25, 30)
    GRID_RUNS = 1000
    GRID_ALPHA = 0.01
else:
    GRID_NS = (10, 15, 20)
    GRID_RUNS = 100
    GRID_ALPHA = 0.05


def verdict(cid: str, label: str, ok: bool, detail: str = "") -> None:
    state = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {cid} {label}: {state}{suffix}")


def test_criterion_1_pareto_oracle_exactness():
    mismatches = []
    for n in range(5, 17):
        for k in range(2, (n + 1) // 2):
            if 2 * k >= n:
                continue
            p = OjzjParams(n, k)
            oracle = pareto_front(p)
            brute = brute_force_pareto(p)
            if brute != set(oracle.front) or oracle.size != n - 2 * k + 3:
                mismatches.append((n, k))
    ok = not mismatches
    verdict("C1", "pareto-oracle-exactness (5<=n<=16, all k)", ok, f"mismatches={mismatches}")
    assert ok


def test_criterion_2_hypervolume_oracle_equivalence():
    rng = random.Random(13577)
    hv_mismatches = 0
    dup_nonzero = 0
    for _ in range(1000):
        size = rng.randint(1, 20)
        multiset = [(rng.randint(1, 30), rng.randint(1, 30)) for _ in range(size)]
        if rng.random() < 0.5:
            multiset.append(multiset[rng.randrange(len(multiset))])
        if hypervolume_2d(multiset, (0, 0)) != grid_hv_oracle(multiset, (0, 0)):
            hv_mismatches += 1
        counts = Counter(multiset)
        for vec, cnt in counts.items():
            if cnt > 1 and hv_contribution(vec, multiset, (0, 0)) != 0:
                dup_nonzero += 1
    ok = hv_mismatches == 0 and dup_nonzero == 0
    verdict(
        "C2",
        "hypervolume-oracle-equivalence (1000 multisets)",
        ok,
        f"hv_mismatches={hv_mismatches}, nonzero_duplicate_contributions={dup_nonzero}",
    )
    assert ok


def _coverage_losses(n, k, mu, strategy, seeds, budget):
    losses = 0
    for seed in seeds:
        cfg = EmoaConfig(
            problem="ojzj",
            problem_params={"n": n, "k": k},
            mu=mu,
            strategy=strategy,
            seed=seed,
            budget=budget,
            termination=Termination.BUDGET_ONLY,
        )
        record = run_sms_emoa(cfg, trace=True)
        masks = record.trace.covered_mask
        losses += int(np.count_nonzero(masks[:-1] & ~masks[1:]))
    return losses


def test_criterion_3_deterministic_coverage_never_lost():
    losses = _coverage_losses(
        n=12, k=3, mu=9, strategy=DET, seeds=range(50), budget=100_000
    )
    ok = losses == 0
    verdict(
        "C3",
        "deterministic coverage monotone (50 traces x 1e5 generations)",
        ok,
        f"violations={losses}",
    )
    assert ok


def test_criterion_4a_stochastic_coverage_never_lost():
    losses = _coverage_losses(
        n=12, k=3, mu=20, strategy=STO, seeds=range(50), budget=100_000
    )
    ok = losses == 0
    verdict(
        "C4a",
        "stochastic coverage monotone at mu=2(n-2k+4)",
        ok,
        f"violations={losses}",
    )
    assert ok


def test_criterion_4b_worst_member_survival_bound():
    mu = 20
    marker_bits = Bitstring.zeros(8)
    marker = Individual(marker_bits, ObjectiveVector(1, 1))
    crowd = [
        Individual(Bitstring.ones(8), ObjectiveVector(10, 10)) for _ in range(mu)
    ]
    population = [marker] + crowd
    survived = 0
    calls = 10_000
    for seed in range(calls):
        out = stochastic_update(population, (0, 0), STO, RandomSource(seed))
        survived += any(ind.objectives == (1, 1) for ind in out)
    rate = survived / calls
    ok = rate >= 0.48
    verdict(
        "C4b",
        "dominated marker survives stochastic update at rate >= 0.48",
        ok,
        f"rate={rate:.4f} over {calls} calls",
    )
    assert ok


def _comparison_rows():
    """Trial rows for the runtime-comparison grid at the active scale."""
    if FIGURE3_DIR:
        path = os.path.join(FIGURE3_DIR, TRIALS_CSV)
        if os.path.exists(path):
            rows = [
                t
                for t in read_trials_csv(path)
                if t.n in GRID_NS and t.run_index < GRID_RUNS
            ]
            complete = all(
                sum(1 for t in rows if t.n == n and t.strategy == s) == GRID_RUNS
                for n in GRID_NS
                for s in ("deterministic", "stochastic")
            )
            if complete:
                return rows
    plan = ExperimentPlan(
        cells=tuple((n, 2) for n in GRID_NS),
        strategies=(DET, STO),
        runs_per_cell=GRID_RUNS,
    )
    trials, _ = run_experiment(plan, jobs=JOBS)
    return trials


@pytest.fixture(scope="module")
def comparison_rows():
    return _comparison_rows()


def test_criterion_5_runtime_comparison_ordering(comparison_rows):
    all_ok = True
    details = []
    for n in GRID_NS:
        det = [
            t.generations
            for t in comparison_rows
            if t.n == n and t.strategy == "deterministic" and t.front_found
        ]
        sto = [
            t.generations
            for t in comparison_rows
            if t.n == n and t.strategy == "stochastic" and t.front_found
        ]
        mean_det, mean_sto = float(np.mean(det)), float(np.mean(sto))
        _, p = rank_sum_compare(det, sto)
        ordered = mean_sto < mean_det
        significant = p < GRID_ALPHA
        all_ok &= ordered and significant
        details.append(
            f"n={n}: det={mean_det:.0f} sto={mean_sto:.0f} "
            f"ordered={ordered} p={p:.3g} (<{GRID_ALPHA}: {significant})"
        )
    verdict(
        "C5",
        f"stochastic update is faster ({GRID_RUNS} runs, alpha={GRID_ALPHA})",
        all_ok,
        "; ".join(details),
    )
    assert all_ok


def test_criterion_6_superlinear_growth_of_deterministic_means():
    if FIGURE3_DIR or SCALE == "full":
        rows = _comparison_rows() if SCALE == "full" else None
        if rows is None or 30 not in {t.n for t in rows}:
            rows = None
        if rows is None and FIGURE3_DIR:
            path = os.path.join(FIGURE3_DIR, TRIALS_CSV)
            if os.path.exists(path):
                rows = [t for t in read_trials_csv(path) if t.n in (10, 30)]
    else:
        rows = None
    if rows is None:
        plan = ExperimentPlan(
            cells=((10, 2), (30, 2)),
            strategies=(DET,),
            runs_per_cell=150,
            base_seed=4242000,
        )
        rows, _ = run_experiment(plan, jobs=JOBS)
    per_mu = {}
    for n in (10, 30):
        gens = [
            t.generations
            for t in rows
            if t.n == n and t.strategy == "deterministic" and t.front_found
        ]
        per_mu[n] = float(np.mean(gens)) / default_mu_rule(n, 2)
    ratio = per_mu[30] / per_mu[10]
    threshold = (30 / 10) ** 2 * 0.7
    ok = ratio >= threshold
    verdict(
        "C6",
        "deterministic per-mu means grow superlinearly",
        ok,
        f"per-mu ratio={ratio:.2f}, required >= {threshold:.2f}",
    )
    assert ok


def test_criterion_7_spread_ratio_is_reported(comparison_rows):
    cells = sorted({(t.n, t.k, t.strategy) for t in comparison_rows})
    summaries = [
        summarize(
            [t for t in comparison_rows if (t.n, t.k, t.strategy) == cell]
        )
        for cell in cells
    ]
    report = std_mean_report(summaries)
    ok = len(report) == len(cells) and all(
        np.isfinite(entry["std_over_mean"]) for entry in report
    )
    lines = [
        f"n={e['n']} {e['strategy']}: std/mean={e['std_over_mean']:.3f}"
        + (" FLAGGED" if e["flagged"] else "")
        for e in report
    ]
    verdict("C7", "std/mean recorded per cell (flags informational)", ok, "; ".join(lines))
    assert ok


def test_criterion_8_identity_subset_reduces_to_deterministic():
    from emoa_lab import choose_removal, front_contributions, non_dominated_sort

    identity = strategy_from_name("stochastic", 1.0)
    rng = random.Random(808)
    table = {("det", i): 0 for i in range(8)} | {("sto", i): 0 for i in range(8)}
    exact_checked = 0
    exact_matches = 0
    calls = 10_000
    for call in range(calls):
        vectors = [(rng.randint(1, 4), rng.randint(1, 4)) for _ in range(8)]
        det_idx = choose_removal(vectors, (0, 0), DET, RandomSource(2 * call))
        sto_idx = choose_removal(vectors, (0, 0), identity, RandomSource(2 * call + 1))
        table[("det", det_idx)] += 1
        table[("sto", sto_idx)] += 1
        # populations whose minimum contribution is unique must agree exactly
        last = sorted(non_dominated_sort(vectors).last_front)
        deltas = front_contributions([vectors[i] for i in last], (0, 0))
        if deltas.count(min(deltas)) == 1:
            exact_checked += 1
            exact_matches += det_idx == sto_idx
    from scipy.stats import chi2_contingency

    obs = [[table[(row, i)] for i in range(8)] for row in ("det", "sto")]
    _, p, _, _ = chi2_contingency(obs)
    ok = p > 0.01 and exact_matches == exact_checked
    verdict(
        "C8",
        "identity-subset stochastic update matches deterministic",
        ok,
        f"chi2 p={p:.3f}, exact agreement {exact_matches}/{exact_checked}",
    )
    assert ok
