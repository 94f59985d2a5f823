"""The steady-state SMS-EMOA loop: initialize, mutate, update, terminate.

Each generation produces exactly one offspring by uniform parent selection
and bit-wise mutation, then hands the enlarged multiset to the configured
survivor-selection strategy. Termination is coverage-based by default: the
run stops once every Pareto-front objective vector is present in the
population, as counted against the closed-form oracle.

Two engines produce bit-identical results for the same seed: a pure-Python
reference loop (any problem, any strategy rule) and a compiled kernel
(OneJumpZeroJump with fraction-based subset rules, n <= 63).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .core import Bitstring, RandomSource, bitwise_mutate, random_bitstring
from .problems import ObjectiveVector, ParetoOracle, get_problem
from .update import Individual, UpdateStrategy, choose_removal

DEFAULT_BUDGET = 1_000_000_000


class Termination(Enum):
    FULL_FRONT_COVERAGE = "full_front_coverage"
    BUDGET_ONLY = "budget_only"


@dataclass(frozen=True)
class EmoaConfig:
    """Everything one seeded run depends on.

    ``budget`` is the maximum number of generations; 0 means run none, None
    means unlimited (only sensible with coverage-based termination). The
    population-size guarantees behind the convergence results (mu at least
    n-2k+3 deterministic, 2(n-2k+4) stochastic) are recorded but not
    enforced; a warning is emitted when a run starts below them.
    """

    problem: str
    problem_params: Mapping[str, int]
    mu: int
    strategy: UpdateStrategy
    reference: tuple[int, int] = (0, 0)
    seed: int = 0
    budget: int | None = DEFAULT_BUDGET
    termination: Termination = Termination.FULL_FRONT_COVERAGE


@dataclass(frozen=True)
class RunTrace:
    """Per-generation observations, index 0 being the initial population.

    ``covered_mask`` bit j set means front vector j (ascending f1 order) is
    present; ``valley_present`` flags populations holding at least one
    solution inside a fitness valley (1-bit count in [1, k-1] or
    [n-k+1, n-1]).
    """

    covered_mask: np.ndarray
    valley_present: np.ndarray


@dataclass(frozen=True)
class RunRecord:
    generations: int
    front_found: bool
    covered_vectors: int
    final_population: list[Individual] = field(repr=False)
    config: EmoaConfig
    trace: RunTrace | None = field(default=None, repr=False)


def front_coverage(
    population: Sequence[Individual], oracle: ParetoOracle
) -> tuple[int, bool]:
    """Count distinct Pareto-front vectors present in the population."""
    present = {ind.objectives for ind in population} & oracle.front
    return len(present), len(present) == oracle.size


def mu_guarantee_threshold(n: int, k: int, strategy: UpdateStrategy) -> int:
    """Smallest population size with a proven full-coverage guarantee."""
    if strategy.kind == "stochastic":
        return 2 * (n - 2 * k + 4)
    return n - 2 * k + 3


def _validate(config: EmoaConfig) -> None:
    if config.mu < 1:
        raise ValueError(f"population size must be at least 1, got {config.mu}")
    if config.budget is not None and config.budget < 0:
        raise ValueError(f"budget must be non-negative or None, got {config.budget}")
    if config.budget is None and config.termination is Termination.BUDGET_ONLY:
        raise ValueError("budget-only termination requires a finite budget")
    if not isinstance(config.strategy, UpdateStrategy):
        raise ValueError("config.strategy must be an UpdateStrategy")


def run_sms_emoa(
    config: EmoaConfig, trace: bool = False, engine: str = "auto"
) -> RunRecord:
    """Execute one seeded run and return its outcome.

    Identical configs (seed included) produce identical records. With
    ``trace=True`` the record carries per-generation coverage and valley
    flags, which requires a finite budget and a front of at most 64 vectors.
    Engines: "reference" (pure Python), "fast" (compiled), or "auto".
    """
    _validate(config)
    problem = get_problem(config.problem, **config.problem_params)
    oracle = problem.pareto_oracle()
    min_value = getattr(problem, "min_objective_value", None)
    if min_value is not None and max(config.reference) > min_value:
        raise ValueError(
            f"reference point {config.reference} exceeds the minimal objective "
            f"value {min_value}"
        )
    threshold = mu_guarantee_threshold(problem.n, problem.k, config.strategy)
    if config.mu < threshold:
        warnings.warn(
            f"mu={config.mu} is below the guarantee threshold {threshold} for "
            f"the {config.strategy.kind} strategy at n={problem.n}, k={problem.k}; "
            f"front coverage may be lost again after being reached",
            stacklevel=2,
        )
    if trace:
        if config.budget is None:
            raise ValueError("tracing requires a finite budget")
        if config.budget > 50_000_000:
            raise ValueError("tracing supports budgets up to 5e7 generations")
        if oracle.size > 64:
            raise ValueError("tracing supports fronts of at most 64 vectors")

    if engine == "auto":
        engine = "fast" if _fast_eligible(config, problem.n) else "reference"
    if engine == "fast":
        return _run_fast(config, problem, oracle, trace)
    if engine == "reference":
        return _run_reference(config, problem, oracle, trace)
    raise ValueError(f"unknown engine {engine!r}")


def _integer_reference(reference) -> bool:
    return all(float(r).is_integer() for r in reference)


def _fast_eligible(config: EmoaConfig, n: int) -> bool:
    from ._fast import MAX_FAST_N

    return (
        config.problem == "ojzj"
        and n <= MAX_FAST_N
        and config.strategy.subset_size_rule is None
        and _integer_reference(config.reference)
    )


def _run_reference(config, problem, oracle, trace) -> RunRecord:
    rng = RandomSource(config.seed)
    n = problem.n
    mu = config.mu
    front_slot = {v: i for i, v in enumerate(oracle.sorted_front())}
    in_valley = getattr(problem, "in_valley", lambda x: False)

    counts = [0] * oracle.size
    covered = 0
    covered_mask = 0
    valley_count = 0

    def admit(ind: Individual) -> None:
        nonlocal covered, covered_mask, valley_count
        slot = front_slot.get(ind.objectives)
        if slot is not None:
            if counts[slot] == 0:
                covered += 1
                covered_mask |= 1 << slot
            counts[slot] += 1
        if in_valley(ind.bits):
            valley_count += 1

    def evict(ind: Individual) -> None:
        nonlocal covered, covered_mask, valley_count
        slot = front_slot.get(ind.objectives)
        if slot is not None:
            counts[slot] -= 1
            if counts[slot] == 0:
                covered -= 1
                covered_mask &= ~(1 << slot)
        if in_valley(ind.bits):
            valley_count -= 1

    population: list[Individual] = []
    for _ in range(mu):
        bits = random_bitstring(n, rng)
        ind = Individual(bits, problem.evaluate(bits))
        population.append(ind)
        admit(ind)

    budget = config.budget
    stop_on_coverage = config.termination is Termination.FULL_FRONT_COVERAGE
    trace_mask = trace_valley = None
    if trace:
        trace_mask = np.zeros(budget + 1, dtype=np.uint64)
        trace_valley = np.zeros(budget + 1, dtype=np.uint8)
        trace_mask[0] = covered_mask
        trace_valley[0] = 1 if valley_count > 0 else 0

    gen = 0
    while (budget is None or gen < budget) and not (
        stop_on_coverage and covered == oracle.size
    ):
        gen += 1
        parent = population[rng.integer(mu)]
        child_bits = bitwise_mutate(parent.bits, rng)
        child = Individual(child_bits, problem.evaluate(child_bits))

        vectors = [ind.objectives for ind in population]
        vectors.append(child.objectives)
        victim = choose_removal(vectors, config.reference, config.strategy, rng)

        admit(child)
        evict(population[victim] if victim < mu else child)
        if victim < mu:
            population[victim] = child  # offspring takes the vacated slot

        if trace:
            trace_mask[gen] = covered_mask
            trace_valley[gen] = 1 if valley_count > 0 else 0

    run_trace = None
    if trace:
        run_trace = RunTrace(trace_mask[: gen + 1], trace_valley[: gen + 1])
    return RunRecord(
        generations=gen,
        front_found=covered == oracle.size,
        covered_vectors=covered,
        final_population=population,
        config=config,
        trace=run_trace,
    )


def _run_fast(config, problem, oracle, trace) -> RunRecord:
    from . import _fast

    n, k = problem.n, problem.k
    if n > _fast.MAX_FAST_N:
        raise ValueError(f"fast engine supports n <= {_fast.MAX_FAST_N}, got {n}")
    if config.strategy.subset_size_rule is not None:
        raise ValueError("fast engine supports fraction-based subset rules only")
    if not _integer_reference(config.reference):
        raise ValueError("fast engine requires an integer reference point")

    mu = config.mu
    rng = RandomSource(config.seed)
    bits = np.zeros(mu, dtype=np.uint64)
    f1 = np.zeros(mu + 1, dtype=np.int64)
    f2 = np.zeros(mu + 1, dtype=np.int64)
    cov_counts = np.zeros(oracle.size, dtype=np.int64)
    budget = config.budget if config.budget is not None else 2**62
    if trace:
        trace_mask = np.zeros(config.budget + 1, dtype=np.uint64)
        trace_valley = np.zeros(config.budget + 1, dtype=np.uint8)
    else:
        trace_mask = np.zeros(1, dtype=np.uint64)
        trace_valley = np.zeros(1, dtype=np.uint8)

    gen, covered = _fast.run_ojzj(
        rng.generator,
        n,
        k,
        mu,
        budget,
        config.termination is Termination.FULL_FRONT_COVERAGE,
        config.strategy.kind == "stochastic",
        config.strategy.subset_fraction,
        int(config.reference[0]),
        int(config.reference[1]),
        bits,
        f1,
        f2,
        cov_counts,
        trace_mask,
        trace_valley,
        trace,
    )

    population = [
        Individual(Bitstring(int(bits[i]), n), ObjectiveVector(int(f1[i]), int(f2[i])))
        for i in range(mu)
    ]
    run_trace = None
    if trace:
        run_trace = RunTrace(trace_mask[: gen + 1], trace_valley[: gen + 1])
    return RunRecord(
        generations=int(gen),
        front_found=int(covered) == oracle.size,
        covered_vectors=int(covered),
        final_population=population,
        config=config,
        trace=run_trace,
    )
