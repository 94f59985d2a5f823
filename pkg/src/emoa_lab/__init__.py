"""SMS-EMOA with interchangeable population-update strategies.

A small multi-objective evolutionary optimization library built around the
steady-state hypervolume-based survivor selection of SMS-EMOA, with both the
classic deterministic population update and a stochastic variant that removes
the worst member of a random subset. Ships the OneJumpZeroJump benchmark with
closed-form Pareto oracles and a seeded experiment harness for runtime
comparisons.
"""

from .core import (
    Bitstring,
    RandomSource,
    bitwise_mutate,
    ones_count,
    random_bitstring,
    zeros_count,
)
from .emoa import (
    EmoaConfig,
    RunRecord,
    RunTrace,
    Termination,
    front_coverage,
    mu_guarantee_threshold,
    run_sms_emoa,
)
from .harness import (
    ExperimentPlan,
    SummaryRow,
    TrialResult,
    rank_sum_compare,
    run_experiment,
    run_figure3,
    summarize,
)
from .problems import (
    ObjectiveVector,
    OjzjParams,
    OneJumpZeroJump,
    ParetoOracle,
    available_problems,
    brute_force_pareto,
    get_problem,
    jump_evaluate,
    ojzj_evaluate,
    pareto_front,
)
from .ranking import (
    DominanceOrdering,
    FrontPartition,
    dominance_compare,
    front_contributions,
    grid_hv_oracle,
    hv_contribution,
    hypervolume_2d,
    non_dominated_sort,
)
from .update import (
    Individual,
    UpdateStrategy,
    choose_removal,
    deterministic_update,
    select_victim,
    stochastic_update,
    strategy_from_name,
)

__version__ = "0.1.0"

__all__ = [
    "Bitstring",
    "DominanceOrdering",
    "EmoaConfig",
    "ExperimentPlan",
    "FrontPartition",
    "Individual",
    "ObjectiveVector",
    "OjzjParams",
    "OneJumpZeroJump",
    "ParetoOracle",
    "RandomSource",
    "RunRecord",
    "RunTrace",
    "SummaryRow",
    "Termination",
    "TrialResult",
    "UpdateStrategy",
    "available_problems",
    "bitwise_mutate",
    "brute_force_pareto",
    "choose_removal",
    "deterministic_update",
    "dominance_compare",
    "front_contributions",
    "front_coverage",
    "get_problem",
    "grid_hv_oracle",
    "hv_contribution",
    "hypervolume_2d",
    "jump_evaluate",
    "mu_guarantee_threshold",
    "non_dominated_sort",
    "ojzj_evaluate",
    "ones_count",
    "pareto_front",
    "random_bitstring",
    "rank_sum_compare",
    "run_experiment",
    "run_figure3",
    "run_sms_emoa",
    "select_victim",
    "stochastic_update",
    "strategy_from_name",
    "summarize",
    "zeros_count",
]
