"""Survivor selection strategies for the steady-state loop.

Both strategies remove exactly one population member: the deterministic
variant removes the smallest hypervolume contributor of the last front of
the whole multiset, the stochastic variant does the same within a uniformly
sampled subset, so even the globally worst member survives whenever it is
not sampled.

Tie handling is part of the seeded draw protocol: the last front is
enumerated in descending f1 order (stable over input order), minimal
contributors are collected in that order, and a single integer draw picks
uniformly among them only when there is more than one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .core import Bitstring, RandomSource
from .problems import ObjectiveVector
from .ranking import Vector, front_contributions, non_dominated_sort


@dataclass(frozen=True)
class Individual:
    """One evaluated population member."""

    bits: Bitstring
    objectives: ObjectiveVector


@dataclass(frozen=True)
class UpdateStrategy:
    """Survivor-selection policy: which part of the multiset competes.

    For the stochastic kind, the competing subset size is
    ``floor(subset_fraction * |Q|)`` clamped to ``[1, |Q|]``; pass
    ``subset_size_rule`` to override with an arbitrary size function of
    ``|Q|``. The default fraction of one half matches the analyzed setting.
    """

    kind: str
    subset_fraction: float = 0.5
    subset_size_rule: Callable[[int], int] | None = None

    def __post_init__(self):
        if self.kind not in ("deterministic", "stochastic"):
            raise ValueError(f"unknown update strategy kind {self.kind!r}")
        if not 0.0 < self.subset_fraction <= 1.0:
            raise ValueError(
                f"subset fraction must be in (0, 1], got {self.subset_fraction}"
            )

    def subset_size(self, q_size: int) -> int:
        if q_size < 1:
            raise ValueError(f"multiset size must be positive, got {q_size}")
        if self.subset_size_rule is not None:
            size = int(self.subset_size_rule(q_size))
            if not 1 <= size <= q_size:
                raise ValueError(
                    f"subset size rule returned {size}, outside [1, {q_size}]"
                )
            return size
        return min(q_size, max(1, int(q_size * self.subset_fraction)))


DETERMINISTIC = UpdateStrategy(kind="deterministic")
STOCHASTIC = UpdateStrategy(kind="stochastic")


def strategy_from_name(name: str, subset_fraction: float = 0.5) -> UpdateStrategy:
    if name == "deterministic":
        return DETERMINISTIC
    if name == "stochastic":
        return UpdateStrategy(kind="stochastic", subset_fraction=subset_fraction)
    raise ValueError(f"unknown strategy {name!r}; use 'deterministic' or 'stochastic'")


def select_victim(front: Sequence[Vector], reference: Vector, rng: RandomSource) -> int:
    """Index of a minimal-contribution member of a non-dominated front.

    Among tied minimizers the choice is uniform, consuming one integer draw;
    a unique minimizer consumes none.
    """
    if len(front) == 0:
        raise ValueError("cannot select a victim from an empty front")
    order = sorted(range(len(front)), key=lambda i: (-front[i][0], -front[i][1]))
    deltas = front_contributions([front[i] for i in order], reference)
    best = min(deltas)
    ties = [order[i] for i in range(len(order)) if deltas[i] == best]
    if len(ties) == 1:
        return ties[0]
    return ties[rng.integer(len(ties))]


def choose_removal(
    vectors: Sequence[Vector],
    reference: Vector,
    strategy: UpdateStrategy,
    rng: RandomSource,
) -> int:
    """Index of the member the strategy removes from the multiset."""
    s = len(vectors)
    if s < 2:
        raise ValueError(f"population update needs at least 2 members, got {s}")
    if strategy.kind == "stochastic":
        candidates = rng.subset(s, strategy.subset_size(s))
    else:
        candidates = list(range(s))
    sub = [vectors[i] for i in candidates]
    last = sorted(non_dominated_sort(sub).last_front)
    victim = select_victim([sub[i] for i in last], reference, rng)
    return candidates[last[victim]]


def deterministic_update(
    population: Sequence[Individual],
    reference: Vector,
    rng: RandomSource,
) -> list[Individual]:
    """Remove the worst member of the whole multiset (one occurrence)."""
    idx = choose_removal(
        [ind.objectives for ind in population], reference, DETERMINISTIC, rng
    )
    return [ind for i, ind in enumerate(population) if i != idx]


def stochastic_update(
    population: Sequence[Individual],
    reference: Vector,
    strategy: UpdateStrategy,
    rng: RandomSource,
) -> list[Individual]:
    """Remove the worst member of a random subset of the multiset.

    The subset is sampled uniformly without replacement; fronts and
    contributions are computed within the subset only.
    """
    if strategy.kind != "stochastic":
        raise ValueError("stochastic_update requires a stochastic strategy")
    idx = choose_removal(
        [ind.objectives for ind in population], reference, strategy, rng
    )
    return [ind for i, ind in enumerate(population) if i != idx]
