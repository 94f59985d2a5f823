"""Bi-objective pseudo-Boolean benchmarks and their Pareto oracles.

Ships OneJumpZeroJump: both objectives are Jump functions, the first over
1-bits and the second over 0-bits, each with a fitness valley of width ``k``
in front of its optimum. The Pareto front is known in closed form, which the
run loop uses for termination detection and the tests use as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, NamedTuple

from .core import Bitstring, ones_count

_BRUTE_FORCE_MAX_N = 20


class ObjectiveVector(NamedTuple):
    f1: int
    f2: int


@dataclass(frozen=True)
class OjzjParams:
    """Problem size ``n`` and jump width ``k``, requiring ``2 <= k < n/2``."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"problem size must be positive, got n={self.n}")
        if not (2 <= self.k and 2 * self.k < self.n):
            raise ValueError(
                f"jump parameter must satisfy 2 <= k < n/2, got n={self.n}, k={self.k}"
            )


def _jump_value(count: int, n: int, k: int) -> int:
    # count is the number of bits the objective rewards (1-bits or 0-bits)
    if count <= n - k or count == n:
        return k + count
    return n - count


def jump_evaluate(x: Bitstring, k: int) -> int:
    """Single-objective Jump value of ``x`` for valley width ``k``.

    ``k`` may range over ``[2, n-1]`` here, wider than the bi-objective
    parameter space.
    """
    n = x.n
    if not 2 <= k <= n - 1:
        raise ValueError(f"jump width must be in [2, n-1], got k={k} for n={n}")
    return _jump_value(ones_count(x), n, k)


def ojzj_evaluate(x: Bitstring, p: OjzjParams) -> ObjectiveVector:
    """OneJumpZeroJump objective vector of ``x``."""
    if x.n != p.n:
        raise ValueError(f"bitstring length {x.n} does not match problem size {p.n}")
    ones = ones_count(x)
    return ObjectiveVector(
        _jump_value(ones, p.n, p.k),
        _jump_value(p.n - ones, p.n, p.k),
    )


@dataclass(frozen=True)
class ParetoOracle:
    """Closed-form Pareto front and inner front, plus a Pareto-set test.

    ``front`` holds all optimal objective vectors; ``inner_front`` drops the
    two extreme vectors reached only by the all-ones and all-zeros strings.
    """

    params: OjzjParams
    front: frozenset[ObjectiveVector]
    inner_front: frozenset[ObjectiveVector]
    is_pareto_optimal: Callable[[Bitstring], bool] = field(compare=False)

    @property
    def size(self) -> int:
        return len(self.front)

    def sorted_front(self) -> list[ObjectiveVector]:
        """Front vectors in ascending f1 order (canonical enumeration)."""
        return sorted(self.front)


def pareto_front(p: OjzjParams) -> ParetoOracle:
    """Exact Pareto oracle for OneJumpZeroJump.

    The front is ``{(a, n+2k-a) | a in [2k, n] or a in {k, n+k}}`` and has
    ``n - 2k + 3`` members; a solution is Pareto optimal iff its 1-bit count
    lies in ``[k, n-k]`` or equals 0 or n.
    """
    n, k = p.n, p.k
    inner = frozenset(
        ObjectiveVector(a, n + 2 * k - a) for a in range(2 * k, n + 1)
    )
    front = inner | {ObjectiveVector(k, n + k), ObjectiveVector(n + k, k)}

    def is_pareto_optimal(x: Bitstring) -> bool:
        if x.n != n:
            raise ValueError(f"bitstring length {x.n} does not match problem size {n}")
        ones = ones_count(x)
        return k <= ones <= n - k or ones in (0, n)

    return ParetoOracle(
        params=p,
        front=front,
        inner_front=inner,
        is_pareto_optimal=is_pareto_optimal,
    )


def brute_force_pareto(p: OjzjParams) -> set[ObjectiveVector]:
    """Pareto front by exhaustive enumeration of all ``2**n`` solutions.

    Independent of the closed form: evaluates every bitstring and filters
    non-dominated vectors by pairwise comparison. Limited to ``n <= 20``.
    """
    if p.n > _BRUTE_FORCE_MAX_N:
        raise ValueError(
            f"brute force enumerates 2**n solutions; n={p.n} exceeds the "
            f"limit of {_BRUTE_FORCE_MAX_N}"
        )
    vectors = {ojzj_evaluate(Bitstring(v, p.n), p) for v in range(1 << p.n)}
    return {
        u
        for u in vectors
        if not any(v != u and v.f1 >= u.f1 and v.f2 >= u.f2 for v in vectors)
    }


class OneJumpZeroJump:
    """OneJumpZeroJump behind the uniform bi-objective problem interface."""

    name = "ojzj"

    def __init__(self, n: int, k: int):
        self.params = OjzjParams(n, k)
        self._oracle: ParetoOracle | None = None

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    def evaluate(self, x: Bitstring) -> ObjectiveVector:
        return ojzj_evaluate(x, self.params)

    def pareto_oracle(self) -> ParetoOracle:
        if self._oracle is None:
            self._oracle = pareto_front(self.params)
        return self._oracle

    def in_valley(self, x: Bitstring) -> bool:
        """True iff ``x`` sits in either fitness valley (strictly dominated)."""
        ones = ones_count(x)
        n, k = self.params.n, self.params.k
        return 1 <= ones <= k - 1 or n - k + 1 <= ones <= n - 1

    # Smallest value either objective can take; reference points must not
    # exceed this in any coordinate.
    min_objective_value = 1


_REGISTRY: dict[str, type] = {"ojzj": OneJumpZeroJump}


def available_problems() -> list[str]:
    return sorted(_REGISTRY)


def get_problem(name: str, **params) -> OneJumpZeroJump:
    """Instantiate a registered problem by selector string."""
    try:
        cls = _REGISTRY[name]
    except KeyError:
        raise ValueError(
            f"unknown problem {name!r}; available: {', '.join(available_problems())}"
        ) from None
    return cls(**params)
