"""The induced transferable-utility game over worker coalitions.

Each coalition's worth is the maximum output it could produce on its own
with the full task set.  The full table over all 2^n coalitions is built
once and reused by the Shapley computation, marginal contributions and
the hiring-related axiom checks, since the assignment solves dominate
runtime.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable

from .core import Problem, require_valid, restrict
from .assignment import optimal_value

__all__ = [
    "CoalitionTable",
    "COALITION_BOUND",
    "char_value",
    "all_coalitions",
    "marginal_contribution",
]

# Full tables need 2^n assignment solves; beyond this the Shapley rule is
# refused rather than approximated.
COALITION_BOUND = 16


@dataclass(frozen=True)
class CoalitionTable:
    """Worth of every coalition, keyed by bitmask over the sorted worker list."""

    workers: tuple[int, ...]
    values: tuple[Fraction, ...]  # index = bitmask over workers

    def mask(self, coalition: Iterable[int]) -> int:
        m = 0
        for w in coalition:
            m |= 1 << self.workers.index(w)
        return m

    def of(self, coalition: Iterable[int]) -> Fraction:
        return self.values[self.mask(coalition)]

    @property
    def grand(self) -> Fraction:
        return self.values[-1]


def char_value(prob: Problem, coalition: Iterable[int]) -> Fraction:
    """Worth of a worker subset: zero for the empty set, else the sub-problem's y."""
    members = tuple(sorted(set(coalition)))
    if not set(members) <= set(prob.workers):
        raise KeyError(f"coalition {members} is not contained in the worker set")
    if not members:
        return Fraction(0)
    return optimal_value(restrict(prob, members, prob.tasks))


def all_coalitions(prob: Problem) -> CoalitionTable:
    """Worth of all 2^n coalitions of the problem's workers."""
    cached = getattr(prob, "_coalitions", None)
    if cached is not None:
        return cached
    require_valid(prob)
    workers = prob.workers
    n = len(workers)
    if n > COALITION_BOUND:
        raise ValueError(
            f"refusing coalition table for {n} workers (bound {COALITION_BOUND})"
        )
    values = [Fraction(0)] * (1 << n)
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            mask = 0
            for r in combo:
                mask |= 1 << r
            values[mask] = char_value(prob, tuple(workers[r] for r in combo))
    table = CoalitionTable(workers=workers, values=tuple(values))
    object.__setattr__(prob, "_coalitions", table)
    return table


def marginal_contribution(prob: Problem, worker: int) -> Fraction:
    """Output lost if the worker is removed: y(I) - y(I minus the worker)."""
    require_valid(prob)
    prob.worker_index(worker)  # raises KeyError for unknown workers
    total = optimal_value(prob)
    rest = tuple(w for w in prob.workers if w != worker)
    if not rest:
        return total
    return total - optimal_value(restrict(prob, rest, prob.tasks))
