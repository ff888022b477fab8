"""Exact rectangular assignment: maximum output and every optimal assignment.

The solver is a branch-and-bound over partial assignments in canonical
worker order.  The admissible bound for a partial assignment adds, for
each still-unassigned worker, that worker's maximum productivity over the
still-free tasks; a branch is pruned when the bound cannot reach the
incumbent.  It runs twice: once to establish the maximum output, once to
collect every assignment that attains it exactly.

Arithmetic happens on integers after clearing the matrix's common
denominator, so ties are decided exactly.  Complete tie enumeration is
required by the averaging and consistency-style rules, which rules out
value-only assignment algorithms.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    Fraction as Rational,
    InvalidProblem,
    Problem,
    lcm_denominator,
    require_valid,
    restrict,
)

__all__ = [
    "Assignment",
    "OptimalSet",
    "EnumerationCapExceeded",
    "optimal_value",
    "enumerate_optimal",
    "assigned_task_set",
    "reduced_problem",
    "perturb_to_unique",
    "enumeration_cap",
    "DEFAULT_ENUMERATION_CAP",
]

DEFAULT_ENUMERATION_CAP = 10_000
_CAP_ENV_VAR = "FAIRCOMP_ENUM_CAP"


class EnumerationCapExceeded(RuntimeError):
    """Raised when a problem has more optimal assignments than the cap allows."""


def enumeration_cap() -> int:
    """Active cap on |A*|; overridable through FAIRCOMP_ENUM_CAP."""
    raw = os.environ.get(_CAP_ENV_VAR)
    if raw is None:
        return DEFAULT_ENUMERATION_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{_CAP_ENV_VAR} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{_CAP_ENV_VAR} must be positive, got {cap}")
    return cap


@dataclass(frozen=True, order=True)
class Assignment:
    """Injective worker-to-task map, stored as (worker, task) pairs sorted by worker."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        workers = [w for w, _ in self.pairs]
        tasks = [t for _, t in self.pairs]
        if workers != sorted(set(workers)):
            raise ValueError("assignment workers must be unique and sorted")
        if len(set(tasks)) != len(tasks):
            raise ValueError("assignment must be injective")

    def __call__(self, worker: int) -> int:
        for w, t in self.pairs:
            if w == worker:
                return t
        raise KeyError(f"worker {worker} is not assigned")

    @property
    def workers(self) -> tuple[int, ...]:
        return tuple(w for w, _ in self.pairs)

    def image(self, workers: Iterable[int] | None = None) -> tuple[int, ...]:
        """Tasks assigned to the given workers (all workers by default), sorted."""
        subset = set(workers) if workers is not None else set(self.workers)
        return tuple(sorted(t for w, t in self.pairs if w in subset))

    def restricted(self, workers: Iterable[int]) -> "Assignment":
        subset = set(workers)
        return Assignment(tuple((w, t) for w, t in self.pairs if w in subset))

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    @staticmethod
    def from_dict(mapping) -> "Assignment":
        return Assignment(tuple(sorted(mapping.items())))


@dataclass(frozen=True)
class OptimalSet:
    """Maximum output together with the complete list of optimal assignments.

    Assignments are sorted lexicographically by task label in worker order,
    so enumeration output is deterministic.
    """

    value: Rational
    assignments: tuple[Assignment, ...]

    def __len__(self) -> int:
        return len(self.assignments)


def _int_matrix(prob: Problem) -> tuple[tuple[tuple[int, ...], ...], int]:
    cached = getattr(prob, "_ints", None)
    if cached is None:
        den = lcm_denominator(prob)
        rows = tuple(
            tuple(v.numerator * (den // v.denominator) for v in row)
            for row in prob.matrix
        )
        cached = (rows, den)
        object.__setattr__(prob, "_ints", cached)
    return cached


def _bound(rows, order, free_mask, start, m) -> int:
    total = 0
    for r in order[start:]:
        row = rows[r]
        best = 0
        for c in range(m):
            if free_mask & (1 << c) and row[c] > best:
                best = row[c]
        total += best
    return total


def _best_value(rows: Sequence[Sequence[int]], m: int) -> int:
    n = len(rows)
    order = tuple(range(n))
    best = -1

    def walk(idx: int, free_mask: int, partial: int):
        nonlocal best
        if idx == n:
            if partial > best:
                best = partial
            return
        if best >= 0 and partial + _bound(rows, order, free_mask, idx, m) <= best:
            return
        row = rows[order[idx]]
        for c in range(m):
            bit = 1 << c
            if free_mask & bit:
                walk(idx + 1, free_mask & ~bit, partial + row[c])

    walk(0, (1 << m) - 1, 0)
    return best


def _collect_optima(rows, m: int, target: int, cap: int) -> list[tuple[int, ...]]:
    n = len(rows)
    order = tuple(range(n))
    found: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def walk(idx: int, free_mask: int, partial: int):
        if partial + _bound(rows, order, free_mask, idx, m) < target:
            return
        if idx == n:
            if partial == target:
                if len(found) >= cap:
                    raise EnumerationCapExceeded(
                        f"more than {cap} optimal assignments"
                    )
                found.append(tuple(chosen))
            return
        row = rows[order[idx]]
        for c in range(m):
            bit = 1 << c
            if free_mask & bit:
                chosen.append(c)
                walk(idx + 1, free_mask & ~bit, partial + row[c])
                chosen.pop()

    walk(0, (1 << m) - 1, 0)
    return found


def optimal_value(prob: Problem) -> Rational:
    """Exact maximum total output over all injective worker-to-task assignments."""
    value = getattr(prob, "_y", None)
    if value is None:
        require_valid(prob)
        rows, den = _int_matrix(prob)
        value = Fraction(_best_value(rows, len(prob.tasks)), den)
        object.__setattr__(prob, "_y", value)
    return value


def enumerate_optimal(prob: Problem, cap: int | None = None) -> OptimalSet:
    """All output-maximizing assignments, duplicate-free, in canonical order."""
    effective_cap = cap if cap is not None else enumeration_cap()
    memo = getattr(prob, "_enum", None)
    if memo is None:
        memo = {}
        object.__setattr__(prob, "_enum", memo)
    found = memo.get(effective_cap)
    if found is None:
        require_valid(prob)
        rows, den = _int_matrix(prob)
        m = len(prob.tasks)
        target = _best_value(rows, m)
        assignments = tuple(
            Assignment(tuple(zip(prob.workers, (prob.tasks[c] for c in combo))))
            for combo in sorted(_collect_optima(rows, m, target, effective_cap))
        )
        found = OptimalSet(value=Fraction(target, den), assignments=assignments)
        memo[effective_cap] = found
    return found


def assigned_task_set(prob: Problem) -> tuple[int, ...]:
    """Tasks performed under at least one optimal assignment, sorted."""
    opt = enumerate_optimal(prob)
    used: set[int] = set()
    for a in opt.assignments:
        used.update(t for _, t in a.pairs)
    return tuple(sorted(used))


def reduced_problem(prob: Problem, subgroup: Iterable[int], a: Assignment) -> Problem:
    """The square sub-problem on a subgroup and the tasks an optimum gives it."""
    members = tuple(sorted(set(subgroup)))
    if not set(members) <= set(prob.workers):
        raise KeyError(f"subgroup {members} is not contained in the worker set")
    opt = enumerate_optimal(prob)
    if a not in opt.assignments:
        raise ValueError("assignment is not optimal for this problem")
    return restrict(prob, members, a.image(members))


def perturb_to_unique(prob: Problem, a: Assignment, epsilon) -> Problem:
    """Raise the matrix by epsilon along one optimal assignment.

    Every rival assignment overlaps the chosen one in fewer than |I| cells,
    so it gains strictly less; the result has exactly one optimal
    assignment, namely ``a``.
    """
    eps = epsilon if isinstance(epsilon, Fraction) else Fraction(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    opt = enumerate_optimal(prob)
    if a not in opt.assignments:
        raise ValueError("assignment is not optimal for this problem")
    bumped = a.as_dict()
    rows = tuple(
        tuple(
            v + eps if bumped.get(w) == t else v
            for t, v in zip(prob.tasks, row)
        )
        for w, row in zip(prob.workers, prob.matrix)
    )
    return Problem(prob.workers, prob.tasks, rows)
