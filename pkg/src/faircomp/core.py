"""Exact-arithmetic domain model for worker/task compensation problems.

A problem is a set of workers, a set of at-least-as-many tasks, and a
nonnegative productivity matrix giving each worker's output on each task.
All magnitudes are exact rationals (`fractions.Fraction`): membership in
the set of optimal assignments is tie-sensitive, so floating point is
never used in any computation that feeds a compensation rule.

Worker and task labels are positive integers.  Problems store them in
sorted order, which fixes a canonical iteration order for enumeration
and reporting.
"""

from __future__ import annotations

import json
import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Rational",
    "ParseError",
    "InvalidProblem",
    "Problem",
    "Solution",
    "ProfileSummary",
    "parse_rational",
    "render_rational",
    "decimal_rational",
    "problem",
    "validate",
    "require_valid",
    "summarize",
    "restrict",
    "generate",
    "trivial_problem",
    "DEFAULT_GRID",
]

Rational = Fraction

_DECIMAL_RE = re.compile(r"^[+-]?\d+(\.\d+)?$")
_FRACTION_RE = re.compile(r"^[+-]?\d+/\d+$")


class ParseError(ValueError):
    """Raised for text that is not a decimal or fraction literal."""


class InvalidProblem(ValueError):
    """Raised when an operation receives a problem violating its invariants."""

    def __init__(self, violations: Sequence[str]):
        super().__init__("; ".join(violations))
        self.violations = tuple(violations)


def parse_rational(text: str) -> Fraction:
    """Parse ``"4.25"``, ``"3"`` or ``"11550/67"`` into an exact rational.

    Decimal expansions are exact ("4.25" -> 17/4); no rounding happens.
    """
    if not isinstance(text, str):
        raise ParseError(f"expected a string, got {type(text).__name__}")
    stripped = text.strip()
    if _DECIMAL_RE.match(stripped):
        return Fraction(stripped)
    if _FRACTION_RE.match(stripped):
        num, _, den = stripped.partition("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    raise ParseError(f"not a decimal or fraction literal: {text!r}")


def render_rational(value: Fraction) -> str:
    """Canonical text form, round-trippable through :func:`parse_rational`."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def decimal_rational(value: Fraction, places: int = 6) -> str:
    """Fixed-point rendering computed with integer arithmetic (half-even ties)."""
    scale = 10**places
    scaled = value * scale
    floor = scaled.numerator // scaled.denominator
    rem = scaled - floor
    if rem > Fraction(1, 2) or (rem == Fraction(1, 2) and floor % 2 != 0):
        floor += 1
    sign = "-" if floor < 0 else ""
    units, frac = divmod(abs(floor), scale)
    return f"{sign}{units}.{frac:0{places}d}"


def _as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise ParseError(f"cannot interpret {value!r} as an exact rational")


@dataclass(frozen=True)
class Problem:
    """A compensation problem: workers, tasks and the productivity matrix.

    ``matrix[r][c]`` is the output of ``workers[r]`` on ``tasks[c]``.
    Labels are kept sorted; rows and columns follow that order.
    """

    workers: tuple[int, ...]
    tasks: tuple[int, ...]
    matrix: tuple[tuple[Fraction, ...], ...]

    def __hash__(self):
        # Problems are hashed constantly as memo keys; compute once.
        try:
            return self._hash  # type: ignore[attr-defined]
        except AttributeError:
            value = hash((self.workers, self.tasks, self.matrix))
            object.__setattr__(self, "_hash", value)
            return value

    def __post_init__(self):
        if len(self.matrix) != len(self.workers):
            raise ValueError("matrix row count does not match worker count")
        for row in self.matrix:
            if len(row) != len(self.tasks):
                raise ValueError("matrix column count does not match task count")
        if list(self.workers) != sorted(set(self.workers)):
            raise ValueError("worker labels must be unique and sorted")
        if list(self.tasks) != sorted(set(self.tasks)):
            raise ValueError("task labels must be unique and sorted")

    # -- label/index plumbing ------------------------------------------------

    def worker_index(self, worker: int) -> int:
        try:
            return self.workers.index(worker)
        except ValueError:
            raise KeyError(f"unknown worker {worker}") from None

    def task_index(self, task: int) -> int:
        try:
            return self.tasks.index(task)
        except ValueError:
            raise KeyError(f"unknown task {task}") from None

    def value(self, worker: int, task: int) -> Fraction:
        return self.matrix[self.worker_index(worker)][self.task_index(task)]

    def row(self, worker: int) -> tuple[Fraction, ...]:
        return self.matrix[self.worker_index(worker)]

    # -- derived problems ----------------------------------------------------

    def replace_row(self, worker: int, row: Sequence) -> "Problem":
        """New problem with ``worker``'s productivity profile swapped out."""
        new_row = tuple(_as_rational(v) for v in row)
        if len(new_row) != len(self.tasks):
            raise ValueError("replacement row has wrong length")
        r = self.worker_index(worker)
        rows = tuple(new_row if k == r else old for k, old in enumerate(self.matrix))
        return Problem(self.workers, self.tasks, rows)

    def without_worker(self, worker: int) -> "Problem":
        keep = tuple(w for w in self.workers if w != worker)
        return restrict(self, keep, self.tasks)

    def without_task(self, task: int) -> "Problem":
        keep = tuple(t for t in self.tasks if t != task)
        return restrict(self, self.workers, keep)

    def scale(self, alpha) -> "Problem":
        a = _as_rational(alpha)
        rows = tuple(tuple(a * v for v in row) for row in self.matrix)
        return Problem(self.workers, self.tasks, rows)

    def add(self, other: "Problem") -> "Problem":
        if other.workers != self.workers or other.tasks != self.tasks:
            raise ValueError("matrices must share workers and tasks to be added")
        rows = tuple(
            tuple(a + b for a, b in zip(ra, rb))
            for ra, rb in zip(self.matrix, other.matrix)
        )
        return Problem(self.workers, self.tasks, rows)

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "workers": list(self.workers),
            "tasks": list(self.tasks),
            "productivity": [[render_rational(v) for v in row] for row in self.matrix],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @staticmethod
    def from_json_dict(data: Mapping) -> "Problem":
        try:
            workers = [int(w) for w in data["workers"]]
            tasks = [int(t) for t in data["tasks"]]
            rows = data["productivity"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed problem object: {exc}") from exc
        if len(rows) != len(workers):
            raise ParseError("productivity row count does not match workers")
        entries: dict[tuple[int, int], Fraction] = {}
        for w, row in zip(workers, rows):
            if len(row) != len(tasks):
                raise ParseError("productivity column count does not match tasks")
            for t, cell in zip(tasks, row):
                entries[(w, t)] = _as_rational(cell)
        sw, st = sorted(set(workers)), sorted(set(tasks))
        if len(sw) != len(workers) or len(st) != len(tasks):
            raise ParseError("duplicate worker or task labels")
        matrix = tuple(tuple(entries[(w, t)] for t in st) for w in sw)
        return Problem(tuple(sw), tuple(st), matrix)

    @staticmethod
    def from_json(text: str) -> "Problem":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        return Problem.from_json_dict(data)


def problem(rows: Sequence[Sequence], workers: Sequence[int] | None = None,
            tasks: Sequence[int] | None = None) -> Problem:
    """Convenience constructor: rows of ints/strings/Fractions, 1-based labels."""
    n = len(rows)
    m = len(rows[0]) if rows else 0
    w = tuple(workers) if workers is not None else tuple(range(1, n + 1))
    t = tuple(tasks) if tasks is not None else tuple(range(1, m + 1))
    matrix = tuple(tuple(_as_rational(v) for v in row) for row in rows)
    return Problem(w, t, matrix)


def validate(prob: Problem) -> list[str]:
    """Diagnostic check of the problem invariants; empty list iff valid."""
    violations = []
    if len(prob.workers) < 1:
        violations.append("at least one worker is required")
    if len(prob.tasks) < len(prob.workers):
        violations.append(
            f"task count {len(prob.tasks)} is below worker count {len(prob.workers)}"
        )
    if any(w < 1 for w in prob.workers) or any(t < 1 for t in prob.tasks):
        violations.append("labels must be positive integers")
    for w, row in zip(prob.workers, prob.matrix):
        for t, v in zip(prob.tasks, row):
            if v.numerator < 0:
                violations.append(f"nonnegativity fails at worker {w}, task {t}")
    return violations


def require_valid(prob: Problem) -> Problem:
    if getattr(prob, "_checked", False):
        return prob
    violations = validate(prob)
    if violations:
        raise InvalidProblem(violations)
    object.__setattr__(prob, "_checked", True)
    return prob


@dataclass(frozen=True)
class ProfileSummary:
    """Per-worker summary of a productivity profile: mean, max and min."""

    mean: Fraction
    maximum: Fraction
    minimum: Fraction


def summarize(prob: Problem, worker: int) -> ProfileSummary:
    """Exact mean/max/min of one worker's productivity row."""
    row = prob.row(worker)
    mean = sum(row, Fraction(0)) / len(row)
    return ProfileSummary(mean=mean, maximum=max(row), minimum=min(row))


def restrict(prob: Problem, workers: Iterable[int], tasks: Iterable[int]) -> Problem:
    """Sub-problem on a subset of workers and tasks (rows/columns of the matrix)."""
    w = tuple(sorted(set(workers)))
    t = tuple(sorted(set(tasks)))
    if not set(w) <= set(prob.workers):
        raise KeyError(f"unknown workers {sorted(set(w) - set(prob.workers))}")
    if not set(t) <= set(prob.tasks):
        raise KeyError(f"unknown tasks {sorted(set(t) - set(prob.tasks))}")
    if len(w) == 0:
        raise InvalidProblem(["at least one worker is required"])
    if len(w) > len(t):
        raise InvalidProblem(
            [f"restriction leaves {len(w)} workers but only {len(t)} tasks"]
        )
    cols = [prob.task_index(x) for x in t]
    rows = tuple(
        tuple(prob.matrix[prob.worker_index(x)][c] for c in cols) for x in w
    )
    return Problem(w, t, rows)


class Solution:
    """Nonnegative pay vector over a problem's workers, summing to at most y."""

    __slots__ = ("pay",)

    def __init__(self, pay: Mapping[int, Fraction]):
        object.__setattr__(self, "pay", dict(sorted(pay.items())))

    def __getitem__(self, worker: int) -> Fraction:
        return self.pay[worker]

    def __iter__(self):
        return iter(self.pay.items())

    def __eq__(self, other):
        return isinstance(other, Solution) and self.pay == other.pay

    def __repr__(self):
        inner = ", ".join(f"{w}: {render_rational(v)}" for w, v in self.pay.items())
        return f"Solution({{{inner}}})"

    @property
    def workers(self) -> tuple[int, ...]:
        return tuple(self.pay)

    def total(self) -> Fraction:
        return sum(self.pay.values(), Fraction(0))

    def vector(self, workers: Iterable[int] | None = None) -> tuple[Fraction, ...]:
        ws = tuple(workers) if workers is not None else self.workers
        return tuple(self.pay[w] for w in ws)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.pay)


# Value grid for the seeded generator: integers 0..9 plus halves.  Small
# grids make coincidental ties likely, which the multi-optimum code paths
# need at desk scale.
DEFAULT_GRID: tuple[Fraction, ...] = tuple(Fraction(k, 2) for k in range(0, 19))


def generate(seed: int, shape: tuple[int, int],
             grid: Sequence[Fraction] = DEFAULT_GRID) -> Problem:
    """Deterministic random problem for the given seed and (workers, tasks) shape."""
    n, m = shape
    if n > m:
        raise InvalidProblem([f"shape ({n}, {m}) has more workers than tasks"])
    rng = random.Random(seed)
    choices = tuple(_as_rational(v) for v in grid)
    rows = tuple(tuple(rng.choice(choices) for _ in range(m)) for _ in range(n))
    return Problem(tuple(range(1, n + 1)), tuple(range(1, m + 1)), rows)


def trivial_problem(alphas: Sequence, num_tasks: int,
                    workers: Sequence[int] | None = None,
                    tasks: Sequence[int] | None = None) -> Problem:
    """Problem in which every worker has constant productivity across tasks."""
    values = [_as_rational(a) for a in alphas]
    rows = [[a] * num_tasks for a in values]
    return problem(rows, workers=workers, tasks=tasks)


def lcm_denominator(prob: Problem) -> int:
    """Least common denominator of all matrix entries (used for integer solving)."""
    den = 1
    for row in prob.matrix:
        for v in row:
            den = math.lcm(den, v.denominator)
    return den
