"""Seeded randomized search for axiom violations.

Each axiom has an instance generator that respects its quantifier
structure: the monotonicity axioms generate a matrix and then an
entrywise-dominated variant, the permutation axioms plant a permuted
duplicate row, the additivity axioms construct pairs that provably share
an optimal assignment, and so on.  Generated problems are small and
grid-valued so that ties, null rows and null tasks occur often enough to
exercise every code path.

``falsify`` runs the applicable catalog fixtures first and then random
trials until the budget is spent.  Verdicts are deterministic per seed:
the RNG substream is derived from (seed, rule, axiom), and the first
violation found is the one reported.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Sequence

from .core import DEFAULT_GRID, Problem, problem
from .assignment import enumerate_optimal, perturb_to_unique
from .axioms import (
    AXIOMS,
    UNDEFINED,
    VIOLATED,
    SURVIVED,
    AxiomInstance,
    Verdict,
    check,
)
from .fixtures import fixtures_for
from .rules import Rule

__all__ = ["falsify", "random_problem", "planted_tie_problem", "generate_instance"]

_POSITIVE_GRID = tuple(v for v in DEFAULT_GRID if v > 0)
_SIZES = (1, 2, 2, 2, 3, 3, 3, 4)
_ALPHAS = tuple(
    Fraction(n, d) for n, d in ((1, 3), (1, 2), (2, 3), (3, 2), (2, 1), (5, 2), (3, 1))
)


def random_problem(
    rng: random.Random,
    min_workers: int = 1,
    max_workers: int = 4,
    max_tasks: int = 5,
    grid: Sequence[Fraction] = DEFAULT_GRID,
) -> Problem:
    """Small grid-valued problem; occasionally plants a duplicate or null row."""
    n = rng.choice([s for s in _SIZES if min_workers <= s <= max_workers])
    m = min(max_tasks, n + rng.choice((0, 0, 1, 1, 2)))
    rows = [[rng.choice(grid) for _ in range(m)] for _ in range(n)]
    feature = rng.random()
    if n >= 2 and feature < 0.15:
        src, dst = rng.sample(range(n), 2)
        rows[dst] = list(rows[src])
    elif n >= 2 and feature < 0.25:
        rows[rng.randrange(n)] = [Fraction(0)] * m
    elif feature < 0.32:
        col = rng.randrange(m)
        for row in rows:
            row[col] = Fraction(0)
    elif n >= 2 and feature < 0.38:
        # fully substitutable workers: one shared positive column, rest zero;
        # every marginal contribution vanishes while output stays positive
        col = rng.randrange(m)
        value = rng.choice(_POSITIVE_GRID)
        rows = [
            [value if c == col else Fraction(0) for c in range(m)] for _ in range(n)
        ]
    return problem(rows)


def planted_tie_problem(rng: random.Random, max_workers: int = 4) -> Problem:
    """Problem with at least two optimal assignments, by construction.

    Two designated workers may swap their two designated tasks at equal
    value; every other worker has a single positive cell.  All remaining
    cells are zero, so exactly those two assignments are optimal.
    """
    n = rng.randint(2, max_workers)
    m = n + rng.choice((0, 1))
    rows = [[Fraction(0)] * m for _ in range(n)]
    workers = rng.sample(range(n), 2)
    tasks = rng.sample(range(m), 2)
    for w in workers:
        v = rng.choice(_POSITIVE_GRID)
        for t in tasks:
            rows[w][t] = v
    free_tasks = [t for t in range(m) if t not in tasks]
    rng.shuffle(free_tasks)
    for w in range(n):
        if w not in workers:
            rows[w][free_tasks.pop()] = rng.choice(_POSITIVE_GRID)
    return problem(rows)


def _unique_optimum_problem(rng: random.Random) -> Problem:
    base = random_problem(rng, min_workers=2)
    a = enumerate_optimal(base).assignments[0]
    return perturb_to_unique(base, a, Fraction(1, 4))


def _lower_value(rng: random.Random, v: Fraction, strict: bool) -> Fraction:
    candidates = [g for g in DEFAULT_GRID if (g < v if strict else g <= v)]
    return rng.choice(candidates) if candidates else v


def _lowered_row(rng, row, strict: bool) -> tuple[Fraction, ...]:
    """Entrywise-dominated variant of a row; differs somewhere unless impossible."""
    while True:
        lowered = tuple(
            _lower_value(rng, v, strict) if (strict or rng.random() < 0.6) else v
            for v in row
        )
        if strict or lowered != tuple(row):
            return lowered
        if all(v == 0 for v in row):
            raise ValueError("cannot lower a null row")


def _with_pair(rng: random.Random, prob: Problem) -> tuple[int, int]:
    return tuple(rng.sample(prob.workers, 2))  # type: ignore[return-value]


def _subgroup(rng: random.Random, prob: Problem) -> tuple[int, ...]:
    size = rng.randint(1, len(prob.workers) - 1)
    return tuple(sorted(rng.sample(prob.workers, size)))


def _gen_plain(rng: random.Random) -> AxiomInstance:
    return AxiomInstance(problem=random_problem(rng))


def _gen_continuity(rng: random.Random) -> AxiomInstance:
    if rng.random() < 0.6:
        base = planted_tie_problem(rng)
        a = rng.choice(enumerate_optimal(base).assignments)
        direction = {(w, a(w)): Fraction(1) for w in base.workers}
    else:
        base = random_problem(rng)
        direction = {
            (w, t): Fraction(rng.randint(0, 2), 2)
            for w in base.workers
            for t in base.tasks
        }
    scale = Fraction(1, 10**6) * rng.choice((Fraction(1), Fraction(1, 2), Fraction(1, 4)))
    rows = tuple(
        tuple(
            v + scale * direction.get((w, t), Fraction(0))
            for t, v in zip(base.tasks, row)
        )
        for w, row in zip(base.workers, base.matrix)
    )
    return AxiomInstance(problem=base, other=Problem(base.workers, base.tasks, rows))


def _gen_symmetry(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng, min_workers=2)
    i, j = _with_pair(rng, base)
    return AxiomInstance(problem=base.replace_row(j, base.row(i)), pair=(i, j))


def _random_permutation(rng: random.Random, tasks) -> dict[int, int]:
    shuffled = list(tasks)
    rng.shuffle(shuffled)
    return dict(zip(tasks, shuffled))


def _gen_pi_symmetry(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng, min_workers=2)
    i, j = _with_pair(rng, base)
    perm = _random_permutation(rng, base.tasks)
    permuted = tuple(base.value(i, t) for t in base.tasks)
    # row j gets row i's value at pi(t) slot: p_j^{pi(t)} = p_i^t
    row_j = list(base.row(j))
    for t, value in zip(base.tasks, permuted):
        row_j[base.task_index(perm[t])] = value
    return AxiomInstance(
        problem=base.replace_row(j, row_j),
        pair=(i, j),
        permutation=tuple(sorted(perm.items())),
    )


def _gen_order(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng, min_workers=2)
    i, j = _with_pair(rng, base)
    lowered = tuple(_lower_value(rng, v, strict=False) for v in base.row(i))
    return AxiomInstance(problem=base.replace_row(j, lowered), pair=(i, j))


def _gen_strict_order(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng, min_workers=2)
    i, j = _with_pair(rng, base)
    top = tuple(rng.choice(_POSITIVE_GRID) for _ in base.tasks)
    lowered = tuple(_lower_value(rng, v, strict=True) for v in top)
    return AxiomInstance(
        problem=base.replace_row(i, top).replace_row(j, lowered), pair=(i, j)
    )


def _gen_strong_order(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng, min_workers=2)
    i, j = _with_pair(rng, base)
    row_i = list(base.row(i))
    if all(v == 0 for v in row_i):
        row_i[rng.randrange(len(row_i))] = rng.choice(_POSITIVE_GRID)
        base = base.replace_row(i, row_i)
    lowered = _lowered_row(rng, base.row(i), strict=False)
    return AxiomInstance(problem=base.replace_row(j, lowered), pair=(i, j))


def _gen_pi_order(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng, min_workers=2)
    i, j = _with_pair(rng, base)
    perm = _random_permutation(rng, base.tasks)
    row_j = list(base.row(j))
    for t in base.tasks:
        row_j[base.task_index(perm[t])] = _lower_value(rng, base.value(i, t), False)
    return AxiomInstance(
        problem=base.replace_row(j, row_j),
        pair=(i, j),
        permutation=tuple(sorted(perm.items())),
    )


def _gen_group_mono(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng)
    rows = tuple(
        tuple(
            _lower_value(rng, v, strict=False) if rng.random() < 0.5 else v
            for v in row
        )
        for row in base.matrix
    )
    return AxiomInstance(problem=base, other=Problem(base.workers, base.tasks, rows))


def _gen_individual_mono(rng: random.Random) -> AxiomInstance:
    while True:
        base = random_problem(rng)
        w = rng.choice(base.workers)
        if any(v > 0 for v in base.row(w)):
            return AxiomInstance(
                problem=base, worker=w, row=_lowered_row(rng, base.row(w), False)
            )


def _gen_strict_individual_mono(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng)
    w = rng.choice(base.workers)
    top = tuple(rng.choice(_POSITIVE_GRID) for _ in base.tasks)
    base = base.replace_row(w, top)
    return AxiomInstance(problem=base, worker=w, row=_lowered_row(rng, top, True))


def _gen_constant(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng)
    w = rng.choice(base.workers)
    alpha = rng.choice(DEFAULT_GRID)
    return AxiomInstance(
        problem=base.replace_row(w, [alpha] * len(base.tasks)), worker=w
    )


def _gen_trivial(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng)
    rows = [[rng.choice(DEFAULT_GRID)] * len(base.tasks) for _ in base.workers]
    return AxiomInstance(problem=problem(rows, workers=base.workers, tasks=base.tasks))


def _gen_pairwise(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng, min_workers=2)
    return AxiomInstance(problem=base, pair=_with_pair(rng, base))


def _gen_subgroup(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng, min_workers=2)
    return AxiomInstance(problem=base, subgroup=_subgroup(rng, base))


def _gen_weak_consistency(rng: random.Random) -> AxiomInstance:
    base = _unique_optimum_problem(rng)
    return AxiomInstance(problem=base, subgroup=_subgroup(rng, base))


def _gen_null_worker(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng, min_workers=2)
    w = rng.choice(base.workers)
    return AxiomInstance(
        problem=base.replace_row(w, [0] * len(base.tasks)), worker=w
    )


def _gen_null_task(rng: random.Random) -> AxiomInstance:
    while True:
        base = random_problem(rng)
        if len(base.tasks) >= len(base.workers) + 1:
            break
    t = rng.choice(base.tasks)
    col = base.task_index(t)
    rows = tuple(
        tuple(Fraction(0) if c == col else v for c, v in enumerate(row))
        for row in base.matrix
    )
    return AxiomInstance(problem=Problem(base.workers, base.tasks, rows), task=t)


def _gen_unassigned_tasks(rng: random.Random) -> AxiomInstance:
    from .assignment import assigned_task_set

    base = random_problem(rng)
    used = set(assigned_task_set(base))
    spare = [t for t in base.tasks if t not in used]
    keep = sorted(used | {t for t in spare if rng.random() < 0.3})
    return AxiomInstance(problem=base, tasks=tuple(keep))


def _gen_additivity(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng)
    a = rng.choice(enumerate_optimal(base).assignments)
    raw = problem(
        [[rng.choice(DEFAULT_GRID) for _ in base.tasks] for _ in base.workers],
        workers=base.workers,
        tasks=base.tasks,
    )
    # Raising the second matrix along one of the first's optima by the gap
    # between its own optimum and that assignment makes the assignment
    # optimal for it too, so the pair shares an optimum by construction.
    along = sum((raw.value(w, a(w)) for w in raw.workers), Fraction(0))
    bump = enumerate_optimal(raw).value - along
    rows = tuple(
        tuple(v + bump if a(w) == t else v for t, v in zip(raw.tasks, row))
        for w, row in zip(raw.workers, raw.matrix)
    )
    return AxiomInstance(
        problem=base, other=Problem(base.workers, base.tasks, rows)
    )


def _gen_weak_additivity(rng: random.Random) -> AxiomInstance:
    base = random_problem(rng)
    alpha = rng.choice(_ALPHAS)
    shifts = [rng.choice(DEFAULT_GRID) for _ in base.workers]
    # Scaling and per-row shifts change every assignment's total the same
    # way, so the optimal set is exactly preserved.
    rows = tuple(
        tuple(alpha * v + shift for v in row)
        for shift, row in zip(shifts, base.matrix)
    )
    return AxiomInstance(problem=base, other=Problem(base.workers, base.tasks, rows))


def _gen_homogeneity(rng: random.Random) -> AxiomInstance:
    return AxiomInstance(problem=random_problem(rng), alpha=rng.choice(_ALPHAS))


_GENERATORS: dict[str, Callable[[random.Random], AxiomInstance]] = {
    "efficiency": _gen_plain,
    "continuity": _gen_continuity,
    "boundedness": _gen_plain,
    "symmetry": _gen_symmetry,
    "pi-symmetry": _gen_pi_symmetry,
    "order-preservation": _gen_order,
    "strict-order-preservation": _gen_strict_order,
    "strong-order-preservation": _gen_strong_order,
    "pi-order-preservation": _gen_pi_order,
    "group-productivity-monotonicity": _gen_group_mono,
    "individual-productivity-monotonicity": _gen_individual_mono,
    "strict-individual-productivity-monotonicity": _gen_strict_individual_mono,
    "strong-individual-productivity-monotonicity": _gen_individual_mono,
    "constant-productivity": _gen_constant,
    "trivialness": _gen_trivial,
    "balanced-impact": _gen_pairwise,
    "consistency": _gen_subgroup,
    "weak-consistency": _gen_weak_consistency,
    "independence-of-null-workers": _gen_null_worker,
    "no-harm-from-hiring": _gen_subgroup,
    "solidarity-in-hiring": _gen_subgroup,
    "independence-of-null-tasks": _gen_null_task,
    "independence-of-unassigned-tasks": _gen_unassigned_tasks,
    "additivity": _gen_additivity,
    "weak-additivity": _gen_weak_additivity,
    "homogeneity": _gen_homogeneity,
}


def generate_instance(axiom: str, rng: random.Random) -> AxiomInstance:
    """One random, premise-valid instance for the axiom."""
    return _GENERATORS[axiom](rng)


def falsify(rule: Rule, axiom: str, budget: int = 1000, seed: int = 0) -> Verdict:
    """Search for a violation; catalog fixtures first, then seeded random trials.

    Returns the violation with the lowest trial index, or a `survived`
    verdict carrying the trial count, the seed, and how many trials were
    skipped because the rule was undefined on them.
    """
    if axiom not in AXIOMS:
        raise KeyError(f"unknown axiom {axiom!r}")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    rng = random.Random(f"{seed}:{rule.name}:{axiom}")
    skipped = 0
    trial = 0
    queued = [(f"fixture:{f.name}", f.instance) for f in fixtures_for(rule.name, axiom)]
    while trial < budget:
        if queued:
            evidence, instance = queued.pop(0)
        else:
            evidence, instance = f"trial:{trial}", generate_instance(axiom, rng)
        verdict = check(rule, axiom, instance)
        if verdict.status == VIOLATED:
            return Verdict(
                status=VIOLATED,
                rule=rule.name,
                axiom=axiom,
                detail=verdict.detail,
                instance=instance,
                trials=trial + 1,
                seed=seed,
                skipped=skipped,
                evidence=evidence,
            )
        if verdict.status == UNDEFINED:
            skipped += 1
        trial += 1
    return Verdict(
        status=SURVIVED,
        rule=rule.name,
        axiom=axiom,
        detail=f"no violation in {budget} trials",
        trials=budget,
        seed=seed,
        skipped=skipped,
        evidence="falsifier",
    )
