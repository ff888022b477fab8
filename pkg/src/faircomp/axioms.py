"""Machine-checkable fairness axioms over compensation rules.

Each axiom is a predicate over a rule and a concrete test scenario (an
:class:`AxiomInstance` carrying the quantified objects: a second matrix,
a worker pair, a subgroup, a task permutation, and so on).  All
comparisons are exact rational comparisons; strict axioms use strict
comparison with no epsilon.

Continuity is the one axiom that finite evaluation cannot decide.  It is
checked by a documented proxy: an instance pairs the problem with a
nearby matrix, and counts as violated when the input distance is at most
1e-6 while some worker's pay moves by at least 1/2.  This is a
semi-decision; surviving it is evidence, not proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

from .core import Problem, Solution, render_rational, restrict
from .assignment import enumerate_optimal
from .rules import Rule, RuleUndefined

__all__ = [
    "AxiomInstance",
    "Verdict",
    "InstanceShapeError",
    "AXIOMS",
    "AXIOM_ORDER",
    "check",
    "axiom_label",
]

HOLDS = "holds"
VIOLATED = "violated"
SURVIVED = "survived"
UNDEFINED = "undefined"

CONTINUITY_DELTA = Fraction(1, 10**6)
CONTINUITY_GAP = Fraction(1, 2)


class InstanceShapeError(ValueError):
    """The instance does not carry the data its axiom's shape demands."""


@dataclass(frozen=True)
class AxiomInstance:
    """One concrete scenario for one axiom.

    Only the fields demanded by the axiom's shape may be set: ``other``
    is a second matrix (monotonicity, additivity, continuity), ``row`` a
    replacement productivity profile, ``permutation`` a task bijection,
    and so on.
    """

    problem: Problem
    other: Problem | None = None
    worker: int | None = None
    pair: tuple[int, int] | None = None
    row: tuple[Fraction, ...] | None = None
    subgroup: tuple[int, ...] | None = None
    task: int | None = None
    tasks: tuple[int, ...] | None = None
    permutation: tuple[tuple[int, int], ...] | None = None
    alpha: Fraction | None = None


@dataclass(frozen=True)
class Verdict:
    status: str
    rule: str
    axiom: str
    detail: str = ""
    instance: AxiomInstance | None = field(default=None, compare=False)
    trials: int | None = None
    seed: int | None = None
    skipped: int = 0
    evidence: str = ""

    @property
    def symbol(self) -> str:
        return "-" if self.status == VIOLATED else "+"


def _vec(sol: Solution, workers: Sequence[int]) -> str:
    return "(" + ", ".join(render_rational(sol[w]) for w in workers) + ")"


def _need(value, name: str):
    if value is None:
        raise InstanceShapeError(f"instance is missing {name}")
    return value


def _same_shape(a: Problem, b: Problem):
    if a.workers != b.workers or a.tasks != b.tasks:
        raise InstanceShapeError("matrices must share workers and tasks")


def _weakly_dominates(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    return all(x >= y for x, y in zip(a, b))


def _strictly_dominates(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    return all(x > y for x, y in zip(a, b))


def _replace_row(inst: AxiomInstance) -> Problem:
    worker = _need(inst.worker, "worker")
    row = _need(inst.row, "row")
    return inst.problem.replace_row(worker, row)


# -- checkers ----------------------------------------------------------------
# Each returns (ok, detail); RuleUndefined escapes to check() and becomes an
# `undefined` verdict.


def _check_efficiency(rule: Rule, inst: AxiomInstance):
    from .assignment import optimal_value

    sol = rule(inst.problem)
    total = optimal_value(inst.problem)
    ok = sol.total() == total
    return ok, f"sum {render_rational(sol.total())} vs y {render_rational(total)}"


def _check_continuity(rule: Rule, inst: AxiomInstance):
    near = _need(inst.other, "other (nearby matrix)")
    _same_shape(inst.problem, near)
    delta = max(
        abs(a - b)
        for ra, rb in zip(inst.problem.matrix, near.matrix)
        for a, b in zip(ra, rb)
    )
    if delta > CONTINUITY_DELTA:
        return True, "perturbation above the proxy's input threshold"
    base = rule(inst.problem)
    moved = rule(near)
    gap = max(abs(base[w] - moved[w]) for w in inst.problem.workers)
    ok = gap < CONTINUITY_GAP
    return ok, (
        f"input distance {render_rational(delta)} moved some pay by "
        f"{render_rational(gap)}"
    )


def _check_boundedness(rule: Rule, inst: AxiomInstance):
    sol = rule(inst.problem)
    for w in inst.problem.workers:
        row = inst.problem.row(w)
        if not (min(row) <= sol[w] <= max(row)):
            return False, (
                f"worker {w} pay {render_rational(sol[w])} outside "
                f"[{render_rational(min(row))}, {render_rational(max(row))}]"
            )
    return True, "all pays within profile bounds"


def _check_symmetry(rule: Rule, inst: AxiomInstance):
    i, j = _need(inst.pair, "pair")
    if inst.problem.row(i) != inst.problem.row(j):
        raise InstanceShapeError("symmetry premise needs identical rows")
    sol = rule(inst.problem)
    ok = sol[i] == sol[j]
    return ok, f"pay {render_rational(sol[i])} vs {render_rational(sol[j])}"


def _apply_permutation(inst: AxiomInstance) -> dict[int, int]:
    perm = dict(_need(inst.permutation, "permutation"))
    tasks = set(inst.problem.tasks)
    if set(perm) != tasks or set(perm.values()) != tasks:
        raise InstanceShapeError("permutation must be a bijection on the task set")
    return perm


def _check_pi_symmetry(rule: Rule, inst: AxiomInstance):
    i, j = _need(inst.pair, "pair")
    perm = _apply_permutation(inst)
    p = inst.problem
    if any(p.value(i, t) != p.value(j, perm[t]) for t in p.tasks):
        raise InstanceShapeError("rows are not related by the given permutation")
    sol = rule(p)
    ok = sol[i] == sol[j]
    return ok, f"pay {render_rational(sol[i])} vs {render_rational(sol[j])}"


def _check_order_preservation(rule: Rule, inst: AxiomInstance):
    i, j = _need(inst.pair, "pair")
    p = inst.problem
    if not _weakly_dominates(p.row(i), p.row(j)):
        raise InstanceShapeError("row i must weakly dominate row j")
    sol = rule(p)
    ok = sol[i] >= sol[j]
    return ok, f"pay {render_rational(sol[i])} vs {render_rational(sol[j])}"


def _check_strict_order_preservation(rule: Rule, inst: AxiomInstance):
    i, j = _need(inst.pair, "pair")
    p = inst.problem
    if not _strictly_dominates(p.row(i), p.row(j)):
        raise InstanceShapeError("row i must strictly dominate row j everywhere")
    sol = rule(p)
    ok = sol[i] > sol[j]
    return ok, f"pay {render_rational(sol[i])} vs {render_rational(sol[j])}"


def _check_strong_order_preservation(rule: Rule, inst: AxiomInstance):
    i, j = _need(inst.pair, "pair")
    p = inst.problem
    if not (_weakly_dominates(p.row(i), p.row(j)) and p.row(i) != p.row(j)):
        raise InstanceShapeError("row i must weakly dominate and differ from row j")
    sol = rule(p)
    ok = sol[i] > sol[j]
    return ok, f"pay {render_rational(sol[i])} vs {render_rational(sol[j])}"


def _check_pi_order_preservation(rule: Rule, inst: AxiomInstance):
    i, j = _need(inst.pair, "pair")
    perm = _apply_permutation(inst)
    p = inst.problem
    if any(p.value(i, t) < p.value(j, perm[t]) for t in p.tasks):
        raise InstanceShapeError("row i must dominate row j along the permutation")
    sol = rule(p)
    ok = sol[i] >= sol[j]
    return ok, f"pay {render_rational(sol[i])} vs {render_rational(sol[j])}"


def _check_group_mono(rule: Rule, inst: AxiomInstance):
    lower = _need(inst.other, "other (dominated matrix)")
    _same_shape(inst.problem, lower)
    for ra, rb in zip(inst.problem.matrix, lower.matrix):
        if not _weakly_dominates(ra, rb):
            raise InstanceShapeError("first matrix must dominate the second entrywise")
    sol_hi = rule(inst.problem)
    sol_lo = rule(lower)
    for w in inst.problem.workers:
        if sol_hi[w] < sol_lo[w]:
            return False, (
                f"worker {w} pay falls {render_rational(sol_lo[w])} -> "
                f"{render_rational(sol_hi[w])} as productivity rises"
            )
    return True, "no worker loses"


def _ipm_common(rule: Rule, inst: AxiomInstance, premise: str):
    worker = _need(inst.worker, "worker")
    row = _need(inst.row, "row")
    original = inst.problem.row(worker)
    if premise == "strict":
        if not _strictly_dominates(original, row):
            raise InstanceShapeError("lowered row must be strictly below everywhere")
    else:
        if not (_weakly_dominates(original, row) and tuple(original) != tuple(row)):
            raise InstanceShapeError("lowered row must be weakly below and different")
    lowered = _replace_row(inst)
    return rule(inst.problem)[worker], rule(lowered)[worker]


def _check_individual_mono(rule: Rule, inst: AxiomInstance):
    hi, lo = _ipm_common(rule, inst, "weak")
    ok = hi >= lo
    return ok, f"pay {render_rational(hi)} vs lowered {render_rational(lo)}"


def _check_strict_individual_mono(rule: Rule, inst: AxiomInstance):
    hi, lo = _ipm_common(rule, inst, "strict")
    ok = hi > lo
    return ok, f"pay {render_rational(hi)} vs lowered {render_rational(lo)}"


def _check_strong_individual_mono(rule: Rule, inst: AxiomInstance):
    hi, lo = _ipm_common(rule, inst, "weak")
    ok = hi > lo
    return ok, f"pay {render_rational(hi)} vs lowered {render_rational(lo)}"


def _check_constant_productivity(rule: Rule, inst: AxiomInstance):
    worker = _need(inst.worker, "worker")
    row = inst.problem.row(worker)
    if len(set(row)) != 1:
        raise InstanceShapeError("worker must have constant productivity")
    alpha = row[0]
    sol = rule(inst.problem)
    ok = sol[worker] == alpha
    return ok, f"pay {render_rational(sol[worker])} vs constant {render_rational(alpha)}"


def _check_trivialness(rule: Rule, inst: AxiomInstance):
    p = inst.problem
    if any(len(set(row)) != 1 for row in p.matrix):
        raise InstanceShapeError("every worker must have constant productivity")
    sol = rule(p)
    for w in p.workers:
        alpha = p.row(w)[0]
        if sol[w] != alpha:
            return False, (
                f"worker {w} pay {render_rational(sol[w])} vs constant "
                f"{render_rational(alpha)}"
            )
    return True, "everyone receives their constant"


def _balanced_impact_pairs(inst: AxiomInstance):
    p = inst.problem
    if len(p.workers) < 2:
        raise InstanceShapeError("balanced impact needs at least two workers")
    if inst.pair is not None:
        return [inst.pair]
    ws = p.workers
    return [(ws[a], ws[b]) for a in range(len(ws)) for b in range(a + 1, len(ws))]


def _check_balanced_impact(rule: Rule, inst: AxiomInstance):
    p = inst.problem
    sol = rule(p)
    for i, j in _balanced_impact_pairs(inst):
        impact_on_i = sol[i] - rule(p.without_worker(j))[i]
        impact_on_j = sol[j] - rule(p.without_worker(i))[j]
        if impact_on_i != impact_on_j:
            return False, (
                f"pair ({i},{j}): impacts {render_rational(impact_on_i)} vs "
                f"{render_rational(impact_on_j)}"
            )
    return True, "impacts balanced for all checked pairs"


def _proper_subgroup(inst: AxiomInstance) -> tuple[int, ...]:
    subgroup = _need(inst.subgroup, "subgroup")
    members = tuple(sorted(set(subgroup)))
    workers = set(inst.problem.workers)
    if not members or not set(members) < workers:
        raise InstanceShapeError("subgroup must be a nonempty proper subset")
    return members


def _check_consistency(rule: Rule, inst: AxiomInstance):
    members = _proper_subgroup(inst)
    p = inst.problem
    sol = rule(p)
    opt = enumerate_optimal(p)
    sums = {w: Fraction(0) for w in members}
    for a in opt.assignments:
        reduced = restrict(p, members, a.image(members))
        reduced_sol = rule(reduced)
        for w in members:
            sums[w] += reduced_sol[w]
    count = len(opt.assignments)
    for w in members:
        if sol[w] != sums[w] / count:
            return False, (
                f"worker {w}: pay {render_rational(sol[w])} vs reduced average "
                f"{render_rational(sums[w] / count)}"
            )
    return True, "pay matches the reduced-problem average"


def _check_weak_consistency(rule: Rule, inst: AxiomInstance):
    members = _proper_subgroup(inst)
    p = inst.problem
    opt = enumerate_optimal(p)
    if len(opt.assignments) != 1:
        raise InstanceShapeError("weak consistency needs a unique optimum")
    a = opt.assignments[0]
    sol = rule(p)
    reduced_sol = rule(restrict(p, members, a.image(members)))
    for w in members:
        if sol[w] != reduced_sol[w]:
            return False, (
                f"worker {w}: pay {render_rational(sol[w])} vs reduced "
                f"{render_rational(reduced_sol[w])}"
            )
    return True, "pay survives the reduction"


def _check_null_workers(rule: Rule, inst: AxiomInstance):
    worker = _need(inst.worker, "worker")
    p = inst.problem
    if any(v != 0 for v in p.row(worker)):
        raise InstanceShapeError("designated worker must be null")
    if len(p.workers) < 2:
        raise InstanceShapeError("need another worker to compare")
    sol = rule(p)
    without = rule(p.without_worker(worker))
    for w in p.workers:
        if w == worker:
            continue
        if sol[w] != without[w]:
            return False, (
                f"worker {w} pay changes {render_rational(sol[w])} -> "
                f"{render_rational(without[w])} when the null worker leaves"
            )
    return True, "removing the null worker changes nobody's pay"


def _subgroup_solutions(rule: Rule, inst: AxiomInstance):
    members = _proper_subgroup(inst)
    p = inst.problem
    sol = rule(p)
    sub = rule(restrict(p, members, p.tasks))
    return members, sol, sub


def _check_no_harm(rule: Rule, inst: AxiomInstance):
    members, sol, sub = _subgroup_solutions(rule, inst)
    for w in members:
        if sol[w] < sub[w]:
            return False, (
                f"worker {w} pay drops {render_rational(sub[w])} -> "
                f"{render_rational(sol[w])} after hiring"
            )
    return True, "no incumbent is worse off"


def _check_solidarity(rule: Rule, inst: AxiomInstance):
    members, sol, sub = _subgroup_solutions(rule, inst)
    up = all(sol[w] >= sub[w] for w in members)
    down = all(sol[w] <= sub[w] for w in members)
    ok = up or down
    return ok, (
        "incumbents move together"
        if ok
        else "hiring helps some incumbents and hurts others: "
        + _vec(sol, members)
        + " vs "
        + _vec(sub, members)
    )


def _check_null_tasks(rule: Rule, inst: AxiomInstance):
    task = _need(inst.task, "task")
    p = inst.problem
    col = [p.value(w, task) for w in p.workers]
    if any(v != 0 for v in col):
        raise InstanceShapeError("designated task must be null")
    if len(p.tasks) < len(p.workers) + 1:
        raise InstanceShapeError("need a spare task before removing one")
    sol = rule(p)
    without = rule(p.without_task(task))
    for w in p.workers:
        if sol[w] != without[w]:
            return False, (
                f"worker {w} pay changes {render_rational(sol[w])} -> "
                f"{render_rational(without[w])} when the null task is dropped"
            )
    return True, "dropping the null task changes nobody's pay"


def _check_unassigned_tasks(rule: Rule, inst: AxiomInstance):
    from .assignment import assigned_task_set

    keep = _need(inst.tasks, "tasks")
    p = inst.problem
    kept = tuple(sorted(set(keep)))
    used = set(assigned_task_set(p))
    if not used <= set(kept) or not set(kept) <= set(p.tasks):
        raise InstanceShapeError("kept tasks must contain every optimally used task")
    sol = rule(p)
    trimmed = rule(restrict(p, p.workers, kept))
    for w in p.workers:
        if sol[w] != trimmed[w]:
            return False, (
                f"worker {w} pay changes {render_rational(sol[w])} -> "
                f"{render_rational(trimmed[w])} when unused tasks are dropped"
            )
    return True, "unused tasks are irrelevant"


def _additive_solutions(rule: Rule, inst: AxiomInstance):
    other = _need(inst.other, "other (second matrix)")
    _same_shape(inst.problem, other)
    return rule(inst.problem), rule(other), rule(inst.problem.add(other))


def _check_additivity(rule: Rule, inst: AxiomInstance):
    other = _need(inst.other, "other (second matrix)")
    _same_shape(inst.problem, other)
    first = set(enumerate_optimal(inst.problem).assignments)
    second = set(enumerate_optimal(other).assignments)
    if not first & second:
        raise InstanceShapeError("matrices must share an optimal assignment")
    sol_a, sol_b, sol_sum = _additive_solutions(rule, inst)
    for w in inst.problem.workers:
        if sol_sum[w] != sol_a[w] + sol_b[w]:
            return False, (
                f"worker {w}: {render_rational(sol_a[w])} + "
                f"{render_rational(sol_b[w])} != {render_rational(sol_sum[w])}"
            )
    return True, "pay adds across the matrices"


def _check_weak_additivity(rule: Rule, inst: AxiomInstance):
    other = _need(inst.other, "other (second matrix)")
    _same_shape(inst.problem, other)
    first = enumerate_optimal(inst.problem).assignments
    second = enumerate_optimal(other).assignments
    if set(first) != set(second):
        raise InstanceShapeError("matrices must have identical optimal sets")
    sol_a, sol_b, sol_sum = _additive_solutions(rule, inst)
    for w in inst.problem.workers:
        if sol_sum[w] != sol_a[w] + sol_b[w]:
            return False, (
                f"worker {w}: {render_rational(sol_a[w])} + "
                f"{render_rational(sol_b[w])} != {render_rational(sol_sum[w])}"
            )
    return True, "pay adds across the matrices"


def _check_homogeneity(rule: Rule, inst: AxiomInstance):
    alpha = _need(inst.alpha, "alpha")
    if alpha <= 0:
        raise InstanceShapeError("alpha must be positive")
    sol = rule(inst.problem)
    scaled = rule(inst.problem.scale(alpha))
    for w in inst.problem.workers:
        if scaled[w] != alpha * sol[w]:
            return False, (
                f"worker {w}: scaled pay {render_rational(scaled[w])} vs "
                f"{render_rational(alpha * sol[w])}"
            )
    return True, "pay scales with productivity"


@dataclass(frozen=True)
class AxiomSpec:
    name: str
    label: str
    checker: Callable[[Rule, AxiomInstance], tuple[bool, str]] = field(compare=False)


AXIOMS: dict[str, AxiomSpec] = {
    spec.name: spec
    for spec in (
        AxiomSpec("efficiency", "Efficiency", _check_efficiency),
        AxiomSpec("continuity", "Continuity", _check_continuity),
        AxiomSpec("boundedness", "Boundedness", _check_boundedness),
        AxiomSpec("symmetry", "Symmetry", _check_symmetry),
        AxiomSpec("pi-symmetry", "Pi-Symmetry", _check_pi_symmetry),
        AxiomSpec("order-preservation", "Order Preservation", _check_order_preservation),
        AxiomSpec(
            "strict-order-preservation",
            "Strict Order Preservation",
            _check_strict_order_preservation,
        ),
        AxiomSpec(
            "strong-order-preservation",
            "Strong Order Preservation",
            _check_strong_order_preservation,
        ),
        AxiomSpec(
            "pi-order-preservation",
            "Pi-Order Preservation",
            _check_pi_order_preservation,
        ),
        AxiomSpec(
            "group-productivity-monotonicity",
            "Group Prod. Mono.",
            _check_group_mono,
        ),
        AxiomSpec(
            "individual-productivity-monotonicity",
            "Individual Prod. Mono.",
            _check_individual_mono,
        ),
        AxiomSpec(
            "strict-individual-productivity-monotonicity",
            "Strict Individual Prod. Mono.",
            _check_strict_individual_mono,
        ),
        AxiomSpec(
            "strong-individual-productivity-monotonicity",
            "Strong Individual Prod. Mono.",
            _check_strong_individual_mono,
        ),
        AxiomSpec("constant-productivity", "Constant Productivity", _check_constant_productivity),
        AxiomSpec("trivialness", "Trivialness", _check_trivialness),
        AxiomSpec("balanced-impact", "Balanced Impact", _check_balanced_impact),
        AxiomSpec("consistency", "Consistency", _check_consistency),
        AxiomSpec("weak-consistency", "Weak Consistency", _check_weak_consistency),
        AxiomSpec("independence-of-null-workers", "Ind. Null Workers", _check_null_workers),
        AxiomSpec("no-harm-from-hiring", "No Harm from Hiring", _check_no_harm),
        AxiomSpec("solidarity-in-hiring", "Solidarity in Hiring", _check_solidarity),
        AxiomSpec("independence-of-null-tasks", "Ind. Null Tasks", _check_null_tasks),
        AxiomSpec(
            "independence-of-unassigned-tasks",
            "Ind. Unassigned Tasks",
            _check_unassigned_tasks,
        ),
        AxiomSpec("additivity", "Additivity", _check_additivity),
        AxiomSpec("weak-additivity", "Weak Additivity", _check_weak_additivity),
        AxiomSpec("homogeneity", "Homogeneity", _check_homogeneity),
    )
}

AXIOM_ORDER: tuple[str, ...] = tuple(AXIOMS)


def axiom_label(name: str) -> str:
    return AXIOMS[name].label


def check(rule: Rule, axiom: str, instance: AxiomInstance) -> Verdict:
    """Evaluate one axiom on one instance; exact, no tolerance anywhere."""
    if axiom not in AXIOMS:
        raise KeyError(f"unknown axiom {axiom!r}")
    try:
        ok, detail = AXIOMS[axiom].checker(rule, instance)
    except RuleUndefined as exc:
        return Verdict(
            status=UNDEFINED,
            rule=rule.name,
            axiom=axiom,
            detail=str(exc),
            instance=instance,
        )
    return Verdict(
        status=HOLDS if ok else VIOLATED,
        rule=rule.name,
        axiom=axiom,
        detail=detail,
        instance=instance,
    )
