"""Compensation rules: how to split the maximum output among the workers.

Seven concrete rules are provided (equal split, Shapley value of the
induced coalition game, own contribution averaged over optimal
assignments, three proportional splits, and marginal contribution plus
an equal surplus share), together with the parametric family and the
priority/choice refinements of the contribution rule.

Every rule returns a :class:`~faircomp.core.Solution` that exhausts the
maximum output exactly.  The proportional-to-marginal rule is the one
partial rule: when every marginal contribution is zero but output is
positive it has no value, and :class:`RuleUndefined` is raised rather
than inventing a fallback.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, Mapping, Sequence

from .core import Problem, Solution, require_valid, summarize
from .assignment import Assignment, enumerate_optimal, optimal_value
from .coalition import all_coalitions, marginal_contribution

__all__ = [
    "Rule",
    "RuleUndefined",
    "NonConvergence",
    "ParametricFn",
    "LambdaResult",
    "RULES",
    "RULE_ORDER",
    "compensate",
    "egalitarian",
    "shapley",
    "individual_contribution",
    "prop_avg",
    "prop_max",
    "prop_marginal",
    "marginal_egalitarian",
    "solve_lambda",
    "parametric_rule",
    "ic_priority",
    "ic_priority_rule",
    "ic_choice",
    "ic_choice_rule",
    "first_in_canonical_order",
    "last_in_canonical_order",
    "PARAMETRIC_BUILTINS",
    "check_parametric_conditions",
    "marginal_vector",
]


class RuleUndefined(ValueError):
    """The rule has no value on this problem (division by a zero aggregate)."""


class NonConvergence(RuntimeError):
    """The parametric budget equation did not converge within the step budget."""


@dataclass(frozen=True)
class Rule:
    """A named compensation rule; callable on a problem."""

    name: str
    label: str
    fn: Callable[[Problem], Solution] = field(compare=False)

    def __call__(self, prob: Problem) -> Solution:
        return self.fn(prob)


def _pay(amounts: Mapping[int, Fraction]) -> Solution:
    sol = Solution(amounts)
    assert all(v >= 0 for _, v in sol), "negative compensation"
    return sol


def egalitarian(prob: Problem) -> Solution:
    """Everyone receives the same share of the maximum output."""
    require_valid(prob)
    share = optimal_value(prob) / len(prob.workers)
    return _pay({w: share for w in prob.workers})


@lru_cache(maxsize=64)
def _shapley_weights(n: int) -> tuple[Fraction, ...]:
    fact = [factorial(k) for k in range(n + 1)]
    return tuple(Fraction(fact[s] * fact[n - s - 1], fact[n]) for s in range(n))


def shapley(prob: Problem) -> Solution:
    """Average marginal contribution over all orderings of the workers."""
    table = all_coalitions(prob)
    n = len(prob.workers)
    weights = _shapley_weights(n)
    pay: dict[int, Fraction] = {}
    for i, w in enumerate(prob.workers):
        bit = 1 << i
        total = Fraction(0)
        for mask in range(1 << n):
            if mask & bit:
                continue
            total += weights[mask.bit_count()] * (
                table.values[mask | bit] - table.values[mask]
            )
        pay[w] = total
    return _pay(pay)


def individual_contribution(prob: Problem) -> Solution:
    """Own productivity at the assigned task, averaged over all optima."""
    opt = enumerate_optimal(prob)
    count = len(opt.assignments)
    pay = {
        w: sum((prob.value(w, a(w)) for a in opt.assignments), Fraction(0)) / count
        for w in prob.workers
    }
    return _pay(pay)


def _proportional(prob: Problem, weight_of: Callable[[int], Fraction]) -> Solution:
    total = optimal_value(prob)
    if total == 0:
        return _pay({w: Fraction(0) for w in prob.workers})
    weights = {w: weight_of(w) for w in prob.workers}
    denom = sum(weights.values(), Fraction(0))
    if denom == 0:
        raise RuleUndefined("every weight is zero while output is positive")
    scale = total / denom
    return _pay({w: scale * weights[w] for w in prob.workers})


def prop_avg(prob: Problem) -> Solution:
    """Split proportionally to each worker's average productivity."""
    require_valid(prob)
    return _proportional(prob, lambda w: summarize(prob, w).mean)


def prop_max(prob: Problem) -> Solution:
    """Split proportionally to each worker's maximum productivity."""
    require_valid(prob)
    return _proportional(prob, lambda w: summarize(prob, w).maximum)


def marginal_vector(prob: Problem) -> dict[int, Fraction]:
    return {w: marginal_contribution(prob, w) for w in prob.workers}


def prop_marginal(prob: Problem) -> Solution:
    """Split proportionally to marginal contributions.

    Undefined when all marginal contributions vanish but output is positive.
    """
    require_valid(prob)
    delta = marginal_vector(prob)
    return _proportional(prob, lambda w: delta[w])


def marginal_egalitarian(prob: Problem) -> Solution:
    """Marginal contribution plus an equal share of the remaining surplus."""
    require_valid(prob)
    total = optimal_value(prob)
    delta = marginal_vector(prob)
    surplus = (total - sum(delta.values(), Fraction(0))) / len(prob.workers)
    return _pay({w: delta[w] + surplus for w in prob.workers})


# -- parametric family -------------------------------------------------------


@dataclass(frozen=True)
class ParametricFn:
    """A budget-sharing function f(profile, lambda).

    ``coefficient`` marks the linear families f = lambda * g(profile); for
    those the budget equation is solved in closed form, exactly.  Other
    functions are solved by doubling plus bisection and the result is
    flagged approximate.
    """

    name: str
    fn: Callable[[tuple[Fraction, ...], Fraction], Fraction] = field(compare=False)
    coefficient: Callable[[tuple[Fraction, ...]], Fraction] | None = field(
        default=None, compare=False
    )

    def __call__(self, profile: tuple[Fraction, ...], lam: Fraction) -> Fraction:
        return self.fn(profile, lam)


def _mean(profile: tuple[Fraction, ...]) -> Fraction:
    return sum(profile, Fraction(0)) / len(profile)


PARAMETRIC_BUILTINS: dict[str, ParametricFn] = {
    "const": ParametricFn("const", lambda p, lam: lam, lambda p: Fraction(1)),
    "mean": ParametricFn("mean", lambda p, lam: lam * _mean(p), _mean),
    "max": ParametricFn("max", lambda p, lam: lam * max(p), lambda p: max(p)),
    "sum": ParametricFn(
        "sum",
        lambda p, lam: lam * sum(p, Fraction(0)),
        lambda p: sum(p, Fraction(0)),
    ),
}


@dataclass(frozen=True)
class LambdaResult:
    lam: Fraction
    solution: Solution
    exact: bool


# Residual tolerance for bisection on user-supplied functions; linear
# families never take this path.
_RESIDUAL_SHIFT = 64
_MAX_DOUBLINGS = 128
_MAX_BISECTIONS = 512


def solve_lambda(fn: ParametricFn, prob: Problem) -> LambdaResult:
    """Find lambda with the shares summing to the maximum output exactly.

    Closed form (exact) for linear families; interval doubling plus
    bisection for general functions, stopping when the absolute residual
    drops to y * 2**-64.
    """
    require_valid(prob)
    total = optimal_value(prob)
    profiles = {w: prob.row(w) for w in prob.workers}

    if total == 0:
        zero = Fraction(0)
        return LambdaResult(zero, _pay({w: zero for w in prob.workers}), True)

    if fn.coefficient is not None:
        denom = sum((fn.coefficient(profiles[w]) for w in prob.workers), Fraction(0))
        if denom == 0:
            raise RuleUndefined("all coefficients vanish while output is positive")
        lam = total / denom
        return LambdaResult(lam, _pay({w: fn(profiles[w], lam) for w in prob.workers}), True)

    def share_sum(lam: Fraction) -> Fraction:
        return sum((fn(profiles[w], lam) for w in prob.workers), Fraction(0))

    lo, hi = Fraction(0), Fraction(1)
    steps = 0
    while share_sum(hi) < total:
        lo, hi = hi, hi * 2
        steps += 1
        if steps > _MAX_DOUBLINGS:
            raise NonConvergence("no bracketing interval found for lambda")

    tolerance = total / (1 << _RESIDUAL_SHIFT)
    lam = hi
    for _ in range(_MAX_BISECTIONS):
        mid = (lo + hi) / 2
        value = share_sum(mid)
        if abs(value - total) <= tolerance:
            lam = mid
            break
        if value < total:
            lo = mid
        else:
            hi = mid
    else:
        raise NonConvergence("bisection did not reach the residual tolerance")
    return LambdaResult(lam, _pay({w: fn(profiles[w], lam) for w in prob.workers}), False)


def check_parametric_conditions(
    fn: ParametricFn,
    profiles: Sequence[tuple[Fraction, ...]],
    lambdas: Sequence[Fraction],
) -> list[str]:
    """Sampled check of the family's conditions; returns the violations found.

    Checks f(profile, 0) = 0, weak monotonicity along the sampled lambda
    grid, and growth on non-null profiles.  A sampling check cannot prove
    the conditions, only refute them.
    """
    problems = []
    grid = sorted(lambdas)
    for profile in profiles:
        if fn(profile, Fraction(0)) != 0:
            problems.append(f"f({profile}, 0) != 0")
        values = [fn(profile, lam) for lam in grid]
        if any(b < a for a, b in zip(values, values[1:])):
            problems.append(f"not weakly monotone in lambda on {profile}")
        if any(v != 0 for v in profile):
            top = fn(profile, grid[-1] * 1024)
            if top <= values[-1] and values[-1] == values[0]:
                problems.append(f"appears bounded on non-null profile {profile}")
    return problems


def parametric_rule(fn: ParametricFn) -> Rule:
    name = f"par-{fn.name}"
    return Rule(
        name=name,
        label=f"Parametric[{fn.name}]",
        fn=lambda prob, _f=fn: solve_lambda(_f, prob).solution,
    )


# -- refinements of the contribution rule ------------------------------------


def ic_priority(order: Sequence[int], prob: Problem) -> Solution:
    """Refine the optimal set by a strict priority order over the workers.

    The highest-priority worker keeps only the optima maximizing their own
    productivity, then the next worker refines further, and so on.  By
    construction every surviving assignment yields the same pay for every
    worker; that agreement is asserted rather than assumed.
    """
    require_valid(prob)
    ranking = [w for w in order if w in prob.workers]
    if set(ranking) != set(prob.workers):
        raise ValueError("priority order does not cover the worker set")
    survivors = list(enumerate_optimal(prob).assignments)
    for w in ranking:
        best = max(prob.value(w, a(w)) for a in survivors)
        survivors = [a for a in survivors if prob.value(w, a(w)) == best]
    vectors = {tuple(prob.value(w, a(w)) for w in prob.workers) for a in survivors}
    if len(vectors) != 1:
        raise RuntimeError("surviving optima disagree on pay; refinement is broken")
    chosen = survivors[0]
    return _pay({w: prob.value(w, chosen(w)) for w in prob.workers})


def ic_priority_rule(order: Sequence[int]) -> Rule:
    tag = "<".join(str(w) for w in order)
    return Rule(
        name=f"IC[{tag}]",
        label=f"Contribution with priority {tag}",
        fn=lambda prob, _o=tuple(order): ic_priority(_o, prob),
    )


def first_in_canonical_order(assignments: Sequence[Assignment]) -> Assignment:
    return assignments[0]


def last_in_canonical_order(assignments: Sequence[Assignment]) -> Assignment:
    return assignments[-1]


def ic_choice(chooser: Callable[[Sequence[Assignment]], Assignment],
              prob: Problem) -> Solution:
    """Pay own productivity under the single optimum picked by a choice function."""
    require_valid(prob)
    assignments = enumerate_optimal(prob).assignments
    chosen = chooser(assignments)
    if chosen not in assignments:
        raise ValueError("chooser returned an assignment outside the optimal set")
    return _pay({w: prob.value(w, chosen(w)) for w in prob.workers})


def ic_choice_rule(
    chooser: Callable[[Sequence[Assignment]], Assignment] = first_in_canonical_order,
    tag: str = "first",
) -> Rule:
    return Rule(
        name=f"IC[c:{tag}]",
        label=f"Contribution with choice {tag}",
        fn=lambda prob, _c=chooser: ic_choice(_c, prob),
    )


# -- registry ---------------------------------------------------------------

RULES: dict[str, Rule] = {
    "E": Rule("E", "Egalitarian", egalitarian),
    "SV": Rule("SV", "Shapley Value", shapley),
    "IC": Rule("IC", "Individual Contribution", individual_contribution),
    "PAv": Rule("PAv", "Proportional to Average", prop_avg),
    "Pmax": Rule("Pmax", "Proportional to Maximum", prop_max),
    "PDelta": Rule("PDelta", "Proportional to Marginal", prop_marginal),
    "EDelta": Rule("EDelta", "Marginal Egalitarian", marginal_egalitarian),
}

RULE_ORDER: tuple[str, ...] = tuple(RULES)

_ALIASES = {
    "e": "E",
    "sv": "SV",
    "ic": "IC",
    "pav": "PAv",
    "pmax": "Pmax",
    "pdelta": "PDelta",
    "edelta": "EDelta",
}


def lookup_rule(name: str) -> Rule:
    if name in RULES:
        return RULES[name]
    key = name.replace("-", "").replace("_", "").lower()
    if key in _ALIASES:
        return RULES[_ALIASES[key]]
    if key.startswith("par"):
        fn_name = key[3:].strip("-_")
        if fn_name in PARAMETRIC_BUILTINS:
            return parametric_rule(PARAMETRIC_BUILTINS[fn_name])
    raise KeyError(f"unknown rule {name!r}")


def compensate(rule: Rule | str, prob: Problem) -> Solution:
    """Evaluate a rule (by object or name) on a problem."""
    selected = rule if isinstance(rule, Rule) else lookup_rule(rule)
    return selected(prob)
