"""Exact compensation rules for worker/task assignment problems.

Solves the worker-to-task optimal assignment problem exactly (all ties
enumerated), computes a family of compensation rules over the result,
and machine-checks which fairness axioms each rule satisfies, with a
seeded falsifier and a catalog of replayable counterexamples.
"""

from .core import (
    DEFAULT_GRID,
    InvalidProblem,
    ParseError,
    Problem,
    ProfileSummary,
    Rational,
    Solution,
    decimal_rational,
    generate,
    parse_rational,
    problem,
    render_rational,
    restrict,
    summarize,
    trivial_problem,
    validate,
)
from .assignment import (
    Assignment,
    EnumerationCapExceeded,
    OptimalSet,
    assigned_task_set,
    enumerate_optimal,
    optimal_value,
    perturb_to_unique,
    reduced_problem,
)
from .coalition import CoalitionTable, all_coalitions, char_value, marginal_contribution
from .rules import (
    PARAMETRIC_BUILTINS,
    RULES,
    LambdaResult,
    ParametricFn,
    Rule,
    RuleUndefined,
    compensate,
    egalitarian,
    ic_choice,
    ic_choice_rule,
    ic_priority,
    ic_priority_rule,
    individual_contribution,
    marginal_egalitarian,
    parametric_rule,
    prop_avg,
    prop_marginal,
    prop_max,
    shapley,
    solve_lambda,
)
from .axioms import AXIOM_ORDER, AXIOMS, AxiomInstance, InstanceShapeError, Verdict, check
from .falsifier import falsify, generate_instance, planted_tie_problem, random_problem
from .fixtures import Fixture, fixtures, fixtures_for
from .table import EXPECTED_MATRIX, TableReport, table_report

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
