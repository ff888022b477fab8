"""Catalog of named stress instances with known verdicts.

Each fixture couples one axiom instance with the rules it defeats and is
replayable: checking the instance against a listed rule must come out
`violated`, deterministically.  The falsifier injects applicable
fixtures as its first trials, so a verdict table never depends on random
search finding a known counterexample.

A fixture whose ``rules`` field is ``None`` applies to every rule; the
only such record is the hiring-harm instance, which defeats any rule
that exhausts the maximum output.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .axioms import AxiomInstance
from .core import problem

__all__ = ["Fixture", "fixtures", "fixtures_for"]


@dataclass(frozen=True)
class Fixture:
    name: str
    axiom: str
    rules: tuple[str, ...] | None  # None: applies to every rule
    instance: AxiomInstance
    expect: str = "violated"


_EX2 = problem([[6, 4], [3, 1]])
_EX2_NEAR = problem([[Fraction(6) - Fraction(1, 10**6), 4], [3, 1]])
_EX4 = problem([[4, 1], [5, 3]])
_EX6 = problem([[4, 1, 3], [4, 2, 1], [1, 1, 4]])
_EX7 = problem([[2, 1, 0], [1, 0, 0]])
_EX8 = problem([[2, 1], [2, 1]])
_EX8_OTHER = problem([[1, 0], [0, 1]])
_EX9 = problem([[3, 0], [2, 1]])
_EX9_OTHER = problem([[1, 0], [0, 1]])
_A02B = problem([[1, 1, 1], [2, 1, 0], [2, 0, 0]])
_A04 = problem([[2, 1, 1], [1, 2, 1], [3, 1, 1]])
_A13 = problem([[2, 1], [2, 0]])
_A21A = problem([[186, 110], [100, 0]])
_A23 = problem([[2, 1], [2, 1]])
_A49 = problem([[2, 0, 1], [0, 1, 0]])
_SOLO = problem([[2, 1]])
_TRIVIAL = problem([[1, 1], [2, 2]])
_NULL_COWORKER = problem([[1, 0], [0, 0]])
_NULL_THIRD = problem([[1, 0, 0], [1, 0, 0], [0, 0, 0]])

# Row-permutation relating the first two workers of _A04.
_A04_PI = ((1, 2), (2, 1), (3, 3))

_EX5_ROW = (Fraction(4), Fraction(0))

_FIXTURES: tuple[Fixture, ...] = (
    Fixture(
        "ex02-continuity",
        "continuity",
        ("IC",),
        AxiomInstance(problem=_EX2, other=_EX2_NEAR),
    ),
    Fixture(
        "ex04-order",
        "order-preservation",
        ("IC",),
        AxiomInstance(problem=_EX4, pair=(2, 1)),
    ),
    Fixture(
        "ex04-strict-order",
        "strict-order-preservation",
        ("E", "IC"),
        AxiomInstance(problem=_EX4, pair=(2, 1)),
    ),
    Fixture(
        "ex04-strong-order",
        "strong-order-preservation",
        ("E", "IC"),
        AxiomInstance(problem=_EX4, pair=(2, 1)),
    ),
    Fixture(
        "a04-pi-symmetry",
        "pi-symmetry",
        ("SV", "IC", "PDelta", "EDelta"),
        AxiomInstance(problem=_A04, pair=(1, 2), permutation=_A04_PI),
    ),
    Fixture(
        "a04-pi-order",
        "pi-order-preservation",
        ("SV", "IC", "PDelta", "EDelta"),
        AxiomInstance(problem=_A04, pair=(1, 2), permutation=_A04_PI),
    ),
    Fixture(
        "ex05-productivity-jump",
        "individual-productivity-monotonicity",
        ("IC",),
        AxiomInstance(problem=_EX4, worker=2, row=_EX5_ROW),
    ),
    Fixture(
        "ex05-strict-jump",
        "strict-individual-productivity-monotonicity",
        ("IC",),
        AxiomInstance(problem=_EX4, worker=2, row=_EX5_ROW),
    ),
    Fixture(
        "ex05-strong-jump",
        "strong-individual-productivity-monotonicity",
        ("IC",),
        AxiomInstance(problem=_EX4, worker=2, row=_EX5_ROW),
    ),
    Fixture(
        "ex05-group-mono",
        "group-productivity-monotonicity",
        ("IC",),
        AxiomInstance(problem=_EX4, other=_EX4.replace_row(2, _EX5_ROW)),
    ),
    Fixture(
        "a15-group-mono-sv",
        "group-productivity-monotonicity",
        ("SV",),
        AxiomInstance(problem=problem([[3, 1], [2, 0]]), other=_A13),
    ),
    Fixture(
        "a15-group-mono-pav",
        "group-productivity-monotonicity",
        ("PAv",),
        AxiomInstance(problem=problem([[1, 0], [1, 1]]), other=problem([[1, 0], [0, 1]])),
    ),
    Fixture(
        "a15-group-mono-shared",
        "group-productivity-monotonicity",
        ("Pmax", "PDelta", "EDelta"),
        AxiomInstance(problem=problem([[2, 0], [2, 1]]), other=problem([[2, 0], [0, 1]])),
    ),
    Fixture(
        "a21a-marginal-jump",
        "individual-productivity-monotonicity",
        ("PDelta",),
        AxiomInstance(problem=_A21A, worker=1, row=(Fraction(185), Fraction(100))),
    ),
    Fixture(
        "a21a-strict-jump",
        "strict-individual-productivity-monotonicity",
        ("PDelta",),
        AxiomInstance(problem=_A21A, worker=1, row=(Fraction(185), Fraction(100))),
    ),
    Fixture(
        "a21a-strong-jump",
        "strong-individual-productivity-monotonicity",
        ("PDelta",),
        AxiomInstance(problem=_A21A, worker=1, row=(Fraction(185), Fraction(100))),
    ),
    Fixture(
        "a23-strong-mono",
        "strong-individual-productivity-monotonicity",
        ("SV", "Pmax", "EDelta"),
        AxiomInstance(problem=_A23, worker=2, row=(Fraction(2), Fraction(0))),
    ),
    Fixture(
        "solo-strong-mono",
        "strong-individual-productivity-monotonicity",
        ("E", "PAv"),
        AxiomInstance(problem=_SOLO, worker=1, row=(Fraction(2), Fraction(0))),
    ),
    Fixture(
        "a13-strong-order",
        "strong-order-preservation",
        ("SV", "Pmax", "PDelta", "EDelta"),
        AxiomInstance(problem=_A13, pair=(1, 2)),
    ),
    Fixture(
        "a02b-bounds",
        "boundedness",
        ("E", "PAv", "Pmax", "PDelta", "EDelta"),
        AxiomInstance(problem=_A02B),
    ),
    Fixture(
        "a02b-constant",
        "constant-productivity",
        ("E", "PAv", "Pmax", "PDelta", "EDelta"),
        AxiomInstance(problem=_A02B, worker=1),
    ),
    Fixture(
        "trivial-split",
        "trivialness",
        ("E",),
        AxiomInstance(problem=_TRIVIAL),
    ),
    Fixture(
        "ex09-balanced-impact",
        "balanced-impact",
        ("E", "IC", "PAv", "Pmax", "PDelta"),
        AxiomInstance(problem=_EX9, pair=(1, 2)),
    ),
    Fixture(
        "a02b-balanced-impact",
        "balanced-impact",
        ("EDelta",),
        AxiomInstance(problem=_A02B, pair=(1, 3)),
    ),
    Fixture(
        "ex04-consistency",
        "consistency",
        ("E", "SV", "PAv", "Pmax", "PDelta", "EDelta"),
        AxiomInstance(problem=_EX4, subgroup=(1,)),
    ),
    Fixture(
        "ex04-weak-consistency",
        "weak-consistency",
        ("E", "SV", "PAv", "Pmax", "PDelta", "EDelta"),
        AxiomInstance(problem=_EX4, subgroup=(1,)),
    ),
    Fixture(
        "null-worker-split",
        "independence-of-null-workers",
        ("E",),
        AxiomInstance(problem=_NULL_COWORKER, worker=2),
    ),
    Fixture(
        "null-worker-surplus",
        "independence-of-null-workers",
        ("EDelta",),
        AxiomInstance(problem=_NULL_THIRD, worker=3),
    ),
    Fixture(
        "ex04-hiring-harm",
        "no-harm-from-hiring",
        None,
        AxiomInstance(problem=_EX4, subgroup=(2,)),
    ),
    Fixture(
        "ex06-solidarity",
        "solidarity-in-hiring",
        ("IC",),
        AxiomInstance(problem=_EX6, subgroup=(1, 2)),
    ),
    Fixture(
        "a40-solidarity",
        "solidarity-in-hiring",
        ("PDelta", "EDelta"),
        AxiomInstance(problem=_A02B, subgroup=(1, 2)),
    ),
    Fixture(
        "ex07-null-task",
        "independence-of-null-tasks",
        ("IC",),
        AxiomInstance(problem=_EX7, task=3),
    ),
    Fixture(
        "a49-unassigned-tasks",
        "independence-of-unassigned-tasks",
        ("PAv",),
        AxiomInstance(problem=_A49, tasks=(1, 2)),
    ),
    Fixture(
        "ex08-additivity",
        "additivity",
        ("IC",),
        AxiomInstance(problem=_EX8, other=_EX8_OTHER),
    ),
    Fixture(
        "ex09-additivity",
        "additivity",
        ("SV", "Pmax", "PDelta", "EDelta"),
        AxiomInstance(problem=_EX9, other=_EX9_OTHER),
    ),
    Fixture(
        "ex09-weak-additivity",
        "weak-additivity",
        ("SV", "Pmax", "PDelta", "EDelta"),
        AxiomInstance(problem=_EX9, other=_EX9_OTHER),
    ),
    Fixture(
        "pav-additivity",
        "additivity",
        ("PAv",),
        AxiomInstance(problem=problem([[2, 2], [1, 0]]), other=problem([[1, 2], [3, 1]])),
    ),
    Fixture(
        "pav-weak-additivity",
        "weak-additivity",
        ("PAv",),
        AxiomInstance(problem=problem([[2, 2], [1, 0]]), other=problem([[1, 2], [3, 1]])),
    ),
)


def fixtures() -> tuple[Fixture, ...]:
    """The full replayable catalog."""
    return _FIXTURES


def fixtures_for(rule_name: str, axiom: str) -> tuple[Fixture, ...]:
    """Fixtures applicable to one (rule, axiom) cell, in catalog order."""
    return tuple(
        f
        for f in _FIXTURES
        if f.axiom == axiom and (f.rules is None or rule_name in f.rules)
    )
