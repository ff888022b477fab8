"""Acceptance suite: one test per release criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines as they pass.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction as F
from itertools import combinations

import pytest

from faircomp import (
    PARAMETRIC_BUILTINS,
    RULES,
    enumerate_optimal,
    falsify,
    generate,
    ic_choice_rule,
    ic_priority_rule,
    individual_contribution,
    marginal_contribution,
    optimal_value,
    parametric_rule,
    perturb_to_unique,
    planted_tie_problem,
    problem,
    prop_avg,
    prop_marginal,
    prop_max,
    restrict,
    shapley,
    summarize,
    table_report,
)
from faircomp.falsifier import random_problem
from bruteforce import brute_force, solver_assignments_as_tuples


def _verdict(name: str, ok: bool, extra: str = ""):
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] {name}" + (f" ({extra})" if extra else ""))
    assert ok, name


def _problems(count: int, seed_base: int = 0, max_workers: int = 4, max_tasks: int = 5):
    shapes = [
        (n, m)
        for n in range(1, max_workers + 1)
        for m in range(n, max_tasks + 1)
    ]
    return [
        generate(seed_base + k, shapes[k % len(shapes)]) for k in range(count)
    ]


class TestCriterion1ExactExamples:
    def test_exact_example_suite(self):
        start = time.monotonic()

        ex2 = problem([[6, 4], [3, 1]])
        assert individual_contribution(ex2).as_dict() == {1: F(5), 2: F(2)}

        ex4 = problem([[4, 1], [5, 3]])
        assert individual_contribution(ex4).as_dict() == {1: F(4), 2: F(3)}

        # raising worker 2's profile from (4,0) to (5,3) drops their pay 4 -> 3
        lowered = ex4.replace_row(2, (4, 0))
        assert individual_contribution(lowered)[2] == F(4)
        assert individual_contribution(ex4)[2] == F(3)

        ex6 = problem([[4, 1, 3], [4, 2, 1], [1, 1, 4]])
        pair_alone = individual_contribution(restrict(ex6, (1, 2), ex6.tasks))
        assert pair_alone.as_dict() == {1: F(3), 2: F(4)}
        within_group = individual_contribution(ex6)
        assert (within_group[1], within_group[2]) == (F(4), F(2))

        ex7 = problem([[2, 1, 0], [1, 0, 0]])
        assert individual_contribution(ex7).as_dict() == {1: F(5, 3), 2: F(1, 3)}
        trimmed = restrict(ex7, ex7.workers, (1, 2))
        assert individual_contribution(trimmed).as_dict() == {1: F(3, 2), 2: F(1, 2)}

        ex8 = problem([[2, 1], [2, 1]])
        ex8_other = problem([[1, 0], [0, 1]])
        a = individual_contribution(ex8).as_dict()
        b = individual_contribution(ex8_other).as_dict()
        combined = individual_contribution(ex8.add(ex8_other)).as_dict()
        assert a == {1: F(3, 2), 2: F(3, 2)} and b == {1: F(1), 2: F(1)}
        assert combined == {1: F(3), 2: F(2)}
        assert {w: a[w] + b[w] for w in a} != combined

        ex9 = problem([[3, 0], [2, 1]])
        ex9_other = problem([[1, 0], [0, 1]])
        sva = shapley(ex9).as_dict()
        svb = shapley(ex9_other).as_dict()
        svc = shapley(ex9.add(ex9_other)).as_dict()
        assert sva == {1: F(5, 2), 2: F(3, 2)} and svb == {1: F(1), 2: F(1)}
        assert svc == {1: F(4), 2: F(2)}
        assert {w: sva[w] + svb[w] for w in sva} != svc

        a02b = problem([[1, 1, 1], [2, 1, 0], [2, 0, 0]])
        assert prop_avg(a02b)[1] == F(3, 2)
        assert prop_max(a02b)[1] == F(4, 5)
        assert prop_marginal(a02b)[1] == F(4, 3)
        assert RULES["EDelta"](a02b)[1] == F(4, 3)

        a04 = problem([[2, 1, 1], [1, 2, 1], [3, 1, 1]])
        assert shapley(a04).as_dict() == {1: F(3, 2), 2: F(2), 3: F(5, 2)}
        assert individual_contribution(a04).as_dict() == {1: F(1), 2: F(2), 3: F(3)}
        assert prop_marginal(a04).as_dict() == {1: F(6, 5), 2: F(12, 5), 3: F(12, 5)}
        assert RULES["EDelta"](a04).as_dict() == {1: F(4, 3), 2: F(7, 3), 3: F(7, 3)}

        a13 = problem([[2, 1], [2, 0]])
        for rule in ("SV", "Pmax", "PDelta", "EDelta"):
            assert RULES[rule](a13).as_dict() == {1: F(3, 2), 2: F(3, 2)}, rule

        a21a = problem([[186, 110], [100, 0]])
        assert prop_marginal(a21a)[1] == F(11550, 67)

        a49 = problem([[2, 0, 1], [0, 1, 0]])
        assert prop_avg(a49).as_dict() == {1: F(9, 4), 2: F(3, 4)}
        assert prop_avg(restrict(a49, a49.workers, (1, 2))).as_dict() == {
            1: F(2),
            2: F(1),
        }

        elapsed = time.monotonic() - start
        _verdict("criterion 1: exact example suite", elapsed < 1.0, f"{elapsed:.2f}s")


class TestCriterion2TableRegression:
    def test_full_table_matches_expected_matrix(self):
        start = time.monotonic()
        report = table_report(budget=1000, seed=0)
        elapsed = time.monotonic() - start
        mismatches = report.mismatches
        for cell in report.cells:
            if cell.symbol == "-":
                assert cell.evidence.startswith(("fixture:", "trial:"))
        _verdict(
            "criterion 2: verdict table regression",
            not mismatches and elapsed < 60.0,
            f"{len(report.cells)} cells, {elapsed:.1f}s",
        )


class TestCriterion3OracleEquivalence:
    def test_solver_matches_brute_force_on_500_problems(self):
        problems = _problems(500)
        for p in problems:
            value, champions = brute_force(p)
            opt = enumerate_optimal(p)
            assert opt.value == value
            assert solver_assignments_as_tuples(p, opt) == champions
        _verdict("criterion 3: solver equals brute-force oracle", True, "500 problems")


@pytest.fixture(scope="module")
def problems():
    return _problems(500, seed_base=10_000)


class TestCriterion4IdentitySuites:

    def test_balanced_impact_identity_for_shapley(self, problems):
        for p in problems:
            if len(p.workers) < 2:
                continue
            sol = shapley(p)
            removed = {w: shapley(p.without_worker(w)) for w in p.workers}
            for i, j in combinations(p.workers, 2):
                assert sol[i] - removed[j][i] == sol[j] - removed[i][j]
        _verdict("criterion 4a: balanced impact identity", True)

    def test_consistency_identity_for_contribution(self, problems):
        rng = random.Random(41)
        for p in problems:
            if len(p.workers) < 2:
                continue
            opt = enumerate_optimal(p)
            sol = individual_contribution(p)
            size = rng.randint(1, len(p.workers) - 1)
            members = tuple(sorted(rng.sample(p.workers, size)))
            acc = {w: F(0) for w in members}
            for a in opt.assignments:
                reduced = individual_contribution(
                    restrict(p, members, a.image(members))
                )
                for w in members:
                    acc[w] += reduced[w]
            for w in members:
                assert sol[w] == acc[w] / len(opt.assignments)
        _verdict("criterion 4b: consistency averaging identity", True)

    def test_both_rules_exhaust_output(self, problems):
        for p in problems:
            y = optimal_value(p)
            assert shapley(p).total() == y
            assert individual_contribution(p).total() == y
        _verdict("criterion 4c: Shapley and contribution sums equal output", True)

    def test_marginal_contribution_bounds(self, problems):
        for p in problems:
            for w in p.workers:
                s = summarize(p, w)
                assert s.minimum <= marginal_contribution(p, w) <= s.maximum
        _verdict("criterion 4d: marginal contributions within profile bounds", True)

    def test_bipartition_submodularity(self, problems):
        for p in problems:
            n = len(p.workers)
            if n < 2:
                continue
            total = optimal_value(p)
            for mask in range(1, (1 << n) - 1):
                left = tuple(w for k, w in enumerate(p.workers) if mask & (1 << k))
                right = tuple(w for k, w in enumerate(p.workers) if not mask & (1 << k))
                if left > right:
                    continue
                split = optimal_value(restrict(p, left, p.tasks)) + optimal_value(
                    restrict(p, right, p.tasks)
                )
                assert split >= total
        _verdict("criterion 4e: bipartition submodularity", True)

    def test_shared_optimum_additivity(self, problems):
        for k, p in enumerate(problems):
            a = enumerate_optimal(p).assignments[0]
            raw = generate(50_000 + k, (len(p.workers), len(p.tasks)))
            along = sum((raw.value(w, a(w)) for w in raw.workers), F(0))
            bump = optimal_value(raw) - along
            q = problem(
                [
                    [v + bump if a(w) == t else v for t, v in zip(raw.tasks, row)]
                    for w, row in zip(raw.workers, raw.matrix)
                ],
                workers=p.workers,
                tasks=p.tasks,
            )
            first = set(enumerate_optimal(p).assignments)
            second = set(enumerate_optimal(q).assignments)
            assert first & second
            combined = p.add(q)
            assert optimal_value(combined) == optimal_value(p) + optimal_value(q)
            assert set(enumerate_optimal(combined).assignments) == first & second
        _verdict("criterion 4f: shared-optimum additivity of output", True)

    def test_null_worker_independence(self, problems):
        exercised = 0
        for p in problems:
            if len(p.tasks) < len(p.workers) + 1:
                continue  # no task headroom for an extra worker
            spare = max(p.workers) + 1
            padded = problem(
                [list(row) for row in p.matrix] + [[0] * len(p.tasks)],
                workers=list(p.workers) + [spare],
                tasks=p.tasks,
            )
            for rule in (shapley, individual_contribution):
                before = rule(p)
                after = rule(padded)
                assert all(after[w] == before[w] for w in p.workers)
                assert after[spare] == F(0)
            exercised += 1
        _verdict(
            "criterion 4g: null workers never move other pay",
            exercised >= 200,
            f"{exercised} padded problems",
        )

    def test_hiring_monotonicity_for_shapley(self, problems):
        rng = random.Random(99)
        for p in problems:
            if len(p.workers) < 2:
                continue
            size = rng.randint(1, len(p.workers) - 1)
            members = tuple(sorted(rng.sample(p.workers, size)))
            grand = shapley(p)
            alone = shapley(restrict(p, members, p.tasks))
            for w in members:
                assert grand[w] <= alone[w]
        _verdict("criterion 4h: hiring never raises a Shapley share", True)

    def test_weak_additivity_of_contribution(self, problems):
        alphas = [F(1, 2), F(2), F(3, 2), F(1, 3)]
        for k, p in enumerate(problems):
            alpha = alphas[k % len(alphas)]
            shift = F(k % 3)
            q = problem(
                [[alpha * v + shift for v in row] for row in p.matrix],
                workers=p.workers,
                tasks=p.tasks,
            )
            assert set(enumerate_optimal(q).assignments) == set(
                enumerate_optimal(p).assignments
            )
            a = individual_contribution(p)
            b = individual_contribution(q)
            combined = individual_contribution(p.add(q))
            assert all(combined[w] == a[w] + b[w] for w in p.workers)
        _verdict("criterion 4i: weak additivity of the contribution rule", True)

    def test_homogeneity_of_every_rule(self, problems):
        from faircomp import RuleUndefined

        alphas = [F(1, 3), F(2), F(5, 2), F(3, 4)]
        for k, p in enumerate(problems):
            alpha = alphas[k % len(alphas)]
            scaled = p.scale(alpha)
            for rule in RULES.values():
                try:
                    base = rule(p)
                except RuleUndefined:
                    continue
                assert rule(scaled).as_dict() == {
                    w: alpha * v for w, v in base.as_dict().items()
                }
        _verdict("criterion 4j: homogeneity of every rule", True)


class TestCriterion5TieBreaking:
    def test_perturbation_restores_uniqueness(self):
        rng = random.Random(2024)
        EPSILONS = (F(1), F(1, 10), F(1, 1000))
        count = 0
        while count < 200:
            p = planted_tie_problem(rng)
            opt = enumerate_optimal(p)
            assert len(opt.assignments) >= 2
            designated = rng.choice(opt.assignments)
            for eps in EPSILONS:
                bumped = perturb_to_unique(p, designated, eps)
                after = enumerate_optimal(bumped)
                assert after.assignments == (designated,)
            count += 1
        _verdict("criterion 5: tie-breaking perturbation", True, "200 problems x 3 eps")


class TestCriterion6HiringHarm:
    def test_every_efficient_rule_is_falsified(self):
        efficient = list(RULES.values())
        efficient += [parametric_rule(fn) for fn in PARAMETRIC_BUILTINS.values()]
        efficient += [ic_priority_rule((1, 2, 3, 4)), ic_choice_rule()]
        for rule in efficient:
            verdict = falsify(rule, "no-harm-from-hiring", budget=1000, seed=0)
            assert verdict.status == "violated", rule.name
            assert verdict.trials == 1
        _verdict(
            "criterion 6: hiring harms someone under every efficient rule",
            True,
            f"{len(efficient)} rules",
        )


class TestCriterion7Determinism:
    def _run(self, args):
        proc = subprocess.run(
            [sys.executable, "-m", "faircomp.cli", *args],
            capture_output=True,
            check=False,
        )
        return proc.returncode, proc.stdout

    def test_repeated_runs_are_byte_identical(self, tmp_path):
        src = tmp_path / "p.json"
        src.write_text(
            json.dumps(
                {
                    "workers": [1, 2],
                    "tasks": [1, 2, 3],
                    "productivity": [["2", "1", "0"], ["1", "0", "0"]],
                }
            )
        )
        commands = [
            ["solve", str(src), "--format", "json"],
            ["assign", str(src), "--format", "csv"],
            ["axioms", "--rules", "IC,SV", "--axioms",
             "consistency,balanced-impact", "--budget", "40", "--seed", "9"],
            ["table", "--budget", "25", "--format", "json"],
        ]
        for args in commands:
            first_code, first_out = self._run(args)
            second_code, second_out = self._run(args)
            assert first_code == second_code == 0
            assert first_out == second_out
        _verdict("criterion 7: byte-identical reports", True, "4 commands x 2 runs")
