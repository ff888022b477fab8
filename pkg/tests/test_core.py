import json
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from faircomp import (
    DEFAULT_GRID,
    InvalidProblem,
    ParseError,
    Problem,
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


class TestParseRational:
    def test_decimal_is_exact(self):
        assert parse_rational("4.25") == F(17, 4)

    def test_integer(self):
        assert parse_rational("3") == F(3)

    def test_fraction_reduces_like_gcd(self):
        # independent oracle: reduce with math.gcd directly
        num, den = 11550, 67
        g = math.gcd(num, den)
        assert parse_rational("11550/67") == F(num // g, den // g)
        big_n, big_d = 2**67 * 3 * 5, 2**65 * 9
        g = math.gcd(big_n, big_d)
        parsed = parse_rational(f"{big_n}/{big_d}")
        assert (parsed.numerator, parsed.denominator) == (big_n // g, big_d // g)

    def test_negative_decimal(self):
        assert parse_rational("-0.5") == F(-1, 2)

    @pytest.mark.parametrize("bad", ["", "1/0", "1e3", "4.2.5", "one", "1/2/3", "nan"])
    def test_malformed(self, bad):
        with pytest.raises(ParseError):
            parse_rational(bad)

    @given(num=st.integers(-10**9, 10**9), den=st.integers(1, 10**9))
    @settings(max_examples=80, derandomize=True, deadline=None)
    def test_render_roundtrip(self, num, den):
        value = F(num, den)
        assert parse_rational(render_rational(value)) == value


class TestDecimalRendering:
    def test_repeating(self):
        assert decimal_rational(F(5, 3)) == "1.666667"

    def test_exact(self):
        assert decimal_rational(F(17, 4)) == "4.250000"

    def test_negative(self):
        assert decimal_rational(F(-1, 2)) == "-0.500000"

    def test_zero(self):
        assert decimal_rational(F(0)) == "0.000000"


class TestValidate:
    def test_ok(self):
        assert validate(problem([[1, 2], [0, 3]])) == []

    def test_more_workers_than_tasks(self):
        bad = Problem((1, 2, 3), (1, 2), ((F(0),) * 2,) * 3)
        assert any("task count" in v for v in validate(bad))

    def test_negative_entry(self):
        bad = problem([["-1", 0], [0, 0]])
        assert any("nonnegativity" in v for v in validate(bad))

    def test_structural_mismatch_rejected_at_construction(self):
        with pytest.raises(ValueError):
            Problem((1, 2), (1, 2), ((F(1), F(2)),))


class TestSummarize:
    def test_constant_row(self):
        p = problem([[1, 1, 1], [2, 1, 0], [2, 0, 0]])
        s = summarize(p, 1)
        assert (s.mean, s.maximum, s.minimum) == (F(1), F(1), F(1))

    def test_spread_row(self):
        p = problem([[1, 1, 1], [2, 1, 0], [2, 0, 0]])
        s = summarize(p, 2)
        assert (s.mean, s.maximum, s.minimum) == (F(1), F(2), F(0))

    def test_mean_of_three(self):
        p = problem([[2, 0, 1], [0, 1, 0]])
        assert summarize(p, 1).mean == F(1)

    def test_unknown_worker(self):
        with pytest.raises(KeyError):
            summarize(problem([[1]]), 9)


class TestRestrict:
    def test_drop_worker(self):
        p = problem([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        q = restrict(p, (1, 2), p.tasks)
        assert q.workers == (1, 2) and q.tasks == (1, 2, 3)
        assert q.matrix == p.matrix[:2]

    def test_drop_null_task(self):
        p = problem([[2, 1, 0], [1, 0, 0]])
        q = restrict(p, p.workers, (1, 2))
        assert q.tasks == (1, 2)
        assert q.row(1) == (F(2), F(1))

    def test_workers_then_tasks_commutes(self):
        p = problem([[1, 2, 3, 4], [5, 6, 7, 8], [9, 1, 2, 3]])
        first = restrict(restrict(p, (1, 3), p.tasks), (1, 3), (2, 3, 4))
        second = restrict(restrict(p, p.workers, (2, 3, 4)), (1, 3), (2, 3, 4))
        assert first == second

    def test_idempotent(self):
        p = problem([[1, 2, 3], [4, 5, 6]])
        q = restrict(p, (1, 2), (1, 3))
        assert restrict(q, (1, 2), (1, 3)) == q

    def test_cardinality_violation(self):
        p = problem([[1, 2, 3], [4, 5, 6]])
        with pytest.raises(InvalidProblem):
            restrict(p, (1, 2), (1,))

    def test_unknown_labels(self):
        with pytest.raises(KeyError):
            restrict(problem([[1, 2]]), (7,), (1, 2))


class TestGenerate:
    def test_deterministic_per_seed(self):
        assert generate(1, (2, 2)) == generate(1, (2, 2))

    def test_valid(self):
        assert validate(generate(2, (3, 3))) == []

    def test_entries_come_from_grid(self):
        p = generate(5, (3, 4))
        grid = set(DEFAULT_GRID)
        assert all(v in grid for row in p.matrix for v in row)

    def test_seeds_differ(self):
        assert generate(1, (3, 4)) != generate(2, (3, 4))

    def test_shape_violation(self):
        with pytest.raises(InvalidProblem):
            generate(0, (3, 2))

    def test_trivial_mode(self):
        p = trivial_problem((1, 2), 2)
        assert p.matrix == ((F(1), F(1)), (F(2), F(2)))


class TestProblemJson:
    SCHEMA_EXAMPLE = {
        "workers": [1, 2],
        "tasks": [1, 2, 3],
        "productivity": [["2", "0", "1"], ["0", "1", "0"]],
    }

    def test_schema_example(self):
        p = Problem.from_json(json.dumps(self.SCHEMA_EXAMPLE))
        assert p.value(1, 3) == F(1)
        assert p.value(2, 2) == F(1)

    def test_roundtrip(self):
        p = problem([["1/3", "0.5"], [2, 0]])
        assert Problem.from_json(p.to_json()) == p

    def test_unsorted_labels_are_canonicalized(self):
        data = {
            "workers": [2, 1],
            "tasks": [1, 2],
            "productivity": [["9", "8"], ["1", "2"]],
        }
        p = Problem.from_json(json.dumps(data))
        assert p.workers == (1, 2)
        assert p.row(2) == (F(9), F(8))

    def test_duplicate_labels(self):
        data = {"workers": [1, 1], "tasks": [1, 2], "productivity": [["1", "2"]] * 2}
        with pytest.raises(ParseError):
            Problem.from_json(json.dumps(data))

    def test_ragged_matrix(self):
        data = {"workers": [1], "tasks": [1, 2], "productivity": [["1"]]}
        with pytest.raises(ParseError):
            Problem.from_json(json.dumps(data))


class TestMatrixOps:
    def test_scale(self):
        p = problem([[1, 2], [3, 4]])
        assert p.scale(F(1, 2)).row(2) == (F(3, 2), F(2))

    def test_add(self):
        p = problem([[1, 2], [3, 4]])
        q = problem([[1, 0], [0, 1]])
        assert p.add(q).matrix == ((F(2), F(2)), (F(3), F(5)))

    def test_add_shape_mismatch(self):
        with pytest.raises(ValueError):
            problem([[1, 2]]).add(problem([[1, 2], [3, 4]]))

    def test_replace_row(self):
        p = problem([[1, 2], [3, 4]])
        q = p.replace_row(2, ("1/2", 0))
        assert q.row(2) == (F(1, 2), F(0))
        assert p.row(2) == (F(3), F(4))
