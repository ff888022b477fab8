from fractions import Fraction as F
from itertools import combinations

import pytest

from faircomp import (
    all_coalitions,
    char_value,
    generate,
    marginal_contribution,
    optimal_value,
    problem,
    restrict,
    summarize,
)
from bruteforce import brute_coalition_value

EX9 = problem([[3, 0], [2, 1]])
EX4 = problem([[4, 1], [5, 3]])
A02B = problem([[1, 1, 1], [2, 1, 0], [2, 0, 0]])
A21A = problem([[186, 110], [100, 0]])


class TestCharValue:
    def test_singletons_and_grand(self):
        assert char_value(EX9, (1,)) == F(3)
        assert char_value(EX9, (2,)) == F(2)
        assert char_value(EX9, (1, 2)) == F(4)

    def test_empty_coalition(self):
        assert char_value(EX9, ()) == F(0)

    def test_grand_equals_optimal_value(self):
        assert char_value(A02B, A02B.workers) == optimal_value(A02B)

    def test_matches_restrict_composition(self):
        for seed in range(10):
            p = generate(seed, (3, 4))
            for size in (1, 2):
                for combo in combinations(p.workers, size):
                    assert char_value(p, combo) == optimal_value(
                        restrict(p, combo, p.tasks)
                    )

    def test_unknown_member(self):
        with pytest.raises(KeyError):
            char_value(EX9, (7,))


class TestAllCoalitions:
    def test_single_worker(self):
        p = problem([[2, 5, 1]])
        table = all_coalitions(p)
        assert table.of(()) == F(0)
        assert table.of((1,)) == F(5)

    def test_two_workers(self):
        table = all_coalitions(EX4)
        assert table.of(()) == F(0)
        assert table.of((1,)) == F(4)
        assert table.of((2,)) == F(5)
        assert table.of((1, 2)) == F(7)

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_brute_force_and_is_monotone(self, seed):
        p = generate(seed, (3, 4))
        table = all_coalitions(p)
        subsets = [
            tuple(c)
            for size in range(len(p.workers) + 1)
            for c in combinations(p.workers, size)
        ]
        for coalition in subsets:
            assert table.of(coalition) == brute_coalition_value(p, coalition)
        for small in subsets:
            for big in subsets:
                if set(small) <= set(big):
                    assert table.of(small) <= table.of(big)

    def test_refuses_oversized_groups(self):
        big = problem([[0] * 17 for _ in range(17)])
        with pytest.raises(ValueError):
            all_coalitions(big)


class TestMarginalContribution:
    def test_flat_marginals(self):
        assert [marginal_contribution(A02B, w) for w in (1, 2, 3)] == [F(1)] * 3

    def test_large_example(self):
        assert marginal_contribution(A21A, 1) == F(110)
        assert marginal_contribution(A21A, 2) == F(24)

    def test_null_worker(self):
        p = problem([[5, 1], [0, 0]])
        assert marginal_contribution(p, 2) == F(0)

    def test_single_worker_gets_everything(self):
        p = problem([[4, 7]])
        assert marginal_contribution(p, 1) == F(7)

    @pytest.mark.parametrize("seed", range(20))
    def test_profile_bounds_and_budget(self, seed):
        p = generate(seed, (3, 4))
        total = optimal_value(p)
        deltas = {w: marginal_contribution(p, w) for w in p.workers}
        for w in p.workers:
            s = summarize(p, w)
            assert s.minimum <= deltas[w] <= s.maximum
        assert sum(deltas.values(), F(0)) <= total
