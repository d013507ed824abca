import random
from fractions import Fraction

import pytest

from omac.families import random_oks_instance
from omac.model import InstanceError, additive_instance
from omac.oks import (
    OksInstance,
    alg_omac_beta_expected,
    gen_thm9_lb,
    oks_greedy_step,
    oks_max_step,
    oks_run_greedy,
    oks_run_max,
    oks_value,
    phi_reduction,
    knapsack_lb_items,
)
from omac.oracle import brute_force_opt

F = Fraction
HALF = F(1, 2)


def test_greedy_examples():
    three = OksInstance.from_pairs([(1, "1/4")] * 3, HALF)
    assert len(oks_run_greedy(three, strict=True)) == 1
    assert len(oks_run_greedy(three)) == 2  # 1/4 + 1/4 = 1/2 fits the budget
    heavy = OksInstance.from_pairs([(1, "3/4")], HALF)
    assert oks_greedy_step(heavy, frozenset(), 0) == frozenset()
    two = OksInstance.from_pairs([(1, "1/4"), (1, "1/4")], 1)
    assert oks_run_greedy(two, strict=True) == {0, 1}


def test_greedy_prefers_density_then_cost():
    oks = OksInstance.from_pairs([(1, "1/2"), (4, "1/4"), (2, "1/4")], HALF)
    # densities 2, 16, 8: the two quarter-cost items fill the budget
    assert oks_run_greedy(oks) == {1, 2}
    tie = OksInstance.from_pairs([(2, "1/4"), (1, "1/8")], F(1, 8))
    assert oks_run_greedy(tie) == {1}


def test_max_examples():
    beta, eps = F(1, 4), F(1, 10)
    items = knapsack_lb_items(beta, eps)
    assert oks_run_max(items) == 0
    assert items.items[0].cost == 2 * (beta + eps) <= 1
    big = OksInstance.from_pairs([(1, "1/2"), (9, "3/2")], HALF)
    assert oks_run_max(big) == 0
    ties = OksInstance.from_pairs([(3, "1/2"), (3, "1/4")], HALF)
    assert oks_max_step(ties, 0, 1) == 0


def test_phi_examples():
    inst = phi_reduction(OksInstance.from_pairs([(2, "1/2")], HALF))
    assert inst.reward.weights == (2,) and inst.costs == (1,)
    assert inst.shares == (HALF,)
    with pytest.raises(InstanceError):
        phi_reduction(OksInstance.from_pairs([(1, "3/2")], 1))
    with pytest.raises(InstanceError):
        phi_reduction(OksInstance.from_pairs([(0, "1/2")], 1))
    with pytest.raises(InstanceError):
        phi_reduction(OksInstance.from_pairs([(0, 0)], 1))


def test_phi_preserves_order_and_feasibility():
    rng = random.Random(21)
    for _ in range(100):
        oks = random_oks_instance(rng, max_n=8)
        inst = phi_reduction(oks)
        assert [a.id for a in inst.agents] == [it.id for it in oks.items]
        assert list(inst.shares) == oks.costs
        assert list(inst.reward.weights) == oks.values
        sel = oks_run_greedy(oks)
        assert sum((inst.shares[i] for i in sel), F(0)) <= oks.budget


def test_expected_utility_basics():
    assert alg_omac_beta_expected(additive_instance([], []), HALF) == 0
    with pytest.raises(InstanceError):
        alg_omac_beta_expected(additive_instance([1], [2]), HALF)


def test_knapsack_lb_case1_values():
    beta, eps = F(1, 4), F(1, 20)
    inst = gen_thm9_lb(beta, eps)
    assert inst.utility({1, 2}) == (1 - 2 * (beta + eps)) * 2
    assert oks_run_greedy(knapsack_lb_items(beta, eps)) == frozenset()


def test_knapsack_lb_case2_values():
    beta, eps = HALF, F(1, 10)
    oks = knapsack_lb_items(beta, eps)
    assert sum(oks.costs) == beta
    inst = phi_reduction(oks)
    everyone = set(range(inst.n))
    assert inst.utility(everyone) == (1 - beta) * (1 + eps)
    assert inst.utility(everyone - {0}) == 1 - eps
    assert oks_run_greedy(oks) == everyone
    with pytest.raises(ValueError):
        knapsack_lb_items(beta, F(2, 7))
    with pytest.raises(ValueError):
        knapsack_lb_items(F(2, 5), F(1, 5))


def test_greedy_plus_max_covers_reduced_optimum():
    rng = random.Random(5)
    for _ in range(150):
        oks = random_oks_instance(rng, max_n=9)
        if 0 in oks.values:
            continue
        inst = phi_reduction(oks)
        best, _ = brute_force_opt(inst)
        held = oks_run_max(oks)
        got = oks_value(oks, oks_run_greedy(oks)) + oks_value(oks, [] if held is None else [held])
        assert got >= inst.reward(best)


def test_value_based_max_can_fall_below_a_quarter():
    # Max may hold an item whose cost exceeds beta, which the quarter
    # guarantee does not cover: here E = 5/32 while OPT = 5/4.
    oks = OksInstance.from_pairs([(4, "11/16"), (5, "15/16")], HALF)
    inst = phi_reduction(oks)
    assert oks_run_greedy(oks) == frozenset() and oks_run_max(oks) == 1
    assert alg_omac_beta_expected(inst, HALF) == F(5, 32)
    assert brute_force_opt(inst)[1] == F(5, 4)
