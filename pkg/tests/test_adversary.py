from fractions import Fraction

import pytest

from omac.adversary import (
    a_closed_form,
    a_recurrence,
    adaptive_prefix_adversary,
    competitive_ratio,
    distribution_expectation,
    newest_group_strategy,
    no_preempt_policy_crs,
    policy_search,
    prefix_series,
    xos_exact_payoff,
    xos_limit_payoff,
)
from omac.exact import NEG_INF
from omac.families import enumerate_xos_distribution, gen_det_lb, gen_no_preempt, gen_rand_ub
from omac.online import ALG_OMAC, BP, MAX, OnlineAlgorithm

F = Fraction


def test_ratio_conventions():
    assert competitive_ratio(F(0), F(0)) == 1
    assert competitive_ratio(NEG_INF, F(2)) == 0
    assert competitive_ratio(F(-1), F(2)) == 0
    assert competitive_ratio(F(1), F(4)) == F(1, 4)
    with pytest.raises(ValueError):
        competitive_ratio(F(1), F(-1))


def test_prefix_adversary_on_det_lb():
    eps = F(1, 10)
    inst = gen_det_lb(eps)
    assert adaptive_prefix_adversary(BP, inst) == (1, 0)
    i, cr = adaptive_prefix_adversary(MAX, inst)
    assert i == inst.n and cr == 4 * eps * (1 - eps**2)


def test_mixture_per_prefix_on_rand_ub():
    inst = gen_rand_ub(F(1, 20))
    series = prefix_series(ALG_OMAC, inst)
    assert min(series.ratios) >= F(1, 2)
    assert prefix_series(OnlineAlgorithm("omac"), inst).ratios == series.ratios
    seeded = prefix_series(OnlineAlgorithm("omac", seed=0), inst)
    assert len(seeded.trajectories) == 1


def test_recurrence():
    assert a_recurrence(2, 3)[(1, 1)] == F(2, 3)
    for m in range(1, 6):
        table = a_recurrence(3, m)
        for h in range(1, m + 1):
            assert table[(h, m)] == F(h, m)
    for n in range(1, 13):
        for m in range(1, 13):
            table = a_recurrence(n, m)
            assert table[(1, 1)] == a_closed_form(n, m, 1, 1) <= F(1, n) + F(1, m)


def test_policy_search_matches_recurrence():
    for n, m in ((2, 2), (2, 3), (3, 2)):
        insts = [inst for inst, _ in enumerate_xos_distribution(n, m, F(1, 100))]
        value, visited = policy_search(insts, xos_limit_payoff(n, m, insts))
        assert value == a_recurrence(n, m)[(1, 1)]
        assert visited > len(insts)


def test_policy_search_at_finite_eps_stays_below_limit_plus_slack():
    eps = F(1, 100)
    insts = [inst for inst, _ in enumerate_xos_distribution(2, 2, eps)]
    value, _ = policy_search(insts, xos_exact_payoff(insts))
    assert F(1, 2) < value <= F(3, 4) + 4 * eps


def test_example1_strategy():
    eps = F(1, 10)
    exp_u, exp_opt, rows = distribution_expectation(newest_group_strategy(2), 2, 3, eps)
    assert exp_u == F(1, 4) * (1 - 3 * eps) * 3 + F(1, 2) * (1 - 2 * eps) * 2 + F(1, 4) * (1 - eps)
    assert exp_opt == 3 * (1 - 3 * eps)
    assert len(rows) == 4


def test_hire_once_ratios_by_hand():
    n, eps, q = 6, F(1, 100), F(1)
    inst = gen_no_preempt(n, eps, q)
    g = [inst.utility({i}) for i in range(n)]
    assert g == sorted(g)  # so OPT(N_i) is the newest singleton
    expected = [sum(g[j] / g[i] for i in range(j, n)) / n for j in range(n)]
    assert [cr for _, cr in no_preempt_policy_crs(n, eps, q)] == expected
    assert max(expected) <= F(1, n) + 3 * eps
