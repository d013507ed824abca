from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omac.exact import NEG_INF, POS_INF
from omac.families import SigmaVector, example1_labels, gen_det_lb, gen_rand_ub, gen_xos_instance
from omac.model import (
    Agent,
    Instance,
    InstanceError,
    RewardFunction,
    Team,
    additive_instance,
    build_quality_structure,
    eval_reward,
    marginal,
    principal_utility,
    quality_of_agent,
    quality_of_set,
    share_of,
)

from conftest import additive_instances, subsets

F = Fraction
EPS = F(1, 10)


def example1(picks=(0, 0)):
    sigma = SigmaVector(2, 3, picks)
    inst = gen_xos_instance(2, 3, EPS, sigma)
    ids = {name: i for i, name in example1_labels(sigma).items()}
    return inst, ids


def test_eval_reward_examples():
    assert eval_reward(RewardFunction.additive([2, 3]), {0, 1}) == 5
    assert eval_reward(RewardFunction.xos([[1, 0], [0, 1]]), {0, 1}) == 1
    inst, ids = example1()
    assert eval_reward(inst.reward, {ids["G1"], ids["G2"], ids["B3"]}) == 3
    assert eval_reward(inst.reward, set()) == 0
    with pytest.raises(IndexError):
        eval_reward(RewardFunction.additive([1]), {3})


def test_marginal_examples():
    assert marginal(RewardFunction.additive([2, 3]), {0, 1}, 1) == 3
    inst, ids = example1()
    assert marginal(inst.reward, {ids["B1"], ids["G1"]}, ids["G1"]) == 0
    assert marginal(RewardFunction.xos([[1, 1], [2, 0]]), {0, 1}, 0) == 1
    with pytest.raises(ValueError):
        marginal(RewardFunction.additive([2, 3]), {0}, 1)


def test_share_examples():
    f = RewardFunction.additive([2, 5])
    assert share_of(f, {0}, 0, 1) == F(1, 2)
    assert share_of(f, {0, 1}, 0, 1) == F(1, 2)
    assert share_of(f, {1}, 1, 0) == 0
    inst, ids = example1()
    assert share_of(inst.reward, {ids["B1"], ids["G1"]}, ids["G1"], EPS) == POS_INF
    assert share_of(inst.reward, {ids["B1"], ids["G1"]}, ids["G1"], 0) == 0


def test_principal_utility_examples():
    f = RewardFunction.additive([2])
    assert principal_utility(f, [1], {0}) == 1
    assert principal_utility(f, [1], set()) == 0
    det = gen_det_lb(EPS)
    assert det.utility({0}) == (1 - EPS**2) * EPS**3
    inst, ids = example1()
    assert inst.utility({ids["B1"], ids["G1"]}) == NEG_INF


def test_quality_examples():
    f = RewardFunction.additive([2, 1])
    assert quality_of_agent(f, 1, 0) == 4
    assert quality_of_agent(f, 0, 1) == POS_INF
    assert quality_of_agent(RewardFunction.additive([0]), 1, 0) == 0
    rand = gen_rand_ub(F(1, 20))
    assert rand.shares[1] == F(1, 400) and rand.qualities[1] == F(1, 400)
    assert quality_of_set(f, [1, 0], {0}) == 4
    assert quality_of_set(f, [1, 0], set()) == 0
    g = RewardFunction.additive([2, 3])
    assert quality_of_set(g, [1, 1], {0, 1}) == 6


def test_quality_structure_examples():
    inst = additive_instance([2, 2, 1], [1, 1, "1/2"])
    assert build_quality_structure(inst).groups == ((0, 1), (2,))
    # equal quality 12: shares 1/3 and 1/4, so agent 1 goes first
    tie = additive_instance([4, 3], ["4/3", "3/4"])
    qs = tie.quality_structure
    assert qs.p == 1 and qs.canonical_order == (1, 0)
    distinct = additive_instance([1, 3, 2], [1, 1, 1])
    assert distinct.quality_structure.canonical_order == (1, 2, 0)
    assert distinct.quality_structure.group_qualities == (9, 4, 1)


def test_validation():
    with pytest.raises(InstanceError):
        additive_instance([0], [0])
    with pytest.raises(InstanceError):
        additive_instance([1], [-1])
    with pytest.raises(InstanceError):
        Instance((Agent(1, F(1)),), RewardFunction.additive([1]))
    with pytest.raises(InstanceError):
        RewardFunction.xos([[1, 0], [1]])
    with pytest.raises(InstanceError):
        gen_xos_instance(2, 2, EPS, (0,)).shares
    degenerate = additive_instance([0, 1], [1, 1])
    assert degenerate.degenerate_agents() == [0]
    assert degenerate.shares[0] == POS_INF
    assert degenerate.utility({0, 1}) == NEG_INF


# -- properties --------------------------------------------------------------

@given(additive_instances(zero_cost=False))
def test_utility_identity(inst):
    f, costs = inst.reward, inst.costs
    for s in subsets(range(inst.n)):
        alpha = sum((inst.shares[i] for i in s), F(0))
        lhs = principal_utility(f, costs, s)
        assert lhs == (1 - alpha) * alpha * quality_of_set(f, costs, s)


@given(additive_instances())
def test_share_independent_of_team(inst):
    f = inst.reward
    for i in range(inst.n):
        seen = {share_of(f, s | {i}, i, inst.costs[i]) for s in subsets(range(inst.n))}
        assert seen == {inst.shares[i]}


@given(additive_instances(max_n=6))
def test_subadditive_utility(inst):
    ids = range(inst.n)
    for a in subsets(ids):
        rest = [i for i in ids if i not in a]
        for b in subsets(rest):
            assert inst.utility(a | b) <= inst.utility(a) + inst.utility(b)


@settings(max_examples=50)
@given(st.integers(1, 5), st.integers(1, 3), st.data())
def test_reward_monotone(n_per, groups, data):
    m = groups
    picks = tuple(data.draw(st.integers(0, n_per - 1)) for _ in range(m - 1))
    inst = gen_xos_instance(n_per, m, EPS, picks)
    ids = list(range(inst.n))
    s = frozenset(data.draw(st.lists(st.sampled_from(ids), unique=True)))
    t = s | frozenset(data.draw(st.lists(st.sampled_from(ids), unique=True)))
    assert inst.reward(s) <= inst.reward(t)


@given(additive_instances())
def test_team_record_consistent(inst):
    team = Team.of(inst, range(inst.n))
    assert team.check(inst)
    assert team.utility == inst.table.utility(range(inst.n))
