import random
from fractions import Fraction

import pytest

from omac.exact import Infinity
from omac.families import gen_det_lb, gen_rand_ub, gen_xos_instance, random_additive_instance
from omac.model import additive_instance, principal_utility
from omac.oracle import CapExceeded, best_singleton, brute_force_opt, lattice_size, prefix_opts

from conftest import subsets

F = Fraction


def naive_opt(inst, ids):
    """Plain enumeration with the documented tie-break."""
    best = None
    for s in subsets(ids):
        u = principal_utility(inst.reward, inst.costs, s)
        if isinstance(u, Infinity):
            continue
        key = (-u, len(s), tuple(sorted(s)))
        if best is None or key < best:
            best = key
    return frozenset(best[2]), -best[0]


def test_examples(three_equal):
    s, u = brute_force_opt(three_equal)
    assert s == {0, 1} and u == 1
    assert brute_force_opt(additive_instance([], [])) == (frozenset(), 0)
    det = gen_det_lb(F(1, 10))
    assert det.n == 51
    s, u = brute_force_opt(det)
    assert u == F(1, 400) and s == frozenset(range(1, 51))
    res = prefix_opts(det)
    assert res.opt(0) == 0
    assert res.opt(1) == F(99, 100000)


def test_matches_naive_enumeration():
    rng = random.Random(99)
    for _ in range(300):
        inst = random_additive_instance(rng, max_n=8)
        assert brute_force_opt(inst) == naive_opt(inst, range(inst.n))
        res = prefix_opts(inst)
        for i in range(inst.n + 1):
            assert res.opt(i) == naive_opt(inst, range(i))[1]
        assert res.best_set == naive_opt(inst, range(inst.n))[0]


def test_duplicates_collapse_to_classes():
    inst = additive_instance([1] * 30, ["1/100"] * 30)
    assert lattice_size(inst) == 31
    s, u = brute_force_opt(inst)
    assert s == frozenset(range(30))
    assert u == (1 - F(30, 100)) * 30


def test_prefix_optimum_monotone():
    rng = random.Random(4)
    for _ in range(200):
        inst = random_additive_instance(rng, max_n=10)
        values = [v for _, v in prefix_opts(inst).per_prefix]
        assert values == sorted(values)
        assert all(v >= 0 for v in values)


def test_cap():
    inst = additive_instance(list(range(1, 24)), [F(1, 100)] * 23)
    with pytest.raises(CapExceeded):
        brute_force_opt(inst)
    with pytest.raises(CapExceeded):
        prefix_opts(inst)
    small = additive_instance(list(range(1, 13)), [F(1, 100)] * 12)
    assert brute_force_opt(small, cap=12)[1] > 0
    with pytest.raises(CapExceeded):
        brute_force_opt(small, cap=11)


def test_best_singleton(three_equal):
    eps = F(1, 10)
    assert best_singleton(gen_rand_ub(eps)) == (0, (1 - eps**2) * eps**3)
    assert best_singleton(additive_instance([1, 2], [1, 3])) == (None, 0)
    assert best_singleton(three_equal) == (0, F(3, 4))


def test_xos_oracle_avoids_infinite_sets():
    inst = gen_xos_instance(2, 3, F(1, 10), (0, 1))
    s, u = brute_force_opt(inst)
    assert (s, u) == naive_opt(inst, range(inst.n))
    assert u == 3 * (1 - 3 * F(1, 10))
