"""The acceptance checks must notice a corrupted balance point.

The mutant raises the leading 1/2 of the balance point to 1 in both the
online step and the balance-point module.
"""

from fractions import Fraction

import pytest

import omac.acceptance as acceptance
import omac.balance as balance
import omac.online as online
from omac.acceptance import CRITERIA, Context, run_criterion
from omac.exact import Infinity
from omac.families import gen_det_lb
from omac.oracle import brute_force_opt

F = Fraction


def mutant_level(A, R, q):
    if isinstance(q, Infinity):
        return (2 + F(A)) / 2
    return (2 + A - F(R) / q) / 2


def mutant_bp_step(instance, hired, arrival):
    alpha, w, q = instance.shares, instance.reward.weights, instance.qualities
    kept = []
    for i in instance.quality_structure.sort((*hired, arrival)):
        if isinstance(alpha[i], Infinity):
            continue
        prefix = [j for j in kept if q[j] > q[i]]
        A = sum((alpha[j] for j in prefix), F(0))
        R = sum((w[j] for j in prefix), F(0))
        if sum((alpha[j] for j in kept), F(0)) + alpha[i] < mutant_level(A, R, q[i]):
            kept.append(i)
    return frozenset(kept)


@pytest.fixture
def mutated(monkeypatch):
    monkeypatch.setattr(online, "bp_step", mutant_bp_step)
    monkeypatch.setattr(balance, "balance_level", mutant_level)
    monkeypatch.setattr(acceptance, "balance_level", mutant_level)


def test_mutant_breaks_the_cover_bound_on_det_lb(mutated):
    inst = gen_det_lb(F(1, 10))
    bp = online.run_online(online.BP, inst).final_utility
    mx = online.run_online(online.MAX, inst).final_utility
    assert bp + mx < brute_force_opt(inst)[1]


@pytest.mark.parametrize("number", [2, 3, 5])
def test_mutant_fails_criterion(mutated, number):
    entry = next(c for c in CRITERIA if c[0] == number)
    assert not run_criterion(entry, Context(suite_size=200)).passed
