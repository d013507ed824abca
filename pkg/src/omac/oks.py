"""Online knapsack with preemption (OKS) and its bridge to OMAC.

An item ``(p_e, c_e)`` maps to an additive agent with reward ``p_e`` and
share ``c_e``, i.e. cost ``c_e * p_e``. The static-threshold algorithm runs
Greedy (rebuild by decreasing value density while the budget allows) or Max
(best single value with cost at most 1), each with probability 1/2.

The budget test defaults to ``cost <= beta``, the knapsack feasibility
constraint. ``strict=True`` switches to ``< beta``, the form Algorithm BP
uses for balance points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import POS_INF, ExtendedValue, Infinity, as_fraction
from .model import Agent, Instance, InstanceError, RewardFunction

__all__ = [
    "OksItem",
    "OksInstance",
    "oks_greedy_step",
    "oks_max_step",
    "omac_greedy_step",
    "omac_max_step",
    "phi_reduction",
    "alg_omac_beta_expected",
    "oks_beta_finals",
    "knapsack_lb_items",
    "gen_thm9_lb",
    "oks_run_greedy",
    "oks_run_max",
    "oks_value",
]


@dataclass(frozen=True)
class OksItem:
    id: int
    value: Fraction
    cost: Fraction

    @property
    def quality(self) -> ExtendedValue:
        if self.cost == 0:
            return POS_INF if self.value > 0 else Fraction(0)
        return self.value / self.cost


@dataclass(frozen=True)
class OksInstance:
    items: tuple[OksItem, ...]
    budget: Fraction
    label: str = ""

    def __post_init__(self):
        if not 0 < self.budget <= 1:
            raise InstanceError(f"budget {self.budget} outside (0, 1]")
        for pos, item in enumerate(self.items):
            if item.id != pos:
                raise InstanceError(f"item at position {pos + 1} has id {item.id + 1}")
            if item.value < 0 or item.cost < 0:
                raise InstanceError(f"item {pos + 1} has a negative value or cost")

    @classmethod
    def from_pairs(cls, pairs, budget, label=""):
        items = tuple(
            OksItem(i, as_fraction(p), as_fraction(c)) for i, (p, c) in enumerate(pairs)
        )
        return cls(items, as_fraction(budget), label)

    @property
    def values(self):
        return [it.value for it in self.items]

    @property
    def costs(self):
        return [it.cost for it in self.items]


def _density(value, cost) -> ExtendedValue:
    if cost == 0:
        return POS_INF if value > 0 else Fraction(0)
    return value / cost


def _greedy(values: Sequence, costs: Sequence, selected, arrival: int, beta, strict: bool):
    pool = [i for i in (*selected, arrival) if not isinstance(costs[i], Infinity)]
    pool.sort(key=lambda i: (-_density(values[i], costs[i]), costs[i], i))
    kept, used = [], Fraction(0)
    for i in pool:
        total = used + costs[i]
        if total < beta or (not strict and total == beta):
            kept.append(i)
            used = total
    return frozenset(kept)


def _best_value(values: Sequence, costs: Sequence, incumbent: Optional[int], arrival: int):
    c = costs[arrival]
    if isinstance(c, Infinity) or c > 1:
        return incumbent
    held = Fraction(0) if incumbent is None else values[incumbent]
    return arrival if values[arrival] > held else incumbent


def oks_greedy_step(oks: OksInstance, selected, arrival: int, beta=None, strict: bool = False):
    """Rebuild ``selected ∪ {arrival}`` by density (ties: cheaper, then
    earlier) while the running cost stays within ``beta``."""
    beta = oks.budget if beta is None else as_fraction(beta)
    return _greedy(oks.values, oks.costs, selected, arrival, beta, strict)


def oks_max_step(oks: OksInstance, incumbent: Optional[int], arrival: int) -> Optional[int]:
    """Largest value among items of cost at most 1; ties keep the incumbent."""
    return _best_value(oks.values, oks.costs, incumbent, arrival)


def omac_greedy_step(instance: Instance, hired, arrival: int, beta, strict: bool = False):
    return _greedy(instance.reward.weights, instance.shares, hired, arrival, beta, strict)


def omac_max_step(instance: Instance, hired, arrival: int, beta=None):
    incumbent = next(iter(hired)) if hired else None
    kept = _best_value(instance.reward.weights, instance.shares, incumbent, arrival)
    return frozenset() if kept is None else frozenset((kept,))


def phi_reduction(oks: OksInstance) -> Instance:
    """Order-preserving map to an additive OMAC instance with
    f({i}) = p_e and alpha_i = c_e."""
    agents, weights = [], []
    for item in oks.items:
        if item.cost > 1:
            raise InstanceError(f"item {item.id + 1}: cost {item.cost} > 1 cannot be a share")
        if item.value == 0:
            raise InstanceError(f"item {item.id + 1}: zero value has no OMAC counterpart")
        agents.append(Agent(item.id, item.cost * item.value))
        weights.append(item.value)
    family = {"reduction": "phi", "budget": str(oks.budget)}
    return Instance(tuple(agents), RewardFunction.additive(weights), oks.label, family)


def oks_beta_finals(instance: Instance, beta, strict: bool = False):
    """Final sets of the Greedy and Max components on an OMAC instance."""
    from .online import OnlineAlgorithm, run_online

    beta = as_fraction(beta)
    if not instance.is_additive:
        raise InstanceError("the static-threshold algorithm needs an additive instance")
    if strict:
        greedy = run_online(
            lambda inst, s, j: omac_greedy_step(inst, s, j, beta, strict=True),
            instance,
            name="oks_greedy_strict",
        )
    else:
        greedy = run_online(OnlineAlgorithm("oks_greedy", beta), instance)
    mx = run_online(OnlineAlgorithm("oks_max", beta), instance)
    return greedy, mx


def alg_omac_beta_expected(instance: Instance, beta, strict: bool = False) -> ExtendedValue:
    """Exactly (g(Greedy final) + g(Max final)) / 2."""
    for s in instance.shares:
        if isinstance(s, Infinity) or s > 1:
            raise InstanceError("every share must be at most 1")
    greedy, mx = oks_beta_finals(instance, beta, strict)
    return (greedy.final_utility + mx.final_utility) / 2


def knapsack_lb_items(beta, eps) -> OksInstance:
    """Item sets showing the static threshold cannot beat 1/4.

    ``beta < 1/2``: v = (1+eps, 2(beta+eps)) and two copies of
    (1, beta+eps); nothing fits for Greedy and Max takes v.
    ``beta >= 1/2``: v = (eps, beta-eps) followed by 1/eps items
    (eps, eps^2); Greedy fills the budget exactly.
    """
    beta, eps = as_fraction(beta), as_fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    if beta < Fraction(1, 2):
        if 2 * (beta + eps) > 1:
            raise ValueError("case beta < 1/2 needs beta + eps <= 1/2 so that c(v) <= 1")
        pairs = [(1 + eps, 2 * (beta + eps)), (1, beta + eps), (1, beta + eps)]
        label = f"knapsack_lb_case1(beta={beta},eps={eps})"
    else:
        if (1 / eps).denominator != 1:
            raise ValueError("case beta >= 1/2 needs 1/eps to be an integer")
        if eps > beta:
            raise ValueError("case beta >= 1/2 needs eps <= beta")
        pairs = [(eps, beta - eps)] + [(eps, eps * eps)] * int(1 / eps)
        label = f"knapsack_lb_case2(beta={beta},eps={eps})"
    return OksInstance.from_pairs(pairs, beta, label)


def gen_thm9_lb(beta, eps) -> Instance:
    oks = knapsack_lb_items(beta, eps)
    inst = phi_reduction(oks)
    inst.family.update({"family": "knapsack_lb", "beta": str(oks.budget), "eps": str(as_fraction(eps))})
    return inst


def oks_run_greedy(oks: OksInstance, beta=None, strict: bool = False) -> frozenset[int]:
    """Final Greedy selection after every item has arrived."""
    selected: frozenset[int] = frozenset()
    for item in oks.items:
        selected = oks_greedy_step(oks, selected, item.id, beta, strict)
    return selected


def oks_run_max(oks: OksInstance) -> Optional[int]:
    held = None
    for item in oks.items:
        held = oks_max_step(oks, held, item.id)
    return held


def oks_value(oks: OksInstance, selection) -> Fraction:
    return sum((oks.items[i].value for i in selection), Fraction(0))
