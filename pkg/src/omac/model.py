"""Agents, reward functions, shares, quality and the principal's utility.

Everything here is exact. Agent ids are 0-based arrival indices; reports add
one when rendering so that agent ``0`` prints as agent ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exact import NEG_INF, POS_INF, ExtendedValue, Infinity, as_fraction

__all__ = [
    "Agent",
    "RewardFunction",
    "Instance",
    "Team",
    "QualityStructure",
    "InstanceError",
    "eval_reward",
    "marginal",
    "share_of",
    "total_share",
    "principal_utility",
    "quality_of_agent",
    "quality_of_set",
    "build_quality_structure",
    "additive_instance",
]

ADDITIVE = "additive"
XOS = "xos"


class InstanceError(ValueError):
    """An instance violates a structural requirement."""


@dataclass(frozen=True)
class Agent:
    id: int
    cost: Fraction

    def __post_init__(self):
        if self.cost < 0:
            raise InstanceError(f"agent {self.id + 1}: negative cost {self.cost}")


@dataclass(frozen=True)
class RewardFunction:
    """Additive weights or an XOS clause matrix.

    An additive function is stored as a single clause, so ``f(S)`` is always
    the maximum over clauses of the clause weight of ``S``.
    """

    kind: str
    clauses: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.kind not in (ADDITIVE, XOS):
            raise InstanceError(f"unknown reward kind {self.kind!r}")
        if not self.clauses:
            raise InstanceError("reward function needs at least one clause")
        if self.kind == ADDITIVE and len(self.clauses) != 1:
            raise InstanceError("an additive reward has exactly one weight vector")
        width = len(self.clauses[0])
        for ell, clause in enumerate(self.clauses):
            if len(clause) != width:
                raise InstanceError(
                    f"clause {ell + 1} has {len(clause)} entries, expected {width}"
                )
            if any(w < 0 for w in clause):
                raise InstanceError(f"clause {ell + 1} has a negative weight")

    @classmethod
    def additive(cls, weights: Iterable) -> "RewardFunction":
        return cls(ADDITIVE, (tuple(as_fraction(w) for w in weights),))

    @classmethod
    def xos(cls, clauses: Iterable[Iterable]) -> "RewardFunction":
        return cls(XOS, tuple(tuple(as_fraction(w) for w in c) for c in clauses))

    @property
    def is_additive(self) -> bool:
        return self.kind == ADDITIVE

    @property
    def size(self) -> int:
        return len(self.clauses[0])

    @property
    def weights(self) -> tuple[Fraction, ...]:
        if not self.is_additive:
            raise InstanceError("weights are defined for additive rewards only")
        return self.clauses[0]

    def truncate(self, n: int) -> "RewardFunction":
        return RewardFunction(self.kind, tuple(c[:n] for c in self.clauses))

    def __call__(self, members: Iterable[int]) -> Fraction:
        return eval_reward(self, members)


@dataclass(frozen=True)
class Instance:
    agents: tuple[Agent, ...]
    reward: RewardFunction
    label: str = ""
    family: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        for pos, agent in enumerate(self.agents):
            if agent.id != pos:
                raise InstanceError(
                    f"agent at arrival position {pos + 1} has id {agent.id + 1}"
                )
        if self.reward.size != len(self.agents):
            raise InstanceError(
                f"reward covers {self.reward.size} agents but the instance has "
                f"{len(self.agents)}"
            )
        if self.reward.is_additive:
            for agent, w in zip(self.agents, self.reward.weights):
                if w == 0 and agent.cost == 0:
                    raise InstanceError(
                        f"agent {agent.id + 1} has zero weight and zero cost; "
                        "its quality is undefined"
                    )

    @property
    def n(self) -> int:
        return len(self.agents)

    @property
    def is_additive(self) -> bool:
        return self.reward.is_additive

    @property
    def costs(self) -> tuple[Fraction, ...]:
        return tuple(a.cost for a in self.agents)

    def degenerate_agents(self) -> list[int]:
        """Additive agents with positive cost and zero weight (share = inf)."""
        if not self.is_additive:
            return []
        return [
            a.id
            for a, w in zip(self.agents, self.reward.weights)
            if w == 0 and a.cost > 0
        ]

    def prefix(self, i: int) -> "Instance":
        """The first ``i`` arrivals, N_i."""
        if not 0 <= i <= self.n:
            raise IndexError(f"prefix length {i} outside 0..{self.n}")
        return Instance(
            self.agents[:i], self.reward.truncate(i), f"{self.label}[:{i}]", self.family
        )

    # Per-agent data for additive instances; fixed for the whole run because
    # an additive agent's share does not depend on its teammates.
    @cached_property
    def shares(self) -> tuple[ExtendedValue, ...]:
        _require_additive(self)
        return tuple(
            _additive_share(a.cost, w) for a, w in zip(self.agents, self.reward.weights)
        )

    @cached_property
    def qualities(self) -> tuple[ExtendedValue, ...]:
        _require_additive(self)
        return tuple(
            quality_of_agent(self.reward, a.cost, a.id) for a in self.agents
        )

    @cached_property
    def quality_structure(self) -> "QualityStructure":
        return build_quality_structure(self)

    @cached_property
    def table(self):
        from ._scaled import AdditiveTable

        return AdditiveTable(self)

    def utility(self, members: Iterable[int]) -> ExtendedValue:
        return principal_utility(self.reward, self.costs, members)


def additive_instance(weights: Sequence, costs: Sequence, label: str = "", family=None) -> Instance:
    """Convenience constructor from parallel weight and cost lists."""
    if len(weights) != len(costs):
        raise InstanceError("weights and costs must have the same length")
    agents = tuple(Agent(i, as_fraction(c)) for i, c in enumerate(costs))
    return Instance(agents, RewardFunction.additive(weights), label, dict(family or {}))


def _require_additive(instance: Instance):
    if not instance.is_additive:
        raise InstanceError("quality is defined for additive rewards only")


def _check_ids(f: RewardFunction, members) -> frozenset[int]:
    members = frozenset(members)
    for i in members:
        if not 0 <= i < f.size:
            raise IndexError(f"agent id {i} out of range 0..{f.size - 1}")
    return members


def eval_reward(f: RewardFunction, members: Iterable[int]) -> Fraction:
    members = _check_ids(f, members)
    if not members:
        return Fraction(0)
    return max(sum((c[i] for i in members), Fraction(0)) for c in f.clauses)


def marginal(f: RewardFunction, members: Iterable[int], i: int) -> Fraction:
    members = _check_ids(f, members)
    if i not in members:
        raise ValueError(f"agent {i} is not in the team")
    return eval_reward(f, members) - eval_reward(f, members - {i})


def _additive_share(cost: Fraction, weight: Fraction) -> ExtendedValue:
    if cost == 0:
        return Fraction(0)
    if weight == 0:
        return POS_INF
    return cost / weight


def share_of(f: RewardFunction, members: Iterable[int], i: int, cost) -> ExtendedValue:
    """Minimal incentivizing share: cost over marginal contribution."""
    cost = as_fraction(cost)
    if f.is_additive:
        if i not in frozenset(members):
            raise ValueError(f"agent {i} is not in the team")
        return _additive_share(cost, f.weights[i])
    m = marginal(f, members, i)
    if cost == 0:
        return Fraction(0)
    if m == 0:
        return POS_INF
    return cost / m


def total_share(f: RewardFunction, costs: Sequence, members: Iterable[int]) -> ExtendedValue:
    members = _check_ids(f, members)
    total: ExtendedValue = Fraction(0)
    if f.is_additive:
        w = f.weights
        for i in members:
            total = total + _additive_share(as_fraction(costs[i]), w[i])
        return total
    for i in members:
        total = total + share_of(f, members, i, costs[i])
    return total


def principal_utility(f: RewardFunction, costs: Sequence, members: Iterable[int]) -> ExtendedValue:
    members = _check_ids(f, members)
    if not members:
        return Fraction(0)
    alpha = total_share(f, costs, members)
    if isinstance(alpha, Infinity):
        return NEG_INF
    return (1 - alpha) * eval_reward(f, members)


def quality_of_agent(f: RewardFunction, cost, i: int) -> ExtendedValue:
    if not f.is_additive:
        raise InstanceError("quality is defined for additive rewards only")
    cost = as_fraction(cost)
    w = f.weights[i]
    if cost == 0:
        if w == 0:
            raise InstanceError(f"agent {i + 1}: zero weight and zero cost")
        return POS_INF
    return w * w / cost


def quality_of_set(f: RewardFunction, costs: Sequence, members: Iterable[int]) -> ExtendedValue:
    if not f.is_additive:
        raise InstanceError("quality is defined for additive rewards only")
    members = _check_ids(f, members)
    if not members:
        return Fraction(0)
    alpha = total_share(f, costs, members)
    reward = eval_reward(f, members)
    if isinstance(alpha, Infinity):
        return Fraction(0)
    if alpha == 0:
        return POS_INF
    return reward / alpha


@dataclass(frozen=True)
class Team:
    """A hired set with its reward, total share and utility."""

    members: frozenset[int]
    reward: Fraction
    total_share: ExtendedValue
    utility: ExtendedValue

    @classmethod
    def of(cls, instance: Instance, members: Iterable[int]) -> "Team":
        members = frozenset(members)
        f = instance.reward
        alpha = total_share(f, instance.costs, members)
        return cls(
            members,
            eval_reward(f, members),
            alpha,
            principal_utility(f, instance.costs, members),
        )

    def check(self, instance: Instance) -> bool:
        return self == Team.of(instance, self.members)


@dataclass(frozen=True)
class QualityStructure:
    """Quality groups Q_1..Q_p (strictly decreasing quality) and the
    canonical order: quality desc, share asc, arrival index asc."""

    groups: tuple[tuple[int, ...], ...]
    group_qualities: tuple[ExtendedValue, ...]
    canonical_order: tuple[int, ...]
    group_of: tuple[int, ...]  # 1-based group index per agent id
    rank: tuple[int, ...]  # position of each agent id in canonical_order

    @property
    def p(self) -> int:
        return len(self.groups)

    def quality(self, x: int) -> ExtendedValue:
        return self.group_qualities[x - 1]

    def sort(self, members: Iterable[int]) -> list[int]:
        return sorted(members, key=self.rank.__getitem__)

    def prefix_through(self, members: Iterable[int], i: int) -> frozenset[int]:
        """S̄_i: members of S at or before agent ``i`` in canonical order."""
        r = self.rank[i]
        return frozenset(j for j in members if self.rank[j] <= r)

    def upto_group(self, members: Iterable[int], x: int) -> frozenset[int]:
        """S^x: members belonging to groups 1..x (S^0 is empty)."""
        return frozenset(j for j in members if self.group_of[j] <= x)


def build_quality_structure(instance: Instance) -> QualityStructure:
    _require_additive(instance)
    q = instance.qualities
    alpha = instance.shares
    order = tuple(
        sorted(range(instance.n), key=lambda i: (-q[i], alpha[i], i))
    )
    groups: list[list[int]] = []
    group_q: list[ExtendedValue] = []
    for i in order:
        if group_q and q[i] == group_q[-1]:
            groups[-1].append(i)
        else:
            groups.append([i])
            group_q.append(q[i])
    group_of = [0] * instance.n
    for x, members in enumerate(groups, start=1):
        for i in members:
            group_of[i] = x
    rank = [0] * instance.n
    for pos, i in enumerate(order):
        rank[i] = pos
    return QualityStructure(
        tuple(tuple(g) for g in groups),
        tuple(group_q),
        order,
        tuple(group_of),
        tuple(rank),
    )
