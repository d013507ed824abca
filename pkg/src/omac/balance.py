"""Balance points and auxiliary agents for additive instances.

For a hired set ``S`` and quality group ``x`` only the higher-quality part
``S^{x-1}`` matters. Writing ``A = alpha(S^{x-1})`` and ``F = f(S^{x-1})``
(so ``F = q(S^{x-1}) * A``), the balance point is

    b(S, x) = (1 + A - F / q^x) / 2

which is the closed form ``1/2 + 1/2 (1 - q(S^{x-1})/q^x) A`` with the
product ``q(S^{x-1}) A`` kept as the reward ``F``. The two agree whenever
``A > 0``; the reward form stays correct when the prefix holds zero-cost
agents (``A = 0`` but ``F > 0``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .exact import ExtendedValue, Infinity
from .model import Instance, InstanceError

__all__ = [
    "BalanceQuery",
    "balance_level",
    "balance_point",
    "auxiliary_share",
    "auxiliary_utility",
    "crosses_balance_point",
    "prefix_totals",
]

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BalanceQuery:
    instance: Instance
    hired: frozenset[int]
    group: int

    def __post_init__(self):
        if not self.instance.is_additive:
            raise InstanceError("balance points are defined for additive rewards only")
        p = self.instance.quality_structure.p
        if not 1 <= self.group <= p:
            raise ValueError(f"group index {self.group} outside 1..{p}")
        object.__setattr__(self, "hired", frozenset(self.hired))

    @property
    def prefix(self) -> frozenset[int]:
        """S^{x-1}."""
        return self.instance.quality_structure.upto_group(self.hired, self.group - 1)

    @property
    def quality(self) -> ExtendedValue:
        return self.instance.quality_structure.quality(self.group)


def prefix_totals(instance: Instance, members: Iterable[int]) -> tuple[Fraction, Fraction]:
    """(alpha(S), f(S)) for an additive team with finite shares."""
    shares, weights = instance.shares, instance.reward.weights
    A = F = Fraction(0)
    for i in members:
        if isinstance(shares[i], Infinity):
            raise ValueError(f"agent {i + 1} has an infinite share")
        A += shares[i]
        F += weights[i]
    return A, F


def balance_level(prefix_share, prefix_reward, quality) -> Fraction:
    if isinstance(quality, Infinity):
        # Only the top group can have infinite quality; F/q vanishes.
        return (1 + Fraction(prefix_share)) / 2
    if quality == 0:
        raise ValueError("balance point undefined for a zero-quality group")
    return (1 + prefix_share - Fraction(prefix_reward) / quality) / 2


def balance_point(query: BalanceQuery) -> Fraction:
    A, F = prefix_totals(query.instance, query.prefix)
    return balance_level(A, F, query.quality)


def auxiliary_share(query: BalanceQuery) -> Fraction:
    """Share of the hypothetical quality-q^x agent that tops S^{x-1} up to
    the balance point. Negative when S^{x-1} already sits past it."""
    A, F = prefix_totals(query.instance, query.prefix)
    return balance_level(A, F, query.quality) - A


def auxiliary_utility(prefix_share, prefix_reward, quality, share) -> Fraction:
    """g(S^{x-1} ∪ {v}) for an auxiliary agent v of the given quality/share."""
    return (1 - prefix_share - share) * (prefix_reward + share * quality)


def crosses_balance_point(instance: Instance, hired: Iterable[int], i: int) -> bool:
    """True iff alpha(S̄_i) >= b(S, x) where x is i's group."""
    hired = frozenset(hired)
    if i not in hired:
        raise ValueError(f"agent {i} is not in the hired set")
    qs = instance.quality_structure
    through_i = qs.prefix_through(hired, i)
    A, _ = prefix_totals(instance, through_i)
    return A >= balance_point(BalanceQuery(instance, hired, qs.group_of[i]))
