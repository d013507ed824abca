"""Offline optimum by exhaustive search.

Agents that are interchangeable (same cost and same column in every clause)
are grouped into classes, and the search walks every count vector of the
class lattice, which is every distinct team up to relabelling of identical
agents. For instances without duplicates this is plain enumeration of all
2^n subsets. The hard-instance families consist of a few agents plus many
identical small ones, which is what lets the oracle certify them exactly.

Maximizers are tie-broken by larger utility, then fewer agents, then the
lexicographically smallest sorted id tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod
from typing import Iterable, Optional

from .exact import ExtendedValue, Infinity
from .model import Instance, principal_utility

__all__ = [
    "DEFAULT_CAP",
    "CapExceeded",
    "OracleResult",
    "lattice_size",
    "brute_force_opt",
    "prefix_opts",
    "best_singleton",
]

DEFAULT_CAP = 22


class CapExceeded(ValueError):
    """The search space is larger than 2**cap teams."""


@dataclass(frozen=True)
class OracleResult:
    best_set: frozenset[int]
    best_utility: ExtendedValue
    per_prefix: tuple[tuple[int, ExtendedValue], ...]

    def opt(self, i: int) -> ExtendedValue:
        return self.per_prefix[i][1]


def _agent_key(instance: Instance, i: int):
    return (instance.agents[i].cost, tuple(c[i] for c in instance.reward.clauses))


def _classes(instance: Instance, ids: Iterable[int]) -> list[list[int]]:
    index: dict = {}
    classes: list[list[int]] = []
    for i in sorted(ids):
        key = _agent_key(instance, i)
        if key not in index:
            index[key] = len(classes)
            classes.append([])
        classes[index[key]].append(i)
    return classes


def lattice_size(instance: Instance, ids: Optional[Iterable[int]] = None) -> int:
    ids = range(instance.n) if ids is None else ids
    return prod(len(c) + 1 for c in _classes(instance, ids))


def _check_cap(size: int, cap: int):
    if size > 2**cap:
        raise CapExceeded(f"search space of {size} teams exceeds the cap 2^{cap}")


class _Best:
    """Running maximizer under (utility desc, size asc, ids lexicographic)."""

    def __init__(self):
        self.key = None
        self.card = 0
        self.members: tuple[int, ...] = ()

    def offer(self, key, card, materialize):
        if self.key is None or key > self.key:
            self.key, self.card, self.members = key, card, materialize()
        elif key == self.key and card <= self.card:
            members = materialize()
            if card < self.card or members < self.members:
                self.card, self.members = card, members

    def merge(self, other: "_Best"):
        if other.key is not None:
            self.offer(other.key, other.card, lambda: other.members)


def _search(instance: Instance, classes, counts, fixed: Optional[int] = None) -> _Best:
    """Best team over count vectors k with 0 <= k_c <= counts[c], and
    k_fixed == counts[fixed] when ``fixed`` is given."""
    m = len(classes)
    ks = [0] * m
    best = _Best()

    def materialize():
        return tuple(sorted(i for c in range(m) for i in classes[c][: ks[c]]))

    order = [c for c in range(m) if c != fixed]

    if instance.is_additive:
        t = instance.table
        D = t.D
        ca = [t.a[c[0]] for c in classes]
        cv = [t.v[c[0]] for c in classes]
        A0 = F0 = card0 = 0
        if fixed is not None:
            if ca[fixed] is None:
                return best
            k = counts[fixed]
            ks[fixed] = k
            A0, F0, card0 = k * ca[fixed], k * cv[fixed], k

        def rec(pos, A, F, card):
            if pos == len(order):
                best.offer((D - A) * F, card, materialize)
                return
            c = order[pos]
            a_c = ca[c]
            if a_c is None:
                rec(pos + 1, A, F, card)
                return
            v_c = cv[c]
            for k in range(counts[c] + 1):
                ks[c] = k
                rec(pos + 1, A + k * a_c, F + k * v_c, card + k)
            ks[c] = 0

        rec(0, A0, F0, card0)
        if best.key is not None:
            best.key = Fraction(best.key, t.D * t.E)
        return best

    f, costs = instance.reward, instance.costs
    if fixed is not None:
        ks[fixed] = counts[fixed]

    def rec_general(pos):
        if pos == len(order):
            members = materialize()
            u = principal_utility(f, costs, members)
            if not isinstance(u, Infinity):
                best.offer(u, len(members), lambda: members)
            return
        c = order[pos]
        for k in range(counts[c] + 1):
            ks[c] = k
            rec_general(pos + 1)
        ks[c] = 0

    rec_general(0)
    return best


def brute_force_opt(
    instance: Instance, ids: Optional[Iterable[int]] = None, cap: int = DEFAULT_CAP
) -> tuple[frozenset[int], ExtendedValue]:
    """max over S ⊆ ids of g(S), with the maximizer tie-break above."""
    ids = range(instance.n) if ids is None else ids
    classes = _classes(instance, ids)
    _check_cap(prod(len(c) + 1 for c in classes), cap)
    best = _search(instance, classes, [len(c) for c in classes])
    return frozenset(best.members), best.key


def prefix_opts(instance: Instance, cap: int = DEFAULT_CAP) -> OracleResult:
    """OPT(N_i) for i = 0..n.

    Each team is visited exactly once, at the prefix where its last member
    arrives, so the cost equals one full enumeration.
    """
    classes = _classes(instance, range(instance.n))
    _check_cap(prod(len(c) + 1 for c in classes), cap)
    class_of = {}
    for c, members in enumerate(classes):
        for i in members:
            class_of[i] = c
    counts = [0] * len(classes)
    best = _Best()
    best.offer(Fraction(0), 0, tuple)
    per_prefix = [(0, Fraction(0))]
    for i in range(instance.n):
        c = class_of[i]
        counts[c] += 1
        best.merge(_search(instance, classes, counts, fixed=c))
        per_prefix.append((i + 1, best.key))
    return OracleResult(frozenset(best.members), best.key, tuple(per_prefix))


def best_singleton(
    instance: Instance, ids: Optional[Iterable[int]] = None
) -> tuple[Optional[int], ExtendedValue]:
    """Best of ∅ and the singletons; ties prefer ∅, then the lowest id."""
    ids = range(instance.n) if ids is None else ids
    best_id, best_u = None, Fraction(0)
    for i in sorted(ids):
        u = (
            instance.table.utility((i,))
            if instance.is_additive
            else principal_utility(instance.reward, instance.costs, (i,))
        )
        if u > best_u:
            best_id, best_u = i, u
    return best_id, best_u
