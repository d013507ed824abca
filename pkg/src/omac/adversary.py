"""Prefix adversaries, impossibility recurrences and policy search."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .exact import ExtendedValue, Infinity
from .families import enumerate_xos_distribution, gen_no_preempt
from .model import Instance, principal_utility
from .online import Mixture, OnlineAlgorithm, Trajectory, run_online
from .oracle import OracleResult, prefix_opts

__all__ = [
    "competitive_ratio",
    "PrefixSeries",
    "prefix_series",
    "adaptive_prefix_adversary",
    "a_recurrence",
    "a_closed_form",
    "policy_search",
    "xos_limit_payoff",
    "xos_exact_payoff",
    "newest_group_strategy",
    "distribution_expectation",
    "no_preempt_policy",
    "no_preempt_policy_crs",
]


def competitive_ratio(utility: ExtendedValue, opt: ExtendedValue) -> Fraction:
    """utility / opt with 0/0 = 1 and non-positive utility against a
    positive optimum = 0."""
    if opt == 0:
        return Fraction(1)
    if isinstance(opt, Infinity) or opt < 0:
        raise ValueError(f"optimum {opt} is not a finite non-negative value")
    if utility <= 0:
        return Fraction(0)
    return utility / opt


@dataclass(frozen=True)
class PrefixSeries:
    """Per-prefix (expected) utility, optimum and ratio, for i = 1..n."""

    algorithm: str
    utilities: tuple[ExtendedValue, ...]
    optima: tuple[ExtendedValue, ...]
    ratios: tuple[Fraction, ...]
    trajectories: tuple[tuple[Fraction, Trajectory], ...]

    @property
    def worst(self) -> tuple[int, Fraction]:
        if not self.ratios:
            return 0, Fraction(1)
        k = min(range(len(self.ratios)), key=lambda j: (self.ratios[j], j))
        return k + 1, self.ratios[k]


def _components(alg) -> list[tuple[Fraction, object]]:
    if isinstance(alg, Mixture):
        return list(alg.components)
    if isinstance(alg, OnlineAlgorithm):
        if alg.is_deterministic:
            return [(Fraction(1), alg)]
        if alg.seed is not None:
            return [(Fraction(1), alg.resolve())]
        return list(alg.mixture().components)
    if callable(alg):
        return [(Fraction(1), alg)]
    raise TypeError(f"cannot evaluate {alg!r}: not an algorithm, mixture or step function")


def prefix_series(alg, instance: Instance, oracle: Optional[OracleResult] = None) -> PrefixSeries:
    """Run every deterministic component once over the full arrival order.

    An online run on N_i coincides with the first i steps of the full run,
    so one pass yields every prefix.
    """
    comps = _components(alg)
    oracle = oracle or prefix_opts(instance)
    runs = tuple((p, run_online(a, instance)) for p, a in comps)
    utilities, ratios = [], []
    for i in range(1, instance.n + 1):
        u: ExtendedValue = Fraction(0)
        for p, traj in runs:
            u = u + p * traj.records[i - 1].utility
        utilities.append(u)
        ratios.append(competitive_ratio(u, oracle.opt(i)))
    name = getattr(alg, "name", None) or getattr(alg, "__name__", "custom")
    optima = tuple(oracle.opt(i) for i in range(1, instance.n + 1))
    return PrefixSeries(str(name), tuple(utilities), optima, tuple(ratios), runs)


def adaptive_prefix_adversary(alg, instance: Instance, oracle: Optional[OracleResult] = None):
    """(worst prefix index, ratio) over i = 1..n; ties take the earliest."""
    return prefix_series(alg, instance, oracle).worst


# -- the XOS recurrence ----------------------------------------------------------


def a_closed_form(n: int, m: int, h: int, level: int) -> Fraction:
    k = m - level
    return Fraction(h * n + k, n * m)


def a_recurrence(n: int, m: int) -> dict[tuple[int, int], Fraction]:
    """A[h, l] for 1 <= h, l <= m from the backward recursion in l.

    Raises AssertionError if any entry differs from (hn + k)/(nm), k = m - l.
    """
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    row = {h: Fraction(h, m) for h in range(1, 2 * m + 1)}
    table = {(h, m): row[h] for h in range(1, m + 1)}
    for level in range(m - 1, 0, -1):
        top = 2 * m - (m - level)
        row = {
            h: Fraction(1, n) * row[h + 1] + Fraction(n - 1, n) * row[h]
            for h in range(1, top + 1)
        }
        for h in range(1, m + 1):
            table[(h, level)] = row[h]
    for (h, level), value in table.items():
        expected = a_closed_form(n, m, h, level)
        assert value == expected, f"A[{h},{level}] = {value}, closed form {expected}"
    return table


# -- exhaustive policy search -------------------------------------------------


def _subsets(items):
    for r in range(len(items) + 1):
        yield from itertools.combinations(items, r)


def policy_search(instances: Sequence[Instance], payoff: Callable[[int, frozenset], Fraction]):
    """Best expected payoff of a deterministic online policy against the
    uniform distribution over ``instances`` (all of the same size).

    After agent j arrives the policy sees f on every subset of the arrived
    agents and picks its new team inside S_(j-1) ∪ {j}. Every intermediate
    team must have finite utility. ``payoff(k, S)`` scores the final team S
    on instance k. Returns (value, number of information sets visited).
    """
    if not instances:
        raise ValueError("no instances")
    size = instances[0].n
    if any(inst.n != size for inst in instances):
        raise ValueError("instances differ in size")
    visited = 0
    finite_cache: dict = {}

    def finite(k, team):
        key = (k, team)
        if key not in finite_cache:
            inst = instances[k]
            u = principal_utility(inst.reward, inst.costs, team)
            finite_cache[key] = not isinstance(u, Infinity)
        return finite_cache[key]

    def signature(k, j):
        f = instances[k].reward
        return tuple(f(s) for s in _subsets(range(j + 1)))

    def value(j, held, alive):
        nonlocal visited
        visited += 1
        if j == size:
            return sum((payoff(k, held) for k in alive), Fraction(0))
        parts: dict = {}
        for k in alive:
            parts.setdefault(signature(k, j), []).append(k)
        total = Fraction(0)
        for part in parts.values():
            best = None
            for team in _subsets(sorted(held | {j})):
                team = frozenset(team)
                if not all(finite(k, team) for k in part):
                    # finiteness is observable, so it is constant on a part
                    continue
                v = value(j + 1, team, tuple(part))
                if best is None or v > best:
                    best = v
            total += best
        return total

    result = value(0, frozenset(), tuple(range(len(instances))))
    return result / len(instances), visited


def xos_limit_payoff(n: int, m: int, instances: Sequence[Instance]):
    """f(S)/m: the ratio to the optimum as eps -> 0."""

    def payoff(k, team):
        return Fraction(instances[k].reward(team), m)

    return payoff


def xos_exact_payoff(instances: Sequence[Instance]):
    """g(S) / OPT for the given eps."""
    from .oracle import brute_force_opt

    optima = [brute_force_opt(inst)[1] for inst in instances]

    def payoff(k, team):
        inst = instances[k]
        return competitive_ratio(principal_utility(inst.reward, inst.costs, team), optima[k])

    return payoff


# -- the newest-group strategy ------------------------------------------------


def newest_group_strategy(n: int):
    """Hire the first arrival of each group of n; then repeatedly dismiss
    the oldest held agent (other than the newcomer) whose marginal
    contribution is zero."""

    def step(instance: Instance, hired, j):
        if j % n:
            return hired
        team = set(hired) | {j}
        f = instance.reward
        while True:
            total = f(team)
            idle = [i for i in sorted(team) if i != j and f(team - {i}) == total]
            if not idle:
                return frozenset(team)
            team.discard(idle[0])

    step.__name__ = "newest_group"
    return step


def distribution_expectation(step, n: int, m: int, eps):
    """Exact E[g(final)] and E[OPT] of a step function over the uniform
    sigma distribution, plus per-instance rows."""
    from .oracle import brute_force_opt

    rows = []
    exp_u = exp_opt = Fraction(0)
    for inst, p in enumerate_xos_distribution(n, m, eps):
        traj = run_online(step, inst)
        u = traj.final_utility
        opt = brute_force_opt(inst)[1]
        rows.append((inst, traj, u, opt))
        exp_u += p * u
        exp_opt += p * opt
    return exp_u, exp_opt, rows


# -- hire-once policies without dismissal ------------------------------------------


def no_preempt_policy(j: int):
    """Hire agent j (0-based) on arrival and keep it; hire nobody else."""

    def step(instance, hired, arrival):
        return frozenset(hired | {arrival}) if arrival == j else hired

    step.__name__ = f"hire_only_{j + 1}"
    return step


def no_preempt_policy_crs(n: int, eps, q) -> list[tuple[int, Fraction]]:
    """Expected ratio of each hire-once policy over the uniform prefix
    distribution, as (1-based index, ratio) pairs."""
    inst = gen_no_preempt(n, eps, q)
    oracle = prefix_opts(inst)
    out = []
    for j in range(n):
        series = prefix_series(no_preempt_policy(j), inst, oracle)
        out.append((j + 1, sum(series.ratios, Fraction(0)) / n))
    return out
