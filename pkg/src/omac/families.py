"""Hard-instance families and seeded random suites."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .exact import as_fraction
from .model import Agent, Instance, RewardFunction, additive_instance
from .oks import OksInstance

__all__ = [
    "FamilyError",
    "small_agent_count",
    "gen_det_lb",
    "gen_rand_ub",
    "SigmaVector",
    "gen_xos_instance",
    "enumerate_xos_distribution",
    "example1_labels",
    "example1_reward",
    "gen_no_preempt",
    "no_preempt_share",
    "random_additive_instance",
    "random_additive_suite",
    "random_oks_instance",
    "random_oks_suite",
    "DEFAULT_XOS_CAP",
]

DEFAULT_XOS_CAP = 4096


class FamilyError(ValueError):
    """Family parameters outside their admissible range."""


def _check_eps(eps) -> Fraction:
    eps = as_fraction(eps)
    if not 0 < eps < 1:
        raise FamilyError(f"epsilon must lie in (0, 1), got {eps}")
    return eps


def small_agent_count(eps, exact: bool = False) -> int:
    """ceil(1 / (2 eps^2)); with ``exact`` the quotient must be an integer."""
    eps = _check_eps(eps)
    k = 1 / (2 * eps * eps)
    if exact and k.denominator != 1:
        raise FamilyError(f"1/(2 eps^2) = {k} is not an integer")
    return math.ceil(k)


def _big_small(eps, exact: bool, family: str) -> Instance:
    eps = _check_eps(eps)
    k = small_agent_count(eps, exact)
    e2 = eps * eps
    a1, q1 = 1 - e2, eps
    weights = [a1 * q1] + [e2 * e2] * k
    costs = [a1 * a1 * q1] + [e2 * e2 * e2] * k
    return additive_instance(
        weights,
        costs,
        label=f"{family}(eps={eps})",
        family={"family": family, "eps": str(eps), "n": str(k + 1)},
    )


def gen_det_lb(eps, exact: bool = False) -> Instance:
    """One big agent (share 1-eps^2, quality eps) followed by
    ceil(1/(2 eps^2)) small agents (share and quality eps^2)."""
    return _big_small(eps, exact, "det_lb")


def gen_rand_ub(eps, exact: bool = False) -> Instance:
    """Same agents as :func:`gen_det_lb`, tagged for the randomized bound."""
    return _big_small(eps, exact, "rand_ub")


@dataclass(frozen=True)
class SigmaVector:
    """Within-group index (0-based) of the designated agent of groups 1..m-1."""

    n: int
    m: int
    picks: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise FamilyError("n and m must be positive")
        if len(self.picks) != self.m - 1:
            raise FamilyError(f"sigma needs {self.m - 1} entries, got {len(self.picks)}")
        for k, j in enumerate(self.picks):
            if not 0 <= j < self.n:
                raise FamilyError(f"sigma_{k + 1} = {j + 1} is not an agent of group {k + 1}")

    @property
    def agents(self) -> tuple[int, ...]:
        return tuple(k * self.n + j for k, j in enumerate(self.picks))

    @classmethod
    def all(cls, n: int, m: int) -> Iterator["SigmaVector"]:
        for picks in itertools.product(range(n), repeat=m - 1):
            yield cls(n, m, picks)


def gen_xos_instance(n: int, m: int, eps, sigma) -> Instance:
    """m groups of n agents, cost eps each, arriving group by group.

    The clause of agent i in group k has weight 1 on i and on the
    designated agents of groups 1..k-1.
    """
    eps = _check_eps(eps)
    if not isinstance(sigma, SigmaVector):
        sigma = SigmaVector(n, m, tuple(sigma))
    if (sigma.n, sigma.m) != (n, m):
        raise FamilyError("sigma was built for different n, m")
    size = n * m
    designated = sigma.agents
    clauses = []
    for i in range(size):
        row = [Fraction(0)] * size
        row[i] = Fraction(1)
        for d in designated[: i // n]:
            row[d] = Fraction(1)
        clauses.append(row)
    agents = tuple(Agent(i, eps) for i in range(size))
    return Instance(
        agents,
        RewardFunction.xos(clauses),
        label=f"xos(n={n},m={m},eps={eps},sigma={[j + 1 for j in sigma.picks]})",
        family={"family": "xos", "n": str(n), "m": str(m), "eps": str(eps),
                "sigma": ",".join(str(j + 1) for j in sigma.picks)},
    )


def enumerate_xos_distribution(n: int, m: int, eps, cap: int = DEFAULT_XOS_CAP):
    """Every sigma with probability 1/n^(m-1)."""
    count = n ** (m - 1)
    if count > cap:
        raise FamilyError(f"{count} instances exceed the cap of {cap}")
    p = Fraction(1, count)
    return [(gen_xos_instance(n, m, eps, s), p) for s in SigmaVector.all(n, m)]


def example1_labels(sigma: SigmaVector) -> dict[int, str]:
    """G_k / B_k names for the n=2, m=3 illustration; group 3 has no
    designated agent, so its first arrival is called G_3."""
    if (sigma.n, sigma.m) != (2, 3):
        raise FamilyError("labels exist only for n=2, m=3")
    names = {}
    for k in range(3):
        good = sigma.picks[k] if k < 2 else 0
        for j in range(2):
            names[2 * k + j] = f"{'G' if j == good else 'B'}{k + 1}"
    return names


def example1_reward(sigma: SigmaVector, members) -> int:
    """The case-by-case reward of the n=2, m=3 illustration."""
    names = {example1_labels(sigma)[i] for i in members}
    g1, g2 = int("G1" in names), int("G2" in names)
    if "B1" in names:
        return 1
    if "B2" in names:
        return g1 + 1
    if names & {"B3", "G3"}:
        return g1 + g2 + 1
    return g1 + g2


def no_preempt_share(n: int, eps, i: int) -> Fraction:
    """Share of agent i (1-based): 1 - eps^(n-i+1)."""
    return 1 - as_fraction(eps) ** (n - i + 1)


def gen_no_preempt(n: int, eps, q) -> Instance:
    """n agents of common quality q whose shares approach 1 from below."""
    eps = _check_eps(eps)
    q = as_fraction(q)
    if n < 1:
        raise FamilyError("n must be positive")
    if q <= 0:
        raise FamilyError("q must be positive")
    shares = [no_preempt_share(n, eps, i) for i in range(1, n + 1)]
    return additive_instance(
        [a * q for a in shares],
        [a * a * q for a in shares],
        label=f"no_preempt(n={n},eps={eps},q={q})",
        family={"family": "no_preempt", "n": str(n), "eps": str(eps), "q": str(q)},
    )


# -- seeded random suites ---------------------------------------------------

SHARE_GRID = 16


def random_additive_instance(rng: random.Random, max_n: int = 12, zero_cost: bool = True) -> Instance:
    """Weights in 1..6 and shares on the 1/16 grid up to 5/4."""
    n = rng.randint(1, max_n)
    weights, costs = [], []
    low = 0 if zero_cost else 1
    for _ in range(n):
        w = Fraction(rng.randint(1, 6))
        a = Fraction(rng.randint(low, 20), SHARE_GRID)
        weights.append(w)
        costs.append(a * w)
    return additive_instance(weights, costs, label="random")


def random_additive_suite(count: int = 1000, seed: int = 0, max_n: int = 12) -> list[Instance]:
    rng = random.Random(seed)
    out = []
    for k in range(count):
        inst = random_additive_instance(rng, max_n)
        inst.family.update({"family": "random", "seed": str(seed), "index": str(k)})
        out.append(inst)
    return out


def random_oks_instance(rng: random.Random, max_n: int = 12, budget=Fraction(1, 2)) -> OksInstance:
    n = rng.randint(1, max_n)
    pairs = [
        (Fraction(rng.randint(1, 6)), Fraction(rng.randint(0, SHARE_GRID), SHARE_GRID))
        for _ in range(n)
    ]
    return OksInstance.from_pairs(pairs, budget, label="random_oks")


def random_oks_suite(count: int = 300, seed: int = 0, max_n: int = 12, budget=Fraction(1, 2)):
    rng = random.Random(seed)
    return [random_oks_instance(rng, max_n, budget) for _ in range(count)]
