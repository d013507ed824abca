"""Online execution: BP, MAX, their mixture, and the preemption protocol.

A run feeds agents one at a time to a step function ``(instance, hired,
arrival) -> new hired set``. The engine enforces ``S_i ⊆ S_{i-1} ∪ {i}``
after every step; because a step only ever sees the previous hired set,
dismissed agents cannot come back.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence

from .exact import ExtendedValue
from .model import Instance, InstanceError, principal_utility

__all__ = [
    "InfeasibleTrajectory",
    "StepRecord",
    "Trajectory",
    "OnlineAlgorithm",
    "Mixture",
    "BP",
    "MAX",
    "NOOP",
    "ALG_OMAC",
    "bp_step",
    "max_step",
    "run_online",
    "run_mixture",
    "expected_final_utility",
    "alg_omac_expected_utility",
    "alg_omac_sampled",
    "validate_trajectory",
    "bp_containment_violations",
    "team_utility",
]

HALF = Fraction(1, 2)


class InfeasibleTrajectory(RuntimeError):
    """A step function produced a set outside S_{i-1} ∪ {i}."""


def team_utility(instance: Instance, members) -> ExtendedValue:
    if instance.is_additive:
        return instance.table.utility(members)
    return principal_utility(instance.reward, instance.costs, members)


# -- step functions ---------------------------------------------------------


def bp_step(instance: Instance, hired, arrival: int) -> frozenset[int]:
    """One BP-STEP: re-sort ``hired ∪ {arrival}`` canonically and rebuild,
    keeping agent ``i`` of group ``x`` iff alpha(S ∪ {i}) < b(S, x)."""
    if not instance.is_additive:
        raise InstanceError("BP runs on additive instances only")
    if arrival in hired:
        raise ValueError(f"agent {arrival} is already hired")
    t = instance.table
    a, v, group, D = t.a, t.v, t.group, t.D
    kept = []
    A = F = 0  # totals of the rebuilt set so far
    A_prev = F_prev = 0  # totals of S^{x-1}
    current = 0
    for i in sorted((*hired, arrival), key=t.rank.__getitem__):
        ai = a[i]
        if ai is None:
            continue
        x = group[i]
        if x != current:
            A_prev, F_prev, current = A, F, x
        vi = v[i]
        # (A + a_i)/D < (1 + A_prev/D - F_prev/q_i)/2, cleared of denominators
        if 2 * vi * (A + ai) < vi * (D + A_prev) - F_prev * ai:
            kept.append(i)
            A += ai
            F += vi
    return frozenset(kept)


def _singleton_utility(instance: Instance, i: Optional[int]) -> ExtendedValue:
    if i is None:
        return Fraction(0)
    return team_utility(instance, (i,))


def max_step(instance: Instance, incumbent: Optional[int], arrival: int) -> Optional[int]:
    """Keep whichever singleton has the larger utility; ties keep the incumbent.

    ``None`` is the dummy agent with share 0 and utility 0.
    """
    if _singleton_utility(instance, arrival) > _singleton_utility(instance, incumbent):
        return arrival
    return incumbent


@dataclass(frozen=True)
class OnlineAlgorithm:
    """A named online policy.

    Deterministic kinds: ``bp``, ``max``, ``noop``, ``oks_greedy``,
    ``oks_max``. Randomized kinds ``omac`` and ``oks_beta`` pick one
    deterministic component with a seeded fair coin for the whole run; their
    exact expectation is available through :class:`Mixture`.
    """

    kind: str
    beta: Optional[Fraction] = None
    seed: Optional[int] = None

    DETERMINISTIC = ("bp", "max", "noop", "oks_greedy", "oks_max")
    RANDOMIZED = ("omac", "oks_beta")

    def __post_init__(self):
        if self.kind not in self.DETERMINISTIC + self.RANDOMIZED:
            raise ValueError(f"unknown algorithm kind {self.kind!r}")
        if self.kind in ("oks_greedy", "oks_max", "oks_beta") and self.beta is None:
            raise ValueError(f"{self.kind} needs a budget beta")

    @property
    def name(self) -> str:
        if self.beta is not None:
            return f"{self.kind}(beta={self.beta})"
        return self.kind

    @property
    def is_deterministic(self) -> bool:
        return self.kind in self.DETERMINISTIC

    def mixture(self) -> "Mixture":
        if self.kind == "omac":
            return ALG_OMAC
        if self.kind == "oks_beta":
            return Mixture(
                (
                    (HALF, OnlineAlgorithm("oks_greedy", self.beta)),
                    (HALF, OnlineAlgorithm("oks_max", self.beta)),
                )
            )
        return Mixture(((Fraction(1), self),))

    def resolve(self) -> "OnlineAlgorithm":
        """The deterministic component this run uses (coin flip for mixtures)."""
        if self.is_deterministic:
            return self
        if self.seed is None:
            raise ValueError(
                f"{self.kind} is randomized: give a seed, or use its Mixture "
                "for the exact expectation"
            )
        coin = int(random.Random(self.seed).random() < 0.5)
        return self.mixture().components[coin][1]

    def step(self, instance: Instance, hired: frozenset[int], arrival: int) -> frozenset[int]:
        if self.kind == "bp":
            return bp_step(instance, hired, arrival)
        if self.kind == "max":
            incumbent = next(iter(hired)) if hired else None
            kept = max_step(instance, incumbent, arrival)
            return frozenset() if kept is None else frozenset((kept,))
        if self.kind == "noop":
            return frozenset()
        if self.kind in ("oks_greedy", "oks_max"):
            from .oks import omac_greedy_step, omac_max_step

            fn = omac_greedy_step if self.kind == "oks_greedy" else omac_max_step
            return fn(instance, hired, arrival, self.beta)
        return self.resolve().step(instance, hired, arrival)


BP = OnlineAlgorithm("bp")
MAX = OnlineAlgorithm("max")
NOOP = OnlineAlgorithm("noop")


@dataclass(frozen=True)
class Mixture:
    components: tuple[tuple[Fraction, OnlineAlgorithm], ...]

    def __post_init__(self):
        if sum(p for p, _ in self.components) != 1:
            raise ValueError("mixture probabilities must sum to 1")


ALG_OMAC = Mixture(((HALF, BP), (HALF, MAX)))


# -- trajectories -----------------------------------------------------------


@dataclass(frozen=True)
class StepRecord:
    step: int  # 1-based arrival index i
    added: Optional[int]
    dismissed: frozenset[int]
    utility: ExtendedValue


@dataclass
class Trajectory:
    """Per-arrival record of S_i. Sets are stored as deltas; use
    :meth:`sets` to walk S_1..S_n."""

    algorithm: str
    n: int
    records: list[StepRecord] = field(default_factory=list)
    final: frozenset[int] = frozenset()

    def sets(self) -> Iterator[tuple[StepRecord, frozenset[int]]]:
        current: set[int] = set()
        for rec in self.records:
            current -= rec.dismissed
            if rec.added is not None:
                current.add(rec.added)
            yield rec, frozenset(current)

    def hired_at(self, i: int) -> frozenset[int]:
        if i == 0:
            return frozenset()
        for rec, s in self.sets():
            if rec.step == i:
                return s
        raise IndexError(i)

    @property
    def utilities(self) -> list[ExtendedValue]:
        """g(S_0), g(S_1), ..., g(S_n)."""
        return [Fraction(0)] + [r.utility for r in self.records]

    @property
    def final_utility(self) -> ExtendedValue:
        return self.records[-1].utility if self.records else Fraction(0)


StepFn = Callable[[Instance, frozenset, int], frozenset]


def run_online(alg, instance: Instance, name: Optional[str] = None) -> Trajectory:
    """Run ``alg`` (an :class:`OnlineAlgorithm` or a bare step function)."""
    if isinstance(alg, OnlineAlgorithm):
        alg = alg.resolve()
        step, label = alg.step, alg.name
    else:
        step, label = alg, name or getattr(alg, "__name__", "custom")
    traj = Trajectory(label, instance.n)
    hired: frozenset[int] = frozenset()
    gone: set[int] = set()
    for j in range(instance.n):
        new = frozenset(step(instance, hired, j))
        allowed = hired | {j}
        if not new <= allowed:
            raise InfeasibleTrajectory(
                f"{label}: step {j + 1} hired {sorted(x + 1 for x in new - allowed)} "
                "outside S_(i-1) ∪ {i}"
            )
        if new & gone:
            raise InfeasibleTrajectory(f"{label}: step {j + 1} rehired a dismissed agent")
        dismissed = hired - new
        gone |= dismissed
        if j not in new:
            gone.add(j)
        traj.records.append(
            StepRecord(j + 1, j if j in new else None, dismissed, team_utility(instance, new))
        )
        hired = new
    traj.final = hired
    return traj


def run_mixture(mix: Mixture, instance: Instance) -> list[tuple[Fraction, Trajectory]]:
    return [(p, run_online(alg, instance)) for p, alg in mix.components]


def expected_final_utility(runs: Sequence[tuple[Fraction, Trajectory]]) -> ExtendedValue:
    total: ExtendedValue = Fraction(0)
    for p, traj in runs:
        total = total + p * traj.final_utility
    return total


def alg_omac_expected_utility(instance: Instance) -> ExtendedValue:
    """Exactly (g(BP(I)) + g(MAX(I))) / 2."""
    if not instance.is_additive:
        raise InstanceError("ALG-OMAC runs on additive instances only")
    return expected_final_utility(run_mixture(ALG_OMAC, instance))


def alg_omac_sampled(instance: Instance, seed: int) -> Trajectory:
    if not instance.is_additive:
        raise InstanceError("ALG-OMAC runs on additive instances only")
    return run_online(OnlineAlgorithm("omac", seed=seed), instance)


# -- independent checks -----------------------------------------------------


def validate_trajectory(traj: Trajectory) -> list[str]:
    """Re-check feasibility and irrevocability from the reconstructed sets.

    Returns a list of violations (empty when the trajectory is valid).
    """
    problems = []
    previous: frozenset[int] = frozenset()
    left: set[int] = set()
    steps = 0
    for rec, current in traj.sets():
        steps += 1
        i = rec.step - 1
        if rec.step != steps:
            problems.append(f"record {steps} is labelled step {rec.step}")
        extra = current - previous - {i}
        if extra:
            problems.append(f"step {rec.step}: {sorted(x + 1 for x in extra)} not in S_(i-1) ∪ {{i}}")
        back = current & left
        if back:
            problems.append(f"step {rec.step}: {sorted(x + 1 for x in back)} reappeared")
        left |= previous - current
        if i not in current:
            left.add(i)
        previous = current
    if steps != traj.n:
        problems.append(f"{steps} records for {traj.n} arrivals")
    if previous != traj.final:
        problems.append("final set does not match the last record")
    return problems


def bp_containment_violations(instance: Instance, traj: Trajectory) -> list[str]:
    """Every group x that BP holds agents from must satisfy
    alpha(S^x) < b(S, x) strictly, after every step.

    Works on Fractions from per-group running totals, independently of the
    integer pass inside :func:`bp_step`.
    """
    from .balance import balance_level

    qs = instance.quality_structure
    shares, weights = instance.shares, instance.reward.weights
    share_in = [Fraction(0)] * (qs.p + 1)
    reward_in = [Fraction(0)] * (qs.p + 1)
    count = [0] * (qs.p + 1)
    problems = []
    for rec in traj.records:
        moves = [(i, -1) for i in rec.dismissed]
        if rec.added is not None:
            moves.append((rec.added, 1))
        for i, sign in moves:
            x = qs.group_of[i]
            share_in[x] += sign * shares[i]
            reward_in[x] += sign * weights[i]
            count[x] += sign
        A = F = Fraction(0)
        for x in range(1, qs.p + 1):
            if count[x]:
                b = balance_level(A, F, qs.quality(x))
                if not A + share_in[x] < b:
                    problems.append(
                        f"step {rec.step}: alpha(S^{x}) = {A + share_in[x]} is not below b = {b}"
                    )
            A += share_in[x]
            F += reward_in[x]
    return problems
