"""Run reports and sweep tables.

Reports hold exact rational strings next to display-only decimals. Nothing
time-dependent goes into report content; run metadata is written to a
``.meta.json`` sidecar by the CLI.
"""

from __future__ import annotations

import csv
import io
import itertools
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .adversary import competitive_ratio, prefix_series
from .exact import ExtendedValue, format_value, to_decimal
from .families import FamilyError, gen_det_lb, gen_no_preempt, gen_rand_ub
from .model import Instance, InstanceError
from .oks import gen_thm9_lb
from .online import Mixture, OnlineAlgorithm, Trajectory, run_online
from .oracle import CapExceeded, DEFAULT_CAP, prefix_opts

__all__ = [
    "value",
    "ALGORITHM_NAMES",
    "make_algorithm",
    "trajectory_rows",
    "run_report",
    "SWEEP_COLUMNS",
    "SWEEP_FAMILIES",
    "sweep_rows",
    "format_csv",
]

ALGORITHM_NAMES = ("bp", "max", "omac", "oks-beta", "noop")


def value(v: ExtendedValue) -> dict:
    return {"exact": format_value(v), "decimal": to_decimal(v)}


def _ids(members) -> list[int]:
    return sorted(i + 1 for i in members)


def make_algorithm(name: str, beta=None, seed: Optional[int] = None) -> OnlineAlgorithm:
    if name not in ALGORITHM_NAMES:
        raise ValueError(f"unknown algorithm {name!r}")
    if name == "oks-beta":
        return OnlineAlgorithm("oks_beta", Fraction(1, 2) if beta is None else beta, seed)
    if name == "omac":
        return OnlineAlgorithm("omac", seed=seed)
    return OnlineAlgorithm(name)


def _check_runnable(alg: OnlineAlgorithm, instance: Instance):
    if alg.kind in ("bp", "omac", "oks_beta") and not instance.is_additive:
        raise InstanceError(f"{alg.kind} needs an additive instance, got an XOS reward")
    if alg.kind == "oks_beta":
        over = [i + 1 for i, s in enumerate(instance.shares) if not s <= 1]
        if over:
            raise InstanceError(f"oks-beta needs every share <= 1; agents {over} exceed it")


def trajectory_rows(traj: Trajectory) -> list[dict]:
    rows = []
    for rec, current in traj.sets():
        rows.append(
            {
                "step": rec.step,
                "added": None if rec.added is None else rec.added + 1,
                "dismissed": _ids(rec.dismissed),
                "hired": _ids(current),
                "utility": value(rec.utility),
            }
        )
    return rows


def run_report(
    instance: Instance,
    alg: OnlineAlgorithm,
    with_cr: bool = False,
    cap: int = DEFAULT_CAP,
    include_trajectory: bool = True,
) -> dict:
    """Final (expected) utility, per-component trajectories and, with
    ``with_cr``, the oracle values and per-prefix ratios."""
    _check_runnable(alg, instance)
    if alg.is_deterministic or alg.seed is not None:
        components = [(Fraction(1), alg.resolve())]
    else:
        components = list(alg.mixture().components)
    report: dict = {
        "instance": instance.label,
        "agents": instance.n,
        "algorithm": alg.name,
        "seed": alg.seed,
    }
    oracle = prefix_opts(instance, cap) if with_cr else None
    if oracle is not None:
        series = prefix_series(Mixture(tuple(components)), instance, oracle)
        runs = series.trajectories
    else:
        runs = tuple((p, run_online(a, instance)) for p, a in components)
    expected: ExtendedValue = Fraction(0)
    comp_out = []
    for p, traj in runs:
        expected = expected + p * traj.final_utility
        entry = {
            "algorithm": traj.algorithm,
            "probability": format_value(p),
            "final_set": _ids(traj.final),
            "final_utility": value(traj.final_utility),
        }
        if include_trajectory:
            entry["trajectory"] = trajectory_rows(traj)
        comp_out.append(entry)
    report["components"] = comp_out
    report["expected_utility"] = value(expected)
    if oracle is not None:
        report["opt"] = value(oracle.best_utility)
        report["opt_set"] = _ids(oracle.best_set)
        report["cr"] = value(competitive_ratio(expected, oracle.best_utility))
        report["prefix"] = [
            {
                "i": i,
                "utility": value(u),
                "opt": value(o),
                "cr": value(r),
            }
            for i, (u, o, r) in enumerate(zip(series.utilities, series.optima, series.ratios), 1)
        ]
        k, worst = series.worst
        report["worst_prefix"] = {"i": k, "cr": value(worst)}
    return report


# -- sweeps --------------------------------------------------------------------

SWEEP_COLUMNS = (
    "family",
    "epsilon",
    "n",
    "q",
    "beta",
    "agents",
    "opt",
    "bp_cr",
    "max_cr",
    "omac_cr",
    "oks_beta_cr",
    "bp_worst_cr",
    "max_worst_cr",
    "omac_worst_cr",
    "oks_beta_worst_cr",
    "status",
)

SWEEP_FAMILIES = {
    "det_lb": ("epsilon",),
    "rand_ub": ("epsilon",),
    "no_preempt": ("n", "epsilon", "q"),
    "knapsack_lb": ("beta", "epsilon"),
}


def _build(family: str, point: dict) -> Instance:
    if family == "det_lb":
        return gen_det_lb(point["epsilon"])
    if family == "rand_ub":
        return gen_rand_ub(point["epsilon"])
    if family == "no_preempt":
        return gen_no_preempt(point["n"], point["epsilon"], point["q"])
    return gen_thm9_lb(point["beta"], point["epsilon"])


def sweep_rows(family: str, grid: dict, beta=Fraction(1, 2), cap: int = DEFAULT_CAP) -> list[dict]:
    """One row per point of the cartesian grid over the family's parameters.

    ``grid`` maps parameter names to lists of values. Rows whose instance
    exceeds the oracle cap are marked rather than dropped.
    """
    if family not in SWEEP_FAMILIES:
        raise ValueError(f"sweep supports {', '.join(SWEEP_FAMILIES)}; got {family!r}")
    names = SWEEP_FAMILIES[family]
    for name in names:
        if name not in grid:
            raise ValueError(f"family {family} needs values for --{name}")
    rows = []
    for combo in itertools.product(*(grid[name] for name in names)):
        point = dict(zip(names, combo))
        row = {c: "" for c in SWEEP_COLUMNS}
        row["family"] = family
        for name, v in point.items():
            row[name] = format_value(v) if isinstance(v, Fraction) else str(v)
        b = point.get("beta", beta)
        row["beta"] = format_value(b)
        try:
            inst = _build(family, point)
            row["agents"] = str(inst.n)
            oracle = prefix_opts(inst, cap)
        except CapExceeded:
            row["status"] = "cap_exceeded"
            rows.append(row)
            continue
        except (FamilyError, InstanceError, ValueError) as exc:
            row["status"] = f"error: {exc}"
            rows.append(row)
            continue
        row["opt"] = format_value(oracle.best_utility)
        algs = {
            "bp": OnlineAlgorithm("bp"),
            "max": OnlineAlgorithm("max"),
            "omac": OnlineAlgorithm("omac"),
            "oks_beta": OnlineAlgorithm("oks_beta", b),
        }
        for key, alg in algs.items():
            series = prefix_series(alg, inst, oracle)
            row[f"{key}_cr"] = format_value(series.ratios[-1]) if series.ratios else "1"
            row[f"{key}_worst_cr"] = format_value(series.worst[1])
        row["status"] = "ok"
        rows.append(row)
    return rows


def format_csv(rows: Iterable[dict], columns: Sequence[str] = SWEEP_COLUMNS) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()
