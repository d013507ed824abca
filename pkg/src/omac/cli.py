"""Command-line harness: ``omac {gen,run,opt,cr,sweep,suite}``.

Exit status: 0 on success, 1 when an acceptance criterion (or an internal
consistency check) fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import __version__
from .exact import parse_rational
from .families import (
    FamilyError,
    SigmaVector,
    gen_det_lb,
    gen_no_preempt,
    gen_rand_ub,
    gen_xos_instance,
    random_additive_instance,
    random_oks_instance,
)
from .model import Instance, InstanceError
from .oks import OksInstance, gen_thm9_lb, knapsack_lb_items, phi_reduction
from .online import InfeasibleTrajectory
from .oracle import CapExceeded, DEFAULT_CAP, prefix_opts
from .report import ALGORITHM_NAMES, format_csv, make_algorithm, run_report, sweep_rows, value
from .serialization import SchemaError, dumps_instance, load_instance

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

GEN_FAMILIES = (
    "det_lb",
    "rand_ub",
    "xos",
    "example1",
    "no_preempt",
    "knapsack_lb",
    "knapsack_lb_items",
    "random",
    "random_oks",
)


class UsageError(ValueError):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--family {args.family} needs --{name.replace('_', '-')}")


def _emit(text: str, out: Optional[str], argv: list[str]):
    if out:
        path = Path(out)
        path.write_text(text)
        meta = {
            "argv": argv,
            "version": __version__,
            "python": platform.python_version(),
            "written": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        }
        Path(str(path) + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _load(path: str) -> tuple[Instance, Optional[Fraction]]:
    """OMAC instance from a file; OKS files are reduced and keep their budget."""
    obj = load_instance(path)
    if isinstance(obj, OksInstance):
        return phi_reduction(obj), obj.budget
    return obj, None


# -- subcommands ----------------------------------------------------------------


def cmd_gen(args) -> int:
    fam = args.family
    if fam in ("det_lb", "rand_ub"):
        _need(args, "epsilon")
        gen = gen_det_lb if fam == "det_lb" else gen_rand_ub
        obj = gen(args.epsilon)
    elif fam in ("xos", "example1"):
        if fam == "example1":
            args.n, args.m = 2, 3
        _need(args, "n", "m", "epsilon")
        picks = [s - 1 for s in args.sigma] if args.sigma else [0] * (args.m - 1)
        obj = gen_xos_instance(args.n, args.m, args.epsilon, SigmaVector(args.n, args.m, tuple(picks)))
    elif fam == "no_preempt":
        _need(args, "n", "epsilon", "q")
        obj = gen_no_preempt(args.n, args.epsilon, args.q)
    elif fam in ("knapsack_lb", "knapsack_lb_items"):
        _need(args, "beta", "epsilon")
        obj = gen_thm9_lb(args.beta, args.epsilon) if fam == "knapsack_lb" else knapsack_lb_items(args.beta, args.epsilon)
    else:
        import random

        rng = random.Random(args.seed or 0)
        max_n = args.n or 12
        if fam == "random":
            obj = random_additive_instance(rng, max_n)
        else:
            obj = random_oks_instance(rng, max_n, args.beta or Fraction(1, 2))
    _emit(dumps_instance(obj), args.output, args.argv)
    return EXIT_OK


def cmd_run(args, force_cr: bool = False) -> int:
    inst, budget = _load(args.input)
    beta = args.beta if args.beta is not None else budget
    alg = make_algorithm(args.alg, beta, args.seed)
    report = run_report(inst, alg, with_cr=args.cr or force_cr, cap=args.cap)
    _emit(json.dumps(report, indent=2) + "\n", args.output, args.argv)
    if not args.output:
        return EXIT_OK
    line = f"{alg.name}: expected utility {report['expected_utility']['exact']}"
    if "worst_prefix" in report:
        w = report["worst_prefix"]
        line += f", CR {report['cr']['exact']}, worst prefix {w['i']} at {w['cr']['exact']}"
    print(line)
    return EXIT_OK


def cmd_cr(args) -> int:
    return cmd_run(args, force_cr=True)


def cmd_opt(args) -> int:
    inst, _ = _load(args.input)
    res = prefix_opts(inst, args.cap)
    report = {
        "instance": inst.label,
        "agents": inst.n,
        "opt": value(res.best_utility),
        "opt_set": sorted(i + 1 for i in res.best_set),
        "prefix_opt": [{"i": i, "opt": value(v)} for i, v in res.per_prefix[1:]],
    }
    _emit(json.dumps(report, indent=2) + "\n", args.output, args.argv)
    return EXIT_OK


def cmd_sweep(args) -> int:
    grid = {}
    if args.epsilon_list is not None:
        grid["epsilon"] = args.epsilon_list
    if args.n_list is not None:
        grid["n"] = args.n_list
    if args.q_list is not None:
        grid["q"] = args.q_list
    if args.beta_list is not None:
        grid["beta"] = args.beta_list
    # an empty value list makes the grid empty
    rows = [] if any(not v for v in grid.values()) else sweep_rows(args.family, grid, cap=args.cap)
    _emit(format_csv(rows), args.output, args.argv)
    return EXIT_OK


def cmd_suite(args) -> int:
    from .acceptance import run_suite

    def echo(res):
        print(res.line(), flush=True)
        if args.verbose or not res.passed:
            for c in res.checks:
                mark = "ok  " if c.passed else "FAIL"
                print(f"    {mark} {c.name}" + (f" | {c.detail}" if c.detail else ""), flush=True)

    results = run_suite(args.filter, echo=echo)
    if not results:
        print(f"no criterion matches filter {args.filter!r}", file=sys.stderr)
        return EXIT_USAGE
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    if args.output:
        bundle = [
            {
                "criterion": r.number,
                "title": r.title,
                "tags": list(r.tags),
                "passed": r.passed,
                "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in r.checks],
            }
            for r in results
        ]
        Path(args.output).write_text(json.dumps(bundle, indent=2) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="omac", description="Online multi-agent contract test bench.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a family instance to a file")
    g.add_argument("--family", required=True, choices=GEN_FAMILIES)
    g.add_argument("--epsilon", type=_rational)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--q", type=_rational)
    g.add_argument("--beta", type=_rational)
    g.add_argument("--sigma", type=_int_list, help="1-based designated agent per group, e.g. 1,2")
    g.add_argument("--seed", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    def instance_cmd(name, help_text, func, with_alg=True):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("-i", "--input", required=True)
        s.add_argument("-o", "--output")
        s.add_argument("--cap", type=int, default=DEFAULT_CAP, help="oracle cap as log2 of the team count")
        if with_alg:
            s.add_argument("--alg", required=True, choices=ALGORITHM_NAMES)
            s.add_argument("--beta", type=_rational)
            s.add_argument("--seed", type=int, help="sample one coin flip instead of the exact mixture")
            s.add_argument("--cr", action="store_true", help="add oracle values and per-prefix ratios")
        s.set_defaults(func=func)
        return s

    instance_cmd("run", "run an algorithm over an instance file", cmd_run)
    instance_cmd("cr", "worst-prefix competitive ratio of an algorithm", cmd_cr)
    instance_cmd("opt", "offline optimum of every prefix", cmd_opt, with_alg=False)

    w = sub.add_parser("sweep", help="CSV of ratios over a parameter grid")
    w.add_argument("--family", required=True, choices=("det_lb", "rand_ub", "no_preempt", "knapsack_lb"))
    w.add_argument("--epsilon", dest="epsilon_list", type=_rational_list)
    w.add_argument("--n", dest="n_list", type=_int_list)
    w.add_argument("--q", dest="q_list", type=_rational_list)
    w.add_argument("--beta", dest="beta_list", type=_rational_list)
    w.add_argument("--cap", type=int, default=DEFAULT_CAP)
    w.add_argument("-o", "--output")
    w.set_defaults(func=cmd_sweep)

    s = sub.add_parser("suite", help="run the acceptance criteria")
    s.add_argument("--acceptance", action="store_true", help="run the acceptance criteria (the default)")
    s.add_argument("--filter", help="criterion numbers or tags, comma-separated (e.g. xos or 3,4)")
    s.add_argument("-v", "--verbose", action="store_true", help="print every check")
    s.add_argument("-o", "--output", help="write the results as JSON")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(argv)
    args.argv = argv
    try:
        return args.func(args)
    except (UsageError, SchemaError, InstanceError, FamilyError, CapExceeded, ValueError, OSError) as exc:
        print(f"omac {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleTrajectory as exc:
        print(f"omac {args.command}: internal error: {exc}", file=sys.stderr)
        return EXIT_FAIL
