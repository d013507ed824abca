"""Exact test bench for online multi-agent contracts with free dismissal.

Everything is computed on :class:`fractions.Fraction`; the only non-rational
values are the signed infinities in :mod:`omac.exact`.
"""

from .exact import NEG_INF, POS_INF, format_value, parse_rational
from .model import (
    Agent,
    Instance,
    InstanceError,
    RewardFunction,
    Team,
    additive_instance,
    build_quality_structure,
    eval_reward,
    marginal,
    principal_utility,
    quality_of_agent,
    quality_of_set,
    share_of,
)
from .balance import BalanceQuery, auxiliary_share, balance_point, crosses_balance_point
from .online import (
    ALG_OMAC,
    BP,
    MAX,
    OnlineAlgorithm,
    Trajectory,
    alg_omac_expected_utility,
    alg_omac_sampled,
    bp_step,
    max_step,
    run_online,
    validate_trajectory,
)
from .oracle import OracleResult, best_singleton, brute_force_opt, prefix_opts
from .families import (
    SigmaVector,
    enumerate_xos_distribution,
    gen_det_lb,
    gen_no_preempt,
    gen_rand_ub,
    gen_xos_instance,
)
from .adversary import a_recurrence, adaptive_prefix_adversary, competitive_ratio
from .oks import OksInstance, OksItem, alg_omac_beta_expected, gen_thm9_lb, phi_reduction
from .serialization import load_instance, save_instance

__version__ = "0.1.0"

__all__ = [
    "ALG_OMAC",
    "Agent",
    "BP",
    "BalanceQuery",
    "Instance",
    "InstanceError",
    "MAX",
    "NEG_INF",
    "OksInstance",
    "OksItem",
    "OnlineAlgorithm",
    "OracleResult",
    "POS_INF",
    "RewardFunction",
    "SigmaVector",
    "Team",
    "Trajectory",
    "a_recurrence",
    "adaptive_prefix_adversary",
    "additive_instance",
    "alg_omac_beta_expected",
    "alg_omac_expected_utility",
    "alg_omac_sampled",
    "auxiliary_share",
    "balance_point",
    "best_singleton",
    "bp_step",
    "brute_force_opt",
    "build_quality_structure",
    "competitive_ratio",
    "crosses_balance_point",
    "enumerate_xos_distribution",
    "eval_reward",
    "format_value",
    "gen_det_lb",
    "gen_no_preempt",
    "gen_rand_ub",
    "gen_thm9_lb",
    "gen_xos_instance",
    "load_instance",
    "marginal",
    "max_step",
    "parse_rational",
    "phi_reduction",
    "prefix_opts",
    "principal_utility",
    "quality_of_agent",
    "quality_of_set",
    "run_online",
    "save_instance",
    "share_of",
    "validate_trajectory",
]
