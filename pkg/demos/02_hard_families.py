"""
Hard instances and what the oracle says about them
==================================================

Run with ``python demos/02_hard_families.py``.
"""

from fractions import Fraction as F

from omac import (
    ALG_OMAC,
    BP,
    MAX,
    a_recurrence,
    adaptive_prefix_adversary,
    gen_det_lb,
    gen_rand_ub,
)
from omac.adversary import distribution_expectation, newest_group_strategy, prefix_series
from omac.exact import to_decimal

# one big agent (share 1 - eps^2) then many small ones (share eps^2)
for eps in (F(1, 10), F(1, 20)):
    det = gen_det_lb(eps)
    print(det.label, "n =", det.n)
    print("  BP worst prefix ", adaptive_prefix_adversary(BP, det))    # BP turns agent 1 away
    i, cr = adaptive_prefix_adversary(MAX, det)
    print("  MAX worst prefix", i, cr, "=", 4 * eps * (1 - eps**2))

# mixing the two gets 1/2, and not much more
for eps in (F(1, 10), F(1, 20), F(1, 100)):
    series = prefix_series(ALG_OMAC, gen_rand_ub(eps))
    print("rand_ub", eps, "CR on N =", to_decimal(series.ratios[-1], 6))

# XOS: two groups of two, the good agent hidden among them
rows = distribution_expectation(newest_group_strategy(2), 2, 3, F(1, 10))
exp_u, exp_opt, table = rows
print("example with n=2, m=3:", exp_u, "/", exp_opt, "=", to_decimal(exp_u / exp_opt, 6))
for inst, traj, u, opt in table:
    print("  ", inst.family["sigma"], sorted(i + 1 for i in traj.final), u, opt)

a = a_recurrence(2, 3)
a[(1, 1)]                      # 2/3
a_recurrence(10, 10)[(1, 1)]   # 1/10 + 1/10 - 1/100
