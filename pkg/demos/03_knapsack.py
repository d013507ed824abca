"""
Knapsack items as agents
========================

Run with ``python demos/03_knapsack.py``.
"""

from fractions import Fraction as F

from omac import brute_force_opt
from omac.oks import (
    OksInstance,
    alg_omac_beta_expected,
    gen_thm9_lb,
    oks_run_greedy,
    oks_run_max,
    phi_reduction,
    knapsack_lb_items,
)

half = F(1, 2)

# an item (value p, cost c) becomes an agent with reward p and share c
oks = OksInstance.from_pairs([(2, "1/4"), (1, "1/8"), (3, "1/2")], half)
inst = phi_reduction(oks)
inst.shares, inst.costs
oks_run_greedy(oks), oks_run_max(oks)
print("E =", alg_omac_beta_expected(inst, half), " OPT =", brute_force_opt(inst)[1])

# the two tightness families
for beta in (F(1, 4), half):
    for eps in (F(1, 10), F(1, 100)):
        fam = gen_thm9_lb(beta, eps)
        e, opt = alg_omac_beta_expected(fam, beta), brute_force_opt(fam)[1]
        print(fam.label, "ratio", float(e / opt))

knapsack_lb_items(half, F(1, 10)).costs    # budget filled exactly

# Max may hold an item that is over budget; here it is worth 5/16 against 5/4
bad = OksInstance.from_pairs([(4, "11/16"), (5, "15/16")], half)
binst = phi_reduction(bad)
print("greedy", set(oks_run_greedy(bad)), "max", oks_run_max(bad))
print("E =", alg_omac_beta_expected(binst, half), " OPT/4 =", brute_force_opt(binst)[1] / 4)
