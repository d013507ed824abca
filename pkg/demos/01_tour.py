"""
A first look at hiring under linear contracts
=============================================

Run with ``python demos/01_tour.py``.
"""

from fractions import Fraction as F

from omac import BP, MAX, additive_instance, alg_omac_expected_utility, brute_force_opt, run_online

# three identical agents: weight 1, share 1/4 each
inst = additive_instance([1, 1, 1], ["1/4", "1/4", "1/4"], label="three")
inst.shares      # (1/4, 1/4, 1/4)
inst.qualities   # (4, 4, 4)

for team in [set(), {0}, {0, 1}, {0, 1, 2}]:
    print(sorted(team), inst.utility(team))
# two agents is best: (1 - 1/2) * 2 = 1

bp = run_online(BP, inst)
for rec, held in bp.sets():
    print("after", rec.step, "BP holds", sorted(i + 1 for i in held), "g =", rec.utility)
# the second agent would push the share to 1/2, which is not below 1/2

mx = run_online(MAX, inst)
print("MAX keeps", sorted(i + 1 for i in mx.final), "g =", mx.final_utility)

print("OPT", brute_force_opt(inst))
print("E[ALG-OMAC]", alg_omac_expected_utility(inst))   # 3/4 >= 1/2 * 1

# a free agent never moves the share but still adds reward
free = additive_instance([2, 3], [0, 1])
free.shares, free.qualities
run_online(BP, free).final

# shares are exact, so 1/2 really is not below 1/2
additive_instance([2], [1]).shares[0] == F(1, 2)
