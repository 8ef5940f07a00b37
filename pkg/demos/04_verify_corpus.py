"""
Checking the codegree facts over the shipped corpus
===================================================

Run every default check on a handful of groups, then print the records
of one group in detail.  The command line tool ``charcod verify`` does the
same over the whole corpus.
"""

from charcod.verify import DEFAULT_CHECKS, check_group, theorem_d_classify
from charcod.zoo import dihedral, quaternion8, semidirect_cyclic, symmetric

groups = {
    "S4": symmetric(4),
    "Q8": quaternion8(),
    "D14": dihedral(7),
    "C5 x| C11": semidirect_cyclic(5, 11, 3),
}

for name, G in groups.items():
    statuses = [r.status for r in check_group(G, DEFAULT_CHECKS)]
    print(f"{name:10s} pass {statuses.count('pass'):2d} skip {statuses.count('skipped'):2d} "
          f"fail {statuses.count('fail')}  shape {theorem_d_classify(G)}")

# the records for S4 in full
for r in check_group(groups["S4"], DEFAULT_CHECKS):
    print(r.check, r.params, r.status, r.quantities if r.status == "pass" else r.reason)
