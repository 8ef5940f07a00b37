"""
Codegrees and the prime graphs
==============================

The codegree of a character is |G : ker chi| / chi(1).  Here we compute
the codegree set of a few groups and compare two prime graphs.
"""

from charcod.codegree import group_profile, to_dot
from charcod.zoo import dihedral, elementary_abelian, semidirect_cyclic, symmetric

for name, G in [("C3^2", elementary_abelian(3, 2)),
                ("D10", dihedral(5)),
                ("S4", symmetric(4))]:
    prof = group_profile(G)
    print(f"{name:6s} order {G.order:4d} cod {prof.cod_set}")

# C6 acting on C91: seven codegrees, and the largest number of new primes
# a normal section can add is two
prof = group_profile(semidirect_cyclic(6, 91, 17))
print("C6 x| C91 cod:", prof.cod_set, "k =", prof.k_value)
for p, vals in prof.cod_p.items():
    print(f"  {p}-parts:", vals)

# the codegree prime graph next to the element-order graph
print(to_dot(prof.codegree_graph, "codegree"))
print(to_dot(prof.gk_graph, "gk"))
