"""
A complement acting on an abelian normal subgroup
=================================================

Split a group as H V with V abelian and normal, then count orbits of H
on V and on the characters of V.  Every nontrivial orbit size on the dual
shows up as a degree of a character lying over V.
"""

from charcod.orbits import (
    clifford_inclusion_check,
    find_split_abelian,
    orbits_on_dual,
    orbits_on_subgroup,
    relative_degrees,
)
from charcod.zoo import alternating, semidirect_cyclic

for name, G in [("A4", alternating(4)), ("C6 x| C91", semidirect_cyclic(6, 91, 17))]:
    H, V = find_split_abelian(G)
    prim = orbits_on_subgroup(G, H, V)
    dual = orbits_on_dual(G, H, V)
    print(name, "|H| =", H.order, "|V| =", V.order)
    print("  orbit sizes on V:    ", sorted(prim.sizes))
    print("  orbit sizes on Irr(V):", sorted(dual.sizes))
    print("  nontrivial sizes:", sorted(dual.m_star_set))
    print("  degrees over V:  ", sorted(relative_degrees(G, V)))
    ok, wit = clifford_inclusion_check(G, H, V)
    print("  every orbit size is a degree:", ok, wit)
