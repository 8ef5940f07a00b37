"""
Character tables of small permutation groups
============================================

Build a few groups, compute their character tables exactly and look at
the degrees, the class sizes and one row of values.
"""

from charcod.chartab import dixon_table, dump_table, verify_table
from charcod.zoo import alternating, semidirect_cyclic, symmetric

# S4 has five classes and five irreducible characters
G = symmetric(4)
T = dixon_table(G)
print("S4 degrees:", T.degrees)
print("class sizes:", [len(c) for c in G.classes])

# the full table in the text dump format
print(dump_table(T, "symmetric(4)"))

# A5 needs the golden ratio: values live in Q(zeta_5)
T = dixon_table(alternating(5))
verify_table(T)  # exact orthogonality, raises on failure
print("A5 degrees:", T.degrees)
print("row 1 as complex numbers:", [round(float(v.real), 4) for v in T.complex_values()[1]])

# a nonabelian group of order 21
T = dixon_table(semidirect_cyclic(3, 7, 2))
print("order 21 degrees:", T.degrees)
