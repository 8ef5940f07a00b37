import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from charcod.chartab import dixon_table, subgroup_table, restriction_multiplicities
from charcod.codegree import (
    character_order,
    codegree,
    graph_components,
    graph_edges,
    group_profile,
    lemma21_divisibility_check,
    lemma21_divisibility_witness,
    lemma21_quotient_check,
    linear_codegree_is_order_check,
    pairwise_coprime,
    to_dot,
)
from charcod.perm import subgroup_generated, trivial_subgroup, whole_group
from charcod.structure import normal_subgroups
from charcod.zoo import cyclic, elementary_abelian, semidirect_cyclic

from conftest import small_groups


def brute_codegree(G, T, row):
    vals = T.complex_values()[row]
    ker = sum(1 for x in range(G.order) if abs(vals[G.class_of[x]] - T.degrees[row]) < 1e-9)
    index = G.order // ker
    assert index % T.degrees[row] == 0
    return index // T.degrees[row]


@pytest.mark.parametrize("name,G", small_groups())
def test_codegree_against_brute_kernel(name, G):
    T = dixon_table(G)
    prof = group_profile(G)
    for i in range(len(T)):
        c = codegree(T, i)
        assert c == brute_codegree(G, T, i) == prof.per_character[i]
        assert c >= T.degrees[i]
        index = c * T.degrees[i]  # |G : Ker chi|
        assert (c == T.degrees[i]) == (index == T.degrees[i] ** 2)
    assert 1 in prof.cod_set
    assert [i for i, c in enumerate(prof.per_character) if c == 1] == [0]
    assert all(G.order % c == 0 for c in prof.cod_set)
    for p, vals in prof.cod_p.items():
        assert vals == tuple(n for n in prof.cod_set if n % p == 0)
    assert prof.k_value == max((len(v) for v in prof.cod_p.values()), default=0)


def test_codegree_examples(S3, F546):
    T = dixon_table(S3)
    assert codegree(T, 0) == 1
    assert codegree(T, 2) == 3
    T = dixon_table(F546)
    faithful6 = [i for i in range(len(T)) if T.degrees[i] == 6 and codegree(T, i) == 91]
    assert faithful6


def test_profiles(A5, F546, S4, Q8):
    assert group_profile(elementary_abelian(5, 2)).cod_set == (1, 5)
    p = group_profile(F546)
    assert p.cod_set == (1, 2, 3, 6, 7, 13, 91) and p.k_value == 2
    assert group_profile(A5).cod_set == (1, 12, 15, 20)
    assert group_profile(S4).cod_set == (1, 2, 3, 8)
    assert group_profile(Q8).cod_set == (1, 2, 4)
    assert group_profile(cyclic(1)).cod_set == (1,)
    assert group_profile(cyclic(1)).k_value == 0


def test_graphs(A5, F546):
    p = group_profile(F546)
    assert graph_components(p.codegree_graph) == [(2, 3), (7, 13)]
    assert graph_components(p.gk_graph) == [(2, 3), (7, 13)]
    assert graph_components(group_profile(A5).codegree_graph) == [(2, 3, 5)]
    assert graph_components(group_profile(A5).gk_graph) == [(2,), (3,), (5,)]
    assert graph_components({2: frozenset(), 3: frozenset()}) == [(2,), (3,)]


def test_gk_graph_by_brute_force(F546):
    prof = group_profile(F546)
    orders = {int(o) for o in F546.element_orders}
    for p, q in [(2, 3), (2, 7), (3, 13), (7, 13)]:
        assert (q in prof.gk_graph[p]) == any(o % (p * q) == 0 for o in orders)


def test_dot_output(F546):
    dot = to_dot(group_profile(F546).codegree_graph, "codegree")
    assert dot.splitlines() == ["graph codegree {", "  2;", "  3;", "  7;", "  13;",
                                "  2 -- 3;", "  7 -- 13;", "}"]
    assert graph_edges(group_profile(F546).codegree_graph) == [(2, 3), (7, 13)]


@pytest.mark.parametrize("name,G", small_groups())
def test_coprime_component_count(name, G):
    prof = group_profile(G)
    if G.order > 1 and pairwise_coprime(prof.cod_set):
        assert len(graph_components(prof.codegree_graph)) == len(prof.cod_set) - 1


@pytest.mark.parametrize("name,G", small_groups())
def test_lemma21_on_lattice(name, G):
    for N in normal_subgroups(G):
        assert lemma21_quotient_check(G, N)
        assert lemma21_divisibility_check(G, N)


def test_lemma21_examples(S3, S4, Q8, F546):
    assert lemma21_quotient_check(S3, trivial_subgroup(S3))
    assert lemma21_divisibility_check(S3, whole_group(S3))
    V4 = [N for N in normal_subgroups(S4) if N.order == 4][0]
    assert lemma21_quotient_check(S4, V4)
    Z = [N for N in normal_subgroups(Q8) if N.order == 2][0]
    assert lemma21_quotient_check(Q8, Z)
    K = [N for N in normal_subgroups(F546) if N.order == 91][0]
    assert lemma21_divisibility_witness(F546, K) is None
    # theta of order 7 sits under characters with codegree 7 or 91
    T = dixon_table(F546)
    TK, _ = subgroup_table(K)
    m = restriction_multiplicities(T, K, TK)
    for j in range(len(TK)):
        if codegree(TK, j) == 7:
            above = {codegree(T, i) for i in np.flatnonzero(m[:, j])}
            assert above <= {7, 91} and above


def test_linear_codegree_is_order(S4):
    T = dixon_table(cyclic(4))
    assert sorted(codegree(T, i) for i in range(4)) == [1, 2, 4, 4]
    for G in (cyclic(4), S4, cyclic(12)):
        assert linear_codegree_is_order_check(dixon_table(G))
    T = dixon_table(S4)
    assert character_order(T, 1) == 2 == codegree(T, 1)


@given(st.lists(st.integers(1, 200), max_size=6))
def test_pairwise_coprime_matches_definition(nums):
    s = sorted(set(nums))
    want = all(math.gcd(a, b) == 1 for a in s for b in s if a < b)
    assert pairwise_coprime(nums) == want
