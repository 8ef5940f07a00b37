import itertools
import math

import numpy as np
import pytest

from charcod.chartab import (
    class_constants,
    dixon_table,
    dump_table,
    is_faithful,
    kernel,
    lies_over,
    load_table,
    matches_reference,
    reference_table,
    restrict,
    subgroup_table,
    table_signature,
    verify_table,
    working_prime,
)
from charcod.cyclotomic import Cyclotomic
from charcod.perm import is_normal, quotient, subgroup_generated
from charcod.structure import is_abelian, normal_subgroups
from charcod.zoo import cyclic, dihedral, elementary_abelian, symmetric

from conftest import small_groups


def brute_constants(G):
    r = len(G.classes)
    a = np.zeros((r, r, r), dtype=np.int64)
    for k, ck in enumerate(G.classes):
        z = ck[0]
        for i, ci in enumerate(G.classes):
            for x in ci:
                y = G.mul(int(G.inverses[x]), z)
                a[i, G.class_of[y], k] += 1
    return a


@pytest.mark.parametrize("name,G", small_groups())
def test_class_constants_against_double_loop(name, G):
    a = class_constants(G)
    assert np.array_equal(a, brute_constants(G))
    r = len(G.classes)
    sizes = np.array(G.class_sizes)
    assert np.array_equal(a[0], np.eye(r, dtype=np.int64))
    for i, j in itertools.product(range(r), repeat=2):
        assert (a[i, j] * sizes).sum() == sizes[i] * sizes[j]


def test_working_prime():
    l = working_prime(546, 546)
    assert l % 546 == 1 and l > 2 * math.sqrt(546)
    assert working_prime(6, 6) == 7


@pytest.mark.parametrize("name,G", small_groups())
def test_table_invariants(name, G):
    T = dixon_table(G)
    verify_table(T)
    assert len(T) == len(G.classes)
    assert sum(d * d for d in T.degrees) == G.order
    assert all(G.order % d == 0 for d in T.degrees)
    assert list(T.degrees) == sorted(T.degrees)
    assert all(v == 1 for v in T.rows[0])
    if is_abelian(G):
        assert len(T) == G.order and set(T.degrees) == {1}


@pytest.mark.parametrize("name,G", small_groups())
def test_orthogonality_exact_independent(name, G):
    T = dixon_table(G)
    rows = T.rows
    sizes = T.class_sizes
    for a, b in itertools.combinations_with_replacement(range(len(T)), 2):
        s = sum((sizes[c] * rows[a][c] * rows[b][c].conjugate() for c in range(len(sizes))),
                Cyclotomic.rational(0))
        assert s == (G.order if a == b else 0)


def test_small_tables(S3, A5):
    T = dixon_table(cyclic(2))
    assert sorted(tuple(int(v.as_rational()) for v in r) for r in T.rows) == [(1, -1), (1, 1)]
    T = dixon_table(S3)
    assert T.degrees == (1, 1, 2) or list(T.degrees) == [1, 1, 2]
    two = T.rows[2]
    assert sorted(int(v.as_rational()) for v in two) == [-1, 0, 2]
    T = dixon_table(A5)
    assert list(T.degrees) == [1, 3, 3, 4, 5]
    irr = [v for r in T.rows if r[0] == 3 for v in r if v.as_rational() is None]
    assert len(irr) == 4
    for x in irr:
        assert x * x == x + 1 or (1 - x) * (1 - x) == (1 - x) + 1


def test_determinism(S4):
    from charcod.zoo import symmetric as sym

    a = dixon_table(S4, seed=0)
    b = dixon_table(sym(4), seed=0)
    assert np.array_equal(a.canon, b.canon)
    c = dixon_table(sym(4), seed=5)
    assert table_signature(a.class_sizes, a.rows, 12) == table_signature(c.class_sizes, c.rows, 12)


@pytest.mark.parametrize("name,G", [
    ("S3", symmetric(3)), ("S4", symmetric(4)), ("A4", None), ("A5", None), ("Q8", None), ("D8", dihedral(4))])
def test_golden_tables(name, G, A4, A5, Q8):
    G = G or {"A4": A4, "A5": A5, "Q8": Q8}[name]
    assert matches_reference(dixon_table(G), reference_table(name))


def test_golden_tables_discriminate(S4):
    assert not matches_reference(dixon_table(S4), reference_table("A4"))


def test_kernels(S4, Q8):
    T = dixon_table(S4)
    assert kernel(T, 0).order == 24
    sign = next(i for i in range(len(T)) if T.degrees[i] == 1 and i != 0)
    K = kernel(T, sign)
    assert K.order == 12 and is_normal(S4, K)
    T = dixon_table(Q8)
    assert is_faithful(T, len(T) - 1)


@pytest.mark.parametrize("name,G", small_groups())
def test_kernel_by_definition(name, G):
    T = dixon_table(G)
    vals = T.complex_values()
    for i in range(len(T)):
        brute = [x for x in range(G.order) if abs(vals[i, G.class_of[x]] - T.degrees[i]) < 1e-9]
        assert list(kernel(T, i).indices) == brute


def test_restriction_examples(S3, Q8):
    A3 = subgroup_generated(S3, [next(i for i in range(6) if S3.element_orders[i] == 3)])
    T = dixon_table(S3)
    TN, _ = subgroup_table(A3)
    assert list(restrict(T, 0, A3, TN)) == [1, 0, 0]
    m = restrict(T, 2, A3, TN)
    assert sorted(m) == [0, 1, 1] and m[0] == 0
    Z = subgroup_generated(Q8, [i for i in range(8) if Q8.element_orders[i] == 2])
    T = dixon_table(Q8)
    TZ, _ = subgroup_table(Z)
    assert list(restrict(T, 4, Z, TZ)) == [0, 2]
    assert lies_over(T, 4, Z, TZ, 1) and not lies_over(T, 4, Z, TZ, 0)


@pytest.mark.parametrize("name,G", small_groups())
def test_kernel_quotient_has_faithful_match(name, G):
    T = dixon_table(G)
    for i in range(len(T)):
        if T.degrees[i] == 1:
            continue
        N = kernel(T, i)
        Q, proj = quotient(G, N)
        TQ = dixon_table(Q)
        # values transported along the projection
        want = np.round(T.complex_values()[i], 9)
        qvals = TQ.complex_values()[:, Q.class_of[proj[G.class_reps]]]
        hits = [j for j in range(len(TQ)) if np.allclose(qvals[j], want)]
        assert len(hits) == 1 and is_faithful(TQ, hits[0])
        break


def test_dump_roundtrip(A5):
    T = dixon_table(A5)
    d = load_table(dump_table(T, "A5"))
    assert d.label == "A5" and d.order == 60 and d.degrees == list(T.degrees)
    assert table_signature(d.sizes, d.rows, 30) == table_signature(T.class_sizes, T.rows, 30)


def test_large_exponent_table():
    T = dixon_table(elementary_abelian(7, 2))
    verify_table(T)
    assert len(T) == 49
