import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import n_order

from charcod.codegree import group_profile
from charcod.perm import quotient, subgroup_generated
from charcod.structure import is_nilpotent, normal_subgroups
from charcod.verify import (
    CheckRecord,
    ElementaryAbelian,
    FrobeniusPrimeComplement,
    check_group,
    exit_status,
    lemma_new_primes_check,
    log2_bound_holds,
    new_primes,
    p_length_check,
    report_json,
    run_corpus,
    theorem_a_check,
    theorem_b_check,
    theorem_c_check,
    theorem_d_check,
    theorem_d_classify,
    theorem_d_predicate,
)
from charcod.zoo import cyclic, dihedral, elementary_abelian, parse_corpus, semidirect_cyclic


def test_log2_bound_exact():
    # 5 <= 2*log2(6) + 0  since 2^5 = 32 <= 36
    assert log2_bound_holds(5, 2, 6, 0)
    assert not log2_bound_holds(6, 2, 6, 0)
    assert log2_bound_holds(389, 24, 1, 389)
    assert not log2_bound_holds(390, 24, 1, 389)


@given(st.integers(0, 60), st.integers(0, 30), st.integers(1, 50), st.integers(0, 20))
def test_log2_bound_matches_reals(lhs, coef, x, const):
    exact = log2_bound_holds(lhs, coef, x, const)
    real = coef * math.log2(x) + const
    if abs(lhs - real) > 1e-9:
        assert exact == (lhs <= real)


def test_predicate_examples(S3, Q8, A5):
    assert theorem_d_predicate(group_profile(S3))
    assert not theorem_d_predicate(group_profile(Q8))
    assert not theorem_d_predicate(group_profile(A5))


def test_classify_examples(F546):
    assert theorem_d_classify(elementary_abelian(3, 2)) == ElementaryAbelian(3)
    assert theorem_d_classify(dihedral(5)) == FrobeniusPrimeComplement(2, 5, 1)
    assert theorem_d_classify(F546) is None


def test_theorem_d_check_examples(S3, A5):
    r = theorem_d_check(S3)
    assert r.status == "pass" and r.quantities["predicate"]
    r = theorem_d_check(cyclic(4))
    assert r.status == "pass" and not r.quantities["predicate"] and r.quantities["classification"] is None
    r = theorem_d_check(A5)
    assert r.status == "pass" and not r.quantities["predicate"]
    assert theorem_d_check(cyclic(1)).status == "skipped"


def unit_orders():
    out = []
    for n in range(3, 40):
        for u in range(2, n):
            if math.gcd(u, n) == 1:
                m = n_order(u, n)
                if m * n <= 400:
                    out.append((m, n, u))
    return out


@given(st.sampled_from(unit_orders()))
def test_biconditional_on_random_semidirect_products(args):
    r = theorem_d_check(semidirect_cyclic(*args))
    assert r.status == "pass", r.witness


def test_new_primes_examples(S4, F546):
    lat = normal_subgroups(F546)
    K = [N for N in lat if N.order == 91][0]
    one = lat.members[0]
    assert new_primes(F546, one, K) == {7, 13}
    assert new_primes(F546, K, K) == frozenset()
    V4 = [N for N in normal_subgroups(S4) if N.order == 4][0]
    assert new_primes(S4, normal_subgroups(S4).members[0], V4) == frozenset()


def brute_new_primes_max(G):
    lat = normal_subgroups(G).members
    best = 0
    for K in lat:
        for L in lat:
            if L <= K:
                # K/L is nilpotent iff its image in G/L is
                Q, proj = quotient(G, L)
                img = subgroup_generated(Q, sorted({int(proj[k]) for k in K.indices}))
                if is_nilpotent(img.as_group()[0]):
                    best = max(best, len(new_primes(G, L, K)))
    return best


@pytest.mark.parametrize("G", [semidirect_cyclic(6, 7, 3), semidirect_cyclic(4, 5, 2), dihedral(6)])
def test_new_primes_search_is_exhaustive(G):
    r = lemma_new_primes_check(G)
    assert r.quantities["max_new_primes"] == brute_new_primes_max(G)


def test_new_primes_tight(F546):
    r = lemma_new_primes_check(F546)
    q = r.quantities
    assert r.status == "pass" and q["k"] == 2 and q["max_new_primes"] == 2
    assert q["extremal_pair"]["L"]["order"] == 1 and q["extremal_pair"]["K"]["order"] == 91


def test_theorem_c_examples(S4, F546):
    r = theorem_c_check(S4, 2)
    assert r.status == "pass"
    assert r.quantities["derived_length_mod_Op"] == 2
    assert r.quantities["p_length"] == 2 == r.quantities["cod_p_count"]
    r = theorem_c_check(elementary_abelian(2, 3), 2)
    assert r.status == "pass" and r.quantities["derived_length_mod_Op"] == 0
    assert theorem_c_check(F546, 7).status == "skipped"


def test_nonsolvable_skipped(A5):
    assert theorem_c_check(A5, 2).status == "skipped"
    assert p_length_check(A5, 2).status == "skipped"
    assert theorem_b_check(A5).status == "skipped"
    assert theorem_a_check(A5).status == "skipped"


def test_theorem_ab_examples(S4, F546):
    r = theorem_b_check(elementary_abelian(2, 2))
    assert r.status == "pass" and r.quantities["k"] == 1
    r = theorem_b_check(F546)
    assert r.quantities["k"] == 2 and r.quantities["prime_count"] == 4
    assert r.quantities["bound"] == 48 + 780
    r = theorem_a_check(F546)
    assert r.status == "pass" and r.quantities["cod_count"] == 7
    assert theorem_b_check(S4).quantities["k"] == 2


def test_failed_record_needs_witness():
    with pytest.raises(ValueError):
        CheckRecord("x", "fail")
    with pytest.raises(ValueError):
        CheckRecord("x", "maybe")


def test_run_corpus_basics(A5):
    assert run_corpus([]) == [] and exit_status([]) == 0
    reps = run_corpus([("A5", A5)], ["theorem_c"])
    assert {r.status for r in reps[0].records} == {"skipped"}
    reps = run_corpus(parse_corpus("codegree-corpus 1\nbig = cyclic(30000)\nS3 = symmetric(3)\n"))
    assert reps[0].records[0].check == "build" and reps[0].records[0].status == "fail"
    assert exit_status(reps) == 1
    assert all(r.status != "fail" for r in reps[1].records)
    with pytest.raises(ValueError):
        run_corpus([], ["nonsense"])


def test_report_parallel_matches_serial():
    text = "codegree-corpus 1\nS3 = symmetric(3)\nQ8 = quaternion8()\nF21 = semidirect_cyclic(3, 7, 2)\nC4 = cyclic(4)\n"
    rs = parse_corpus(text)
    a = report_json(run_corpus(rs, jobs=1))
    b = report_json(run_corpus(rs, jobs=3))
    assert a == b
    doc = json.loads(a)
    assert doc["schema"] == "charcod-verify" and doc["version"] == 1
    assert [g["label"] for g in doc["groups"]] == ["S3", "Q8", "F21", "C4"]
    for g in doc["groups"]:
        for r in g["records"]:
            assert r["status"] in ("pass", "fail", "skipped")


def test_check_group_all(S4):
    recs = check_group(S4, checks=("table", "codegree", "lemma21", "clifford"))
    assert [r.status for r in recs] == ["pass"] * 4
