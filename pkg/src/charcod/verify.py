"""Checks of the codegree statements over a corpus, and report assembly.

Every check returns :class:`CheckRecord` objects.  A check whose hypotheses
do not hold is ``skipped``; a ``fail`` always carries a witness.  All
pass/fail decisions use integer arithmetic; floats appear only in the
reported slack.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from sympy import isprime, primefactors

from .chartab import dixon_table, kernel, verify_table
from .codegree import (
    graph_components,
    group_profile,
    lemma21_divisibility_witness,
    lemma21_quotient_witness,
    linear_codegree_is_order_check,
    pairwise_coprime,
)
from .orbits import (
    clifford_inclusion_check,
    find_split_abelian,
    orbits_on_dual,
    orbits_on_subgroup,
    relative_codegrees,
    relative_degrees,
    unique_minimal_normal,
)
from .perm import FiniteGroup, GroupError, Subgroup, commutator_subgroup, quotient, subgroup_from_mask, whole_group
from .structure import (
    NotFrobenius,
    core_p,
    core_p_prime,
    derived_length,
    frobenius_structure,
    is_abelian,
    is_nilpotent,
    is_p_power,
    is_solvable,
    normal_subgroups,
    p_length,
    prime_divisors,
)
from .zoo import GroupRecipe

REPORT_SCHEMA = "charcod-verify"
REPORT_VERSION = 1

CHECKS = (
    "table",
    "codegree",
    "theorem_d",
    "lemma_new_primes",
    "theorem_c",
    "p_length",
    "theorem_b",
    "theorem_a",
    "clifford",
    "lemma21",
)
# lemma21 walks the whole normal lattice with a quotient table per member;
# it is opt-in for corpus runs
DEFAULT_CHECKS = tuple(c for c in CHECKS if c != "lemma21")
LEMMA21_MAX_ORDER = 200


class EmptyCodP(GroupError):
    pass


@dataclass
class CheckRecord:
    check: str
    status: str  # pass, fail or skipped
    params: dict = field(default_factory=dict)
    quantities: dict = field(default_factory=dict)
    witness: dict | None = None
    reason: str = ""

    def __post_init__(self):
        if self.status not in ("pass", "fail", "skipped"):
            raise ValueError(f"bad status {self.status!r}")
        if self.status == "fail" and not self.witness:
            raise ValueError(f"failed check {self.check} without a witness")

    def to_dict(self) -> dict:
        out = {"check": self.check, "status": self.status}
        if self.params:
            out["params"] = self.params
        if self.quantities:
            out["quantities"] = self.quantities
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass
class VerificationReport:
    label: str
    order: int
    records: list[CheckRecord]

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if r.status == "fail"]

    def to_dict(self) -> dict:
        return {"label": self.label, "order": self.order, "records": [r.to_dict() for r in self.records]}


def _skip(check: str, reason: str, **params) -> CheckRecord:
    return CheckRecord(check, "skipped", params=params, reason=reason)


def _sub(S: Subgroup) -> dict:
    return {"order": S.order, "generators": list(S.generators)}


# ---------------------------------------------------------------------------
# exact comparisons


def log2_bound_holds(lhs: int, coef: int, x: int, const: int) -> bool:
    """Exact test of ``lhs <= coef * log2(x) + const`` for integers, ``x >= 1``."""
    excess = lhs - const
    if excess <= 0:
        return True
    if coef == 0 or x == 1:
        return False
    # excess <= coef*log2(x)  <=>  2^excess <= x^coef
    return (1 << excess) <= x**coef


def _log2(x: int) -> float:
    return math.log2(x) if x > 0 else float("-inf")


# ---------------------------------------------------------------------------
# the classification of groups with pairwise coprime codegrees


@dataclass(frozen=True)
class ElementaryAbelian:
    p: int


@dataclass(frozen=True)
class FrobeniusPrimeComplement:
    p: int
    q: int
    s: int


def theorem_d_predicate(profile) -> bool:
    return pairwise_coprime(profile.cod_set)


def theorem_d_classify(G: FiniteGroup, seed: int = 0):
    """``ElementaryAbelian(p)``, ``FrobeniusPrimeComplement(p, q, s)`` or ``None``."""
    if G.order == 1:
        return None
    if is_abelian(G) and isprime(G.exponent):
        return ElementaryAbelian(G.exponent)
    try:
        K, H = frobenius_structure(G)
    except NotFrobenius:
        return None
    p = H.order
    if not isprime(p):
        return None
    qs = prime_divisors(K.as_group()[0])
    if len(qs) != 1:
        return None
    q = qs[0]
    cod = set(group_profile(G, seed).cod_set)
    rest = cod - {1, p}
    if 1 not in cod or p not in cod or len(rest) != 1:
        return None
    qs_val = rest.pop()
    if not is_p_power(qs_val, q) or qs_val == 1:
        return None
    s = 0
    while qs_val > 1:
        qs_val //= q
        s += 1
    return FrobeniusPrimeComplement(p, q, s)


def _classification_dict(c) -> dict | None:
    if c is None:
        return None
    if isinstance(c, ElementaryAbelian):
        return {"case": "elementary_abelian", "p": c.p}
    return {"case": "frobenius_prime_complement", "p": c.p, "q": c.q, "s": c.s}


def theorem_d_check(G: FiniteGroup, seed: int = 0) -> CheckRecord:
    if G.order == 1:
        return _skip("theorem_d", "trivial group")
    prof = group_profile(G, seed)
    pred = theorem_d_predicate(prof)
    cls = theorem_d_classify(G, seed)
    q = {
        "cod": list(prof.cod_set),
        "predicate": pred,
        "classification": _classification_dict(cls),
    }
    problems = []
    if pred != (cls is not None):
        problems.append("predicate and classification disagree")
    if pred:
        solv = is_solvable(G)
        npi = len(prime_divisors(G))
        q.update(solvable=solv, prime_count=npi)
        if not solv:
            problems.append("not solvable")
        if npi > 2:
            problems.append("more than two prime divisors")
        if len(prof.cod_set) > 3:
            problems.append("more than three codegrees")
    if problems:
        wit = {"problems": problems, "cod": list(prof.cod_set)}
        if not pred:
            nums = sorted(prof.cod_set)
            pair = next((a, b) for i, a in enumerate(nums) for b in nums[i + 1:] if math.gcd(a, b) > 1)
            wit["non_coprime_pair"] = list(pair)
        return CheckRecord("theorem_d", "fail", quantities=q, witness=wit)
    return CheckRecord("theorem_d", "pass", quantities=q)


# ---------------------------------------------------------------------------
# new prime divisors in nilpotent sections


def _section_nilpotent(G: FiniteGroup, L: Subgroup, K: Subgroup) -> bool:
    n = K.order // L.order
    if n == 1 or len(_primes(n)) == 1:
        return True
    Kg, emb = K.as_group()
    if is_nilpotent(Kg):
        return True
    pos = {int(g): i for i, g in enumerate(emb)}
    mask = np.zeros(Kg.order, dtype=bool)
    mask[[pos[g] for g in L.indices]] = True
    Q, _ = quotient(Kg, subgroup_from_mask(Kg, mask))
    return is_nilpotent(Q)


def _primes(n: int) -> frozenset[int]:
    return frozenset(primefactors(n)) if n > 1 else frozenset()


def new_primes(G: FiniteGroup, L: Subgroup, K: Subgroup) -> frozenset[int]:
    """``pi(K/L) - pi(G/K)``."""
    return _primes(K.order // L.order) - _primes(G.order // K.order)


def lemma_new_primes_check(G: FiniteGroup, seed: int = 0) -> CheckRecord:
    """Over all normal ``L <= K`` with ``K/L`` nilpotent, the number of primes
    of ``K/L`` not dividing ``|G:K|`` is at most ``k``.

    Finds the maximum exactly; ``K`` are scanned by increasing order and the
    first pair reaching the maximum is reported.
    """
    k = group_profile(G, seed).k_value
    lattice = normal_subgroups(G).members
    best, wit = 0, None
    for K in lattice:
        upper = len(_primes(K.order) - _primes(G.order // K.order))
        if upper <= best:
            continue
        for L in lattice:
            if L.order > K.order or not L <= K:
                continue
            new = len(new_primes(G, L, K))
            if new > best and _section_nilpotent(G, L, K):
                best, wit = new, (L, K)
                if best == upper:
                    break
    q = {"k": k, "max_new_primes": best, "lattice_size": len(lattice)}
    if wit is not None:
        L, K = wit
        pair = {"L": _sub(L), "K": _sub(K), "new_primes": sorted(new_primes(G, L, K))}
        q["extremal_pair"] = pair
    if best > k:
        return CheckRecord("lemma_new_primes", "fail", quantities=q, witness=q["extremal_pair"])
    return CheckRecord("lemma_new_primes", "pass", quantities=q)


# ---------------------------------------------------------------------------
# derived length, p-length and the number of primes


def theorem_c_check(G: FiniteGroup, p: int, seed: int = 0) -> CheckRecord:
    if G.order % p:
        return _skip("theorem_c", "p does not divide |G|", p=p)
    if not is_solvable(G):
        return _skip("theorem_c", "not solvable", p=p)
    Op_prime = core_p_prime(G, p)
    if Op_prime.order != 1:
        return _skip("theorem_c", "O_p'(G) is nontrivial", p=p)
    prof = group_profile(G, seed)
    cod_p = prof.cod_p[p]
    if not cod_p:
        raise EmptyCodP(f"no codegree divisible by {p}")
    Q, _ = quotient(G, core_p(G, p))
    dl = derived_length(Q)
    n = len(cod_p)
    plen = p_length(G, p)
    q = {
        "derived_length_mod_Op": dl,
        "cod_p": list(cod_p),
        "cod_p_count": n,
        "bound": 24 * _log2(n) + 389,
        "slack": 24 * _log2(n) + 389 - dl,
        "p_length": plen,
    }
    ok_c = log2_bound_holds(dl, 24, n, 389)
    ok_l = plen <= n
    if ok_c and ok_l:
        return CheckRecord("theorem_c", "pass", params={"p": p}, quantities=q)
    wit = {"p": p, "derived_length_mod_Op": dl, "cod_p": list(cod_p), "p_length": plen}
    return CheckRecord("theorem_c", "fail", params={"p": p}, quantities=q, witness=wit)


def p_length_check(G: FiniteGroup, p: int, seed: int = 0) -> CheckRecord:
    """p-length is at most the number of codegrees divisible by ``p``."""
    if G.order % p:
        return _skip("p_length", "p does not divide |G|", p=p)
    if not is_solvable(G):
        return _skip("p_length", "not solvable", p=p)
    cod_p = group_profile(G, seed).cod_p[p]
    plen = p_length(G, p)
    q = {"p_length": plen, "cod_p_count": len(cod_p)}
    if plen <= len(cod_p):
        return CheckRecord("p_length", "pass", params={"p": p}, quantities=q)
    return CheckRecord("p_length", "fail", params={"p": p}, quantities=q, witness={"p": p, "cod_p": list(cod_p)})


def _k_gate(G: FiniteGroup, name: str):
    if G.order == 1:
        return _skip(name, "trivial group")
    if not is_solvable(G):
        return _skip(name, "not solvable")
    return None


def theorem_b_check(G: FiniteGroup, seed: int = 0) -> CheckRecord:
    """``|pi(G)| <= 24 k log2 k + 390 k``."""
    gate = _k_gate(G, "theorem_b")
    if gate:
        return gate
    k = group_profile(G, seed).k_value
    npi = len(prime_divisors(G))
    bound = 24 * k * _log2(k) + 390 * k
    q = {"k": k, "prime_count": npi, "bound": bound, "slack": bound - npi}
    if log2_bound_holds(npi, 24 * k, k, 390 * k):
        return CheckRecord("theorem_b", "pass", quantities=q)
    return CheckRecord("theorem_b", "fail", quantities=q, witness={"k": k, "primes": prime_divisors(G)})


def theorem_a_check(G: FiniteGroup, seed: int = 0) -> CheckRecord:
    """``|cod(G)| <= 24 k^2 log2 k + 390 k^2 + 1``."""
    gate = _k_gate(G, "theorem_a")
    if gate:
        return gate
    prof = group_profile(G, seed)
    k = prof.k_value
    n = len(prof.cod_set)
    bound = 24 * k * k * _log2(k) + 390 * k * k + 1
    q = {"k": k, "cod_count": n, "bound": bound, "slack": bound - n}
    if log2_bound_holds(n, 24 * k * k, k, 390 * k * k + 1):
        return CheckRecord("theorem_a", "pass", quantities=q)
    return CheckRecord("theorem_a", "fail", quantities=q, witness={"k": k, "cod": list(prof.cod_set)})


# ---------------------------------------------------------------------------
# table, codegree and orbit invariants


def table_check(G: FiniteGroup, seed: int = 0) -> CheckRecord:
    T = dixon_table(G, seed)
    q = {"classes": len(T), "degrees": list(T.degrees), "exponent": T.exponent, "prime": T.prime}
    try:
        verify_table(T)
    except GroupError as exc:
        return CheckRecord("table", "fail", quantities=q, witness={"error": str(exc)})
    return CheckRecord("table", "pass", quantities=q)


def codegree_check(G: FiniteGroup, seed: int = 0) -> CheckRecord:
    """Profile invariants plus quotient spot checks.

    Checks integrality, ``cod | |G|``, ``cod >= degree``, that only the
    trivial character has codegree 1, linear codegree = character order, the
    component count of the codegree graph when codegrees are pairwise coprime,
    and that the quotient tables by the derived subgroup and by the kernel of
    the first nonlinear character reproduce the codegrees.  Graph components
    are reported, not compared.
    """
    T = dixon_table(G, seed)
    try:
        prof = group_profile(G, seed)
    except GroupError as exc:
        return CheckRecord("codegree", "fail", witness={"error": str(exc)})
    comps = graph_components(prof.codegree_graph)
    q = {
        "cod": list(prof.cod_set),
        "k": prof.k_value,
        "codegree_graph_components": [list(c) for c in comps],
        "gk_graph_components": [list(c) for c in graph_components(prof.gk_graph)],
    }

    def fail(**wit):
        return CheckRecord("codegree", "fail", quantities=q, witness=wit)

    per = prof.per_character
    bad = [i for i, c in enumerate(per) if G.order % c or c < T.degrees[i]]
    if bad:
        return fail(rows=bad, reason="codegree does not divide |G| or is below the degree")
    ones = [i for i, c in enumerate(per) if c == 1]
    if ones != [0] and G.order > 1:
        return fail(rows=ones, reason="codegree 1 off the trivial character")
    if not linear_codegree_is_order_check(T):
        return fail(rows=list(T.linear_rows), reason="linear codegree differs from character order")
    if pairwise_coprime(prof.cod_set) and G.order > 1 and len(comps) != len(prof.cod_set) - 1:
        return fail(components=[list(c) for c in comps], reason="component count differs from |cod| - 1")
    D = commutator_subgroup(G, whole_group(G), whole_group(G))
    spots = [D]
    nonlinear = [i for i in range(len(T)) if T.degrees[i] > 1]
    if nonlinear:
        spots.append(kernel(T, nonlinear[0]))
    for N in spots:
        if 1 < N.order < G.order:
            w = lemma21_quotient_witness(G, N, seed)
            if w is not None:
                return fail(N=_sub(N), mismatch=list(w))
    return CheckRecord("codegree", "pass", quantities=q)


def clifford_check(G: FiniteGroup, seed: int = 0, split=None) -> CheckRecord:
    """Orbit sizes of a complement on the dual of an abelian normal subgroup
    are degrees of characters over it, plus related orbit invariants."""
    if split is None:
        split = find_split_abelian(G)
    if split is None:
        return _skip("clifford", "no complemented abelian normal subgroup")
    H, V = split
    ok, wit = clifford_inclusion_check(G, H, V, seed)
    prim = orbits_on_subgroup(G, H, V)
    dual = orbits_on_dual(G, H, V)
    cd = relative_degrees(G, V, seed)
    cod = relative_codegrees(G, V, seed)
    q = {
        "V": _sub(V),
        "H": _sub(H),
        "m_star_set": sorted(dual.m_star_set),
        "m_star_count": dual.m_star_count,
        "primal_m_star_set": sorted(prim.m_star_set),
        "cd_over_V": sorted(cd),
        "cod_over_V": sorted(cod),
        "witness_rows": {str(s): r for s, r in wit.items()},
    }
    problems = []
    if not ok:
        problems.append("orbit size missing from cd(G|V)")
    for orb in (prim, dual):
        if sum(orb.sizes) != V.order or any(H.order % s for s in orb.sizes):
            problems.append(f"bad orbit sizes on {orb.space}")
        if orb.sizes[0] != 1:
            problems.append(f"trivial point of {orb.space} not fixed")
    vp = prime_divisors(V.as_group()[0])
    if len(vp) == 1 and any(c % vp[0] for c in cod):
        problems.append("codegree over a p-group V not divisible by p")
    if isprime(V.order) and sorted(prim.sizes) != sorted(dual.sizes):
        problems.append("primal and dual orbit sizes differ")
    if unique_minimal_normal(G, V):
        q["unique_minimal_normal"] = True
        if len(cd) != len(cod):
            problems.append("|cd(G|V)| != |cod(G|V)| for unique minimal normal V")
    if problems:
        return CheckRecord("clifford", "fail", quantities=q, witness={"problems": problems})
    return CheckRecord("clifford", "pass", quantities=q)


def lemma21_check(G: FiniteGroup, seed: int = 0, max_order: int = LEMMA21_MAX_ORDER) -> CheckRecord:
    """Quotient and divisibility laws for every normal subgroup."""
    if G.order > max_order:
        return _skip("lemma21", f"order above {max_order}")
    lattice = normal_subgroups(G).members
    for N in lattice:
        w = lemma21_quotient_witness(G, N, seed)
        if w is not None:
            return CheckRecord("lemma21", "fail", witness={"N": _sub(N), "quotient_mismatch": list(w)})
        w = lemma21_divisibility_witness(G, N, seed)
        if w is not None:
            return CheckRecord("lemma21", "fail", witness={"N": _sub(N), "theta_chi_rows": list(w)})
    return CheckRecord("lemma21", "pass", quantities={"normal_subgroups": len(lattice)})


# ---------------------------------------------------------------------------
# corpus driver


def check_group(G: FiniteGroup, checks=DEFAULT_CHECKS, seed: int = 0) -> list[CheckRecord]:
    out: list[CheckRecord] = []
    primes = prime_divisors(G)
    for name in checks:
        try:
            if name == "theorem_c":
                out += [theorem_c_check(G, p, seed) for p in primes]
            elif name == "p_length":
                out += [p_length_check(G, p, seed) for p in primes]
            else:
                out.append(_SINGLE[name](G, seed))
        except Exception as exc:  # one broken check must not hide the others
            out.append(CheckRecord(name, "fail", witness={"error": f"{type(exc).__name__}: {exc}"}))
    return out


_SINGLE = {
    "table": table_check,
    "codegree": codegree_check,
    "theorem_d": theorem_d_check,
    "lemma_new_primes": lemma_new_primes_check,
    "theorem_b": theorem_b_check,
    "theorem_a": theorem_a_check,
    "clifford": clifford_check,
    "lemma21": lemma21_check,
}


def _run_one(args) -> VerificationReport:
    label, item, checks, seed = args
    try:
        G = item.build() if isinstance(item, GroupRecipe) else item
    except Exception as exc:
        rec = CheckRecord("build", "fail", witness={"error": f"{type(exc).__name__}: {exc}"})
        return VerificationReport(label, 0, [rec])
    return VerificationReport(label, G.order, check_group(G, checks, seed))


def run_corpus(corpus, checks=DEFAULT_CHECKS, jobs: int = 1, seed: int = 0) -> list[VerificationReport]:
    """Run ``checks`` on each corpus entry.

    ``corpus`` holds :class:`GroupRecipe` objects or ``(label, group)`` pairs.
    Reports come back in corpus order whatever the worker count.
    """
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    tasks = []
    for i, item in enumerate(corpus):
        if isinstance(item, GroupRecipe):
            tasks.append((item.label or f"#{i}", item, tuple(checks), seed))
        else:
            label, G = item
            tasks.append((label, G, tuple(checks), seed))
    if jobs <= 1 or len(tasks) <= 1:
        return [_run_one(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_one, tasks, chunksize=1))


def summarize(reports: list[VerificationReport]) -> dict:
    counts = {"pass": 0, "fail": 0, "skipped": 0}
    for rep in reports:
        for r in rep.records:
            counts[r.status] += 1
    return {"groups": len(reports), **counts}


def report_json(reports: list[VerificationReport], checks=DEFAULT_CHECKS, seed: int = 0) -> str:
    doc = {
        "schema": REPORT_SCHEMA,
        "version": REPORT_VERSION,
        "seed": seed,
        "checks": list(checks),
        "summary": summarize(reports),
        "groups": [r.to_dict() for r in reports],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def exit_status(reports: list[VerificationReport]) -> int:
    return 1 if any(rep.failures for rep in reports) else 0
