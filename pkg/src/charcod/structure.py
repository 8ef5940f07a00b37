"""Normal subgroups, characteristic series and the structural invariants
(O_p, O_p', Fitting, Sylow, p-length, Frobenius kernels) used by the checks."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from sympy import isprime, primefactors

from .perm import (
    FiniteGroup,
    GroupError,
    Subgroup,
    _closure,
    centralizer,
    commutator_subgroup,
    conjugates_of,
    intersection,
    is_normal,
    join,
    normal_closure,
    quotient,
    subgroup_from_mask,
    subgroup_generated,
    trivial_subgroup,
    whole_group,
)


class NotSolvable(GroupError):
    pass


class NotPrime(GroupError):
    pass


class PrimeDoesNotDivide(GroupError):
    pass


@dataclass(frozen=True)
class NormalLattice:
    parent: FiniteGroup
    members: tuple[Subgroup, ...]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    terms: tuple[Subgroup, ...]
    stabilized: bool


def _cached(G: FiniteGroup, key, fn):
    if key not in G._cache:
        G._cache[key] = fn()
    return G._cache[key]


def _check_prime(p: int) -> None:
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")


def prime_divisors(G: FiniteGroup) -> list[int]:
    return primefactors(G.order) if G.order > 1 else []


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def normal_subgroups(G: FiniteGroup) -> NormalLattice:
    """All normal subgroups, sorted by order (ties by index tuple).

    Every normal subgroup is the join of the normal closures of its elements,
    so closing the set of those closures under joins yields the whole lattice.
    """

    def build() -> NormalLattice:
        base: dict[int, Subgroup] = {}
        for rep in G.class_reps[1:]:
            N = normal_closure(G, [rep])
            base.setdefault(N.mask, N)
        found: dict[int, Subgroup] = {trivial_subgroup(G).mask: trivial_subgroup(G)}
        found.update(base)
        queue = list(base.values())
        blist = sorted(base.values(), key=lambda s: (s.order, s.indices))
        while queue:
            S = queue.pop()
            for B in blist:
                if B.mask & S.mask == B.mask:
                    continue
                J = join(G, S, B)
                if J.mask not in found:
                    found[J.mask] = J
                    queue.append(J)
        members = sorted(found.values(), key=lambda s: (s.order, s.indices))
        assert members[-1].order == G.order
        return NormalLattice(G, tuple(members))

    return _cached(G, "normal_lattice", build)


def derived_series(G: FiniteGroup) -> SeriesReport:
    def build() -> SeriesReport:
        terms = [whole_group(G)]
        while True:
            D = commutator_subgroup(G, terms[-1], terms[-1])
            if D == terms[-1]:
                break
            terms.append(D)
        return SeriesReport("derived", tuple(terms), True)

    return _cached(G, "derived_series", build)


def lower_central_series(G: FiniteGroup) -> SeriesReport:
    def build() -> SeriesReport:
        terms = [whole_group(G)]
        top = terms[0]
        while True:
            D = commutator_subgroup(G, terms[-1], top)
            if D == terms[-1]:
                break
            terms.append(D)
        return SeriesReport("lower-central", tuple(terms), True)

    return _cached(G, "lower_central", build)


def is_solvable(G: FiniteGroup) -> bool:
    return derived_series(G).terms[-1].order == 1


def is_nilpotent(G: FiniteGroup) -> bool:
    return lower_central_series(G).terms[-1].order == 1


def is_abelian(G: FiniteGroup) -> bool:
    return len(G.classes) == G.order


def derived_length(G: FiniteGroup) -> int:
    """Length of the derived series; 0 for the trivial group."""
    series = derived_series(G)
    if series.terms[-1].order != 1:
        raise NotSolvable("derived series stabilises above the identity")
    return len(series.terms) - 1


def _p_elements(G: FiniteGroup, p: int, coprime: bool) -> Subgroup:
    orders = G.element_orders
    if coprime:
        mask = orders % p != 0
    else:
        mask = np.array([is_p_power(int(o), p) for o in orders])
    return subgroup_from_mask(G, mask)


def core_p(G: FiniteGroup, p: int) -> Subgroup:
    """O_p(G), the largest normal p-subgroup."""
    _check_prime(p)

    def build() -> Subgroup:
        if G.order % p:
            return trivial_subgroup(G)
        if is_p_power(G.order, p):
            return whole_group(G)
        if is_nilpotent(G):
            return _p_elements(G, p, coprime=False)
        cands = [N for N in normal_subgroups(G) if is_p_power(N.order, p)]
        return cands[-1]

    return _cached(G, ("O_p", p), build)


def core_p_prime(G: FiniteGroup, p: int) -> Subgroup:
    """O_p'(G), the largest normal subgroup of order coprime to p."""
    _check_prime(p)

    def build() -> Subgroup:
        if G.order % p:
            return whole_group(G)
        if is_p_power(G.order, p):
            return trivial_subgroup(G)
        if is_nilpotent(G):
            return _p_elements(G, p, coprime=True)
        cands = [N for N in normal_subgroups(G) if N.order % p]
        return cands[-1]

    return _cached(G, ("O_p'", p), build)


def core_p_prime_p(G: FiniteGroup, p: int) -> Subgroup:
    """O_{p',p}(G): preimage of O_p(G/O_p'(G))."""
    N = core_p_prime(G, p)
    Q, proj = quotient(G, N)
    P = core_p(Q, p)
    return subgroup_from_mask(G, P.bool_mask[proj])


def fitting(G: FiniteGroup) -> Subgroup:
    def build() -> Subgroup:
        F = trivial_subgroup(G)
        for p in prime_divisors(G):
            F = join(G, F, core_p(G, p))
        return F

    F = _cached(G, "fitting", build)
    return F


def sylow(G: FiniteGroup, p: int) -> Subgroup:
    """A Sylow p-subgroup, grown one p-element at a time inside normalisers."""
    _check_prime(p)
    if G.order % p:
        raise PrimeDoesNotDivide(f"{p} does not divide {G.order}")
    full = p ** _valuation(G.order, p)
    orders = G.element_orders
    p_elts = [i for i in range(1, G.order) if is_p_power(int(orders[i]), p)]
    # start from a p-element of largest order
    start = max(p_elts, key=lambda i: (orders[i], -i))
    P = subgroup_generated(G, [start])
    while P.order < full:
        N = _normalizer(G, P)
        for x in p_elts:
            if N.bool_mask[x] and not P.bool_mask[x]:
                P = subgroup_from_mask(G, _closure(G, [x], start=P.bool_mask))
                break
        else:  # pragma: no cover - Sylow's theorem guarantees progress
            raise AssertionError("no p-element extends the current p-subgroup")
    assert P.order == full
    return P


def _valuation(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    keep = np.ones(G.order, dtype=bool)
    for h in H.generators:
        keep &= H.bool_mask[conjugates_of(G, h)]
    return subgroup_from_mask(G, keep)


def p_length(G: FiniteGroup, p: int) -> int:
    """Number of p-factors in the upper p-series (0 for the trivial group)."""
    _check_prime(p)
    if not is_solvable(G):
        raise NotSolvable("p-length is computed for solvable groups only")
    count = 0
    H = G
    while H.order > 1:
        Np = core_p_prime(H, p)
        if Np.order > 1:
            H, _ = quotient(H, Np)
            if H.order == 1:
                break
        P = core_p(H, p)
        assert P.order > 1, "solvable group with O_p' = 1 has O_p > 1"
        count += 1
        H, _ = quotient(H, P)
    return count


class NotFrobenius(GroupError):
    pass


def find_complement(G: FiniteGroup, N: Subgroup, max_starts: int | None = None) -> Subgroup | None:
    """Greedy search for ``H`` with ``H`` ∩ ``N`` = 1 and ``|H||N| = |G|``.

    Starting from a cyclic subgroup, elements are added while the generated
    subgroup still meets ``N`` trivially and has order dividing ``|G:N|``.
    Complete when complements are Hall subgroups meeting each other trivially
    (Frobenius complements); otherwise several starting points are tried.
    """
    m = G.order // N.order
    if m == 1:
        return trivial_subgroup(G)
    orders = G.element_orders
    cands = [i for i in range(1, G.order) if m % int(orders[i]) == 0 and not N.bool_mask[i]]
    cands.sort(key=lambda i: (-int(orders[i]), i))
    nmask = N.bool_mask
    tried: set[int] = set()
    for n_start, x in enumerate(cands):
        if max_starts is not None and n_start >= max_starts:
            break
        H = subgroup_generated(G, [x])
        if H.mask in tried or (H.bool_mask & nmask).sum() > 1:
            continue
        tried.add(H.mask)
        for y in cands:
            if H.order == m:
                break
            if H.bool_mask[y]:
                continue
            J = _closure(G, [y], start=H.bool_mask)
            size = int(J.sum())
            if m % size == 0 and (J & nmask).sum() == 1:
                H = subgroup_from_mask(G, J)
        if H.order == m:
            return H
    return None


def frobenius_structure(G: FiniteGroup) -> tuple[Subgroup, Subgroup]:
    """Return ``(kernel, complement)`` or raise :class:`NotFrobenius`."""

    def build():
        if G.order == 1:
            return None
        for K in normal_subgroups(G).members:
            if K.order == 1 or K.order == G.order:
                continue
            if math.gcd(K.order, G.order // K.order) != 1:
                continue
            ok = True
            for c in range(1, len(G.classes)):
                rep = G.classes[c][0]
                if not K.bool_mask[rep]:
                    continue
                if G.order // len(G.classes[c]) > K.order:
                    ok = False
                    break
                if not centralizer(G, rep) <= K:
                    ok = False
                    break
            if not ok:
                continue
            H = find_complement(G, K)
            if H is None:
                continue
            # Thompson: Frobenius kernels are nilpotent
            Kg, _ = K.as_group()
            assert is_nilpotent(Kg)
            return (K, H)
        return None

    res = _cached(G, "frobenius", build)
    if res is None:
        raise NotFrobenius("no Frobenius kernel/complement pair")
    return res


def is_frobenius_pair(G: FiniteGroup, K: Subgroup, H: Subgroup) -> bool:
    """Element-wise criterion: no non-identity element of H commutes with a
    non-identity element of K, K normal, H ∩ K = 1 and |H||K| = |G|."""
    if K.order * H.order != G.order or intersection(G, K, H).order != 1:
        return False
    if not is_normal(G, K) or K.order == 1 or H.order == 1:
        return False
    for h in H.indices[1:]:
        hk = G.right_col(h)
        kh = G.left_col(h)
        for k in K.indices[1:]:
            if kh[k] == hk[k]:
                return False
    return True


def is_complemented(G: FiniteGroup, V: Subgroup, H: Subgroup) -> bool:
    return V.order * H.order == G.order and intersection(G, V, H).order == 1


def minimal_normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    members = [N for N in normal_subgroups(G) if N.order > 1]
    return [N for N in members if not any(M.order > 1 and M != N and M <= N for M in members)]
