"""Character codegrees and the two prime graphs.

For an irreducible character chi of G the codegree is |G : Ker chi| / chi(1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chartab import (
    CharacterTable,
    dixon_table,
    kernel_order,
    restriction_multiplicities,
    subgroup_table,
)
from .cyclotomic import reduce_batch
from .perm import FiniteGroup, GroupError, Subgroup, quotient
from .structure import prime_divisors

Graph = dict[int, frozenset[int]]


class NonIntegralCodegree(GroupError):
    pass


def codegree(T: CharacterTable, row: int) -> int:
    k = kernel_order(T, row)
    index = T.group.order // k
    d = T.degrees[row]
    if index % d:
        raise NonIntegralCodegree(f"chi(1) = {d} does not divide |G:Ker chi| = {index}")
    return index // d


@dataclass(frozen=True)
class CodegreeProfile:
    group: FiniteGroup
    cod_set: tuple[int, ...]
    per_character: tuple[int, ...]
    cod_p: dict[int, tuple[int, ...]]
    k_value: int
    codegree_graph: Graph
    gk_graph: Graph

    @property
    def primes(self) -> list[int]:
        return sorted(self.codegree_graph)


def _graph(vertices: list[int], numbers) -> Graph:
    adj: dict[int, set[int]] = {p: set() for p in vertices}
    for n in numbers:
        ps = [p for p in vertices if n % p == 0]
        for p in ps:
            for q in ps:
                if p != q:
                    adj[p].add(q)
    return {p: frozenset(adj[p]) for p in vertices}


def codegree_graph(cod_set, primes: list[int]) -> Graph:
    """Edge ``{p, q}`` iff ``pq`` divides some codegree."""
    return _graph(primes, cod_set)


def gk_graph(G: FiniteGroup) -> Graph:
    """Prime graph of element orders: edge ``{p, q}`` iff some element has order divisible by ``pq``."""
    return _graph(prime_divisors(G), {int(o) for o in np.unique(G.element_orders)})


def profile(T: CharacterTable) -> CodegreeProfile:
    G = T.group
    key = ("profile", id(T))
    if key in G._cache:
        return G._cache[key]
    per = tuple(codegree(T, i) for i in range(len(T)))
    cod_set = tuple(sorted(set(per)))
    primes = prime_divisors(G)
    cod_p = {p: tuple(n for n in cod_set if n % p == 0) for p in primes}
    k = max((len(v) for v in cod_p.values()), default=0)
    prof = CodegreeProfile(G, cod_set, per, cod_p, k, codegree_graph(cod_set, primes), gk_graph(G))
    G._cache[key] = prof
    return prof


def group_profile(G: FiniteGroup, seed: int = 0) -> CodegreeProfile:
    return profile(dixon_table(G, seed))


def graph_components(graph: Graph) -> list[tuple[int, ...]]:
    """Connected components, each sorted, ordered by least vertex."""
    seen: set[int] = set()
    comps = []
    for v in sorted(graph):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in graph[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(tuple(sorted(comp)))
    return comps


def graph_edges(graph: Graph) -> list[tuple[int, int]]:
    return sorted((p, q) for p in graph for q in graph[p] if p < q)


def to_dot(graph: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {p};" for p in sorted(graph)]
    lines += [f"  {p} -- {q};" for p, q in graph_edges(graph)]
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# executable forms of the quotient and divisibility laws


def _quotient_rows(T: CharacterTable, N: Subgroup) -> list[int]:
    """Rows of ``T`` whose kernel contains ``N``."""
    G = T.group
    ncls = sorted({int(G.class_of[i]) for i in N.indices})
    return [int(i) for i in np.flatnonzero(T.kernel_classes[:, ncls].all(axis=1))]


def lemma21_quotient_witness(G: FiniteGroup, N: Subgroup, seed: int = 0):
    """``None`` if every character of ``G/N`` has the same codegree as its
    inflation to ``G``; otherwise a ``(quotient_row, G_row_or_None)`` witness.

    The table of ``G/N`` is computed from scratch; characters are matched by
    transporting values along the projection.
    """
    T = dixon_table(G, seed)
    Q, proj = quotient(G, N)
    TQ = dixon_table(Q, seed)
    rows = _quotient_rows(T, N)
    if len(rows) != len(TQ):
        return ("row-count", len(rows), len(TQ))
    # the value of an inflated character at G-class c is the Q-value at the image class
    qcls = Q.class_of[proj[G.class_reps]]
    e = T.exponent
    if e % TQ.exponent:
        return ("exponent", e, TQ.exponent)
    step = e // TQ.exponent
    lifted = np.zeros((len(TQ), len(G.classes), e), dtype=np.int64)
    lifted[:, :, ::step] = TQ.mult[:, qcls, :]
    lifted_canon = reduce_batch(lifted, e)
    index = {T.canon[i].tobytes(): i for i in rows}
    for j in range(len(TQ)):
        i = index.get(lifted_canon[j].tobytes())
        if i is None:
            return (j, None)
        if codegree(TQ, j) != codegree(T, i):
            return (j, i)
    return None


def lemma21_quotient_check(G: FiniteGroup, N: Subgroup, seed: int = 0) -> bool:
    return lemma21_quotient_witness(G, N, seed) is None


def lemma21_divisibility_witness(G: FiniteGroup, N: Subgroup, seed: int = 0):
    """``None`` if ``cod(theta) | cod(chi)`` whenever ``chi`` lies over ``theta``;
    otherwise the offending ``(theta_row, chi_row)``."""
    T = dixon_table(G, seed)
    TN, _ = subgroup_table(N, seed)
    m = restriction_multiplicities(T, N, TN)
    cod_n = [codegree(TN, j) for j in range(len(TN))]
    cod_g = [codegree(T, i) for i in range(len(T))]
    for i, j in zip(*np.nonzero(m)):
        if cod_g[i] % cod_n[j]:
            return (int(j), int(i))
    return None


def lemma21_divisibility_check(G: FiniteGroup, N: Subgroup, seed: int = 0) -> bool:
    return lemma21_divisibility_witness(G, N, seed) is None


def character_order(T: CharacterTable, row: int) -> int:
    """Multiplicative order of a linear character: lcm of the orders of its values."""
    if T.degrees[row] != 1:
        raise ValueError("character order is defined here for linear characters")
    e = T.exponent
    js = np.argmax(T.mult[row], axis=1)
    return math.lcm(*(e // math.gcd(e, int(j)) for j in js))


def linear_codegree_is_order_check(T: CharacterTable) -> bool:
    return all(codegree(T, i) == character_order(T, i) for i in T.linear_rows)


def pairwise_coprime(numbers) -> bool:
    nums = sorted(set(numbers))
    return all(math.gcd(a, b) == 1 for i, a in enumerate(nums) for b in nums[i + 1:])
