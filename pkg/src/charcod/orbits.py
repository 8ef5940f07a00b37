"""Orbits of a complement acting on an abelian normal subgroup and on its dual.

All actions run inside the ambient permutation group: ``H`` acts on ``V`` by
conjugation and on ``Irr(V)`` by ``lambda^h(v) = lambda(h v h^-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chartab import dixon_table
from .codegree import codegree
from .perm import FiniteGroup, GroupError, NotNormal, Subgroup, intersection, is_normal
from .structure import (
    NotFrobenius,
    find_complement,
    frobenius_structure,
    is_abelian,
    minimal_normal_subgroups,
    normal_subgroups,
)


class NotAbelian(GroupError):
    pass


class NotComplemented(GroupError):
    pass


@dataclass(frozen=True)
class ActionOrbits:
    acting: Subgroup
    space: str  # "V" or "Irr(V)"
    orbits: tuple[tuple[int, ...], ...]

    @property
    def sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    @property
    def m_star_set(self) -> frozenset[int]:
        return frozenset(s for s in self.sizes if s > 1)

    @property
    def m_star_count(self) -> int:
        return len(self.m_star_set)


def _check(G: FiniteGroup, V: Subgroup) -> None:
    if not is_normal(G, V):
        raise NotNormal("V must be normal")
    Vg, _ = V.as_group()
    if not is_abelian(Vg):
        raise NotAbelian("V must be abelian")


def _orbits_from_action(n_points: int, perms: list[np.ndarray]) -> tuple[tuple[int, ...], ...]:
    seen = np.zeros(n_points, dtype=bool)
    out = []
    for start in range(n_points):
        if seen[start]:
            continue
        orbit = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for p in perms:
                y = int(p[x])
                if y not in orbit:
                    orbit.add(y)
                    stack.append(y)
        for y in orbit:
            seen[y] = True
        out.append(tuple(sorted(orbit)))
    return tuple(out)


def orbits_on_subgroup(G: FiniteGroup, H: Subgroup, V: Subgroup) -> ActionOrbits:
    """Orbits of ``H`` on the elements of ``V`` (points are positions in ``V.indices``)."""
    _check(G, V)
    pos = {g: i for i, g in enumerate(V.indices)}
    acts = []
    for h in H.generators:
        col = G.conj_col(h)
        acts.append(np.array([pos[int(col[v])] for v in V.indices]))
    return ActionOrbits(H, "V", _orbits_from_action(V.order, acts))


def dual_points(V: Subgroup) -> tuple[np.ndarray, int]:
    """Irreducible characters of abelian ``V`` as exponent vectors.

    Row ``i`` gives, for every element of ``V`` (in ``V.indices`` order), the
    ``j`` with ``lambda_i(v) = zeta_e^j``; rows are sorted lexicographically.
    """
    Vg, emb = V.as_group()
    T = dixon_table(Vg)
    e = T.exponent
    # linear characters: each class value is a single root of unity
    expo = np.argmax(T.mult, axis=2)  # (rows, classes)
    pos = np.empty(V.parent.order, dtype=np.int64)
    pos[emb] = np.arange(Vg.order)
    order_in_V = pos[list(V.indices)]
    vals = expo[:, Vg.class_of[order_in_V]]
    vals = vals[np.lexsort(vals.T[::-1])]
    return vals, e


def orbits_on_dual(G: FiniteGroup, H: Subgroup, V: Subgroup) -> ActionOrbits:
    """Orbits of ``H`` on ``Irr(V)``; points are row indices of :func:`dual_points`."""
    _check(G, V)
    vals, _ = dual_points(V)
    key = {row.tobytes(): i for i, row in enumerate(vals)}
    pos = {g: i for i, g in enumerate(V.indices)}
    acts = []
    for h in H.generators:
        # lambda^h(v) = lambda(h v h^-1); h v h^-1 = conj by h^-1
        hinv = int(G.inverses[h])
        col = G.conj_col(hinv)
        perm_v = np.array([pos[int(col[v])] for v in V.indices])
        moved = vals[:, perm_v]
        acts.append(np.array([key[r.tobytes()] for r in moved]))
    return ActionOrbits(H, "Irr(V)", _orbits_from_action(len(vals), acts))


def relative_rows(G: FiniteGroup, V: Subgroup, seed: int = 0) -> list[int]:
    """Rows of ``Irr(G | V)``: characters whose kernel does not contain ``V``."""
    T = dixon_table(G, seed)
    vcls = sorted({int(G.class_of[i]) for i in V.indices})
    return [i for i in range(len(T)) if not T.kernel_classes[i, vcls].all()]


def relative_degrees(G: FiniteGroup, V: Subgroup, seed: int = 0) -> frozenset[int]:
    T = dixon_table(G, seed)
    return frozenset(T.degrees[i] for i in relative_rows(G, V, seed))


def relative_codegrees(G: FiniteGroup, V: Subgroup, seed: int = 0) -> frozenset[int]:
    T = dixon_table(G, seed)
    return frozenset(codegree(T, i) for i in relative_rows(G, V, seed))


def clifford_inclusion_check(G: FiniteGroup, H: Subgroup, V: Subgroup, seed: int = 0):
    """Check that every nontrivial dual orbit size is a degree in ``cd(G | V)``.

    Returns ``(ok, witnesses)`` where ``witnesses`` maps each orbit size to a
    row of ``Irr(G | V)`` of that degree (or ``None`` if missing).
    """
    if V.order * H.order != G.order or intersection(G, V, H).order != 1:
        raise NotComplemented("G must be the semidirect product of H and V")
    dual = orbits_on_dual(G, H, V)
    T = dixon_table(G, seed)
    rows = relative_rows(G, V, seed)
    wit: dict[int, int | None] = {}
    for size in sorted(dual.m_star_set):
        wit[size] = next((i for i in rows if T.degrees[i] == size), None)
    return all(v is not None for v in wit.values()), wit


def p_divides_relative_codegrees(G: FiniteGroup, V: Subgroup, p: int, seed: int = 0) -> bool:
    return all(c % p == 0 for c in relative_codegrees(G, V, seed))


def unique_minimal_normal(G: FiniteGroup, V: Subgroup) -> bool:
    mins = minimal_normal_subgroups(G)
    return len(mins) == 1 and mins[0] == V


def find_split_abelian(G: FiniteGroup) -> tuple[Subgroup, Subgroup] | None:
    """A decomposition ``G = H V`` with ``V`` abelian normal, ``H`` ∩ ``V`` = 1.

    Prefers an abelian Frobenius kernel, then the largest complemented abelian
    normal subgroup.  Returns ``(H, V)`` or ``None``.
    """
    try:
        K, H = frobenius_structure(G)
        Kg, _ = K.as_group()
        if is_abelian(Kg):
            return H, K
    except NotFrobenius:
        pass
    cands = []
    for V in normal_subgroups(G):
        if 1 < V.order < G.order:
            Vg, _ = V.as_group()
            if is_abelian(Vg):
                cands.append(V)
    for V in sorted(cands, key=lambda s: (-s.order, s.indices)):
        H = find_complement(G, V, max_starts=64)
        if H is not None:
            return H, V
    return None
