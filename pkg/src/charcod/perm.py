"""Permutation groups with fully enumerated elements.

Composition convention: points are acted on from the right, and a product
``g * h`` applies ``g`` first, then ``h``; as image arrays
``(g * h)[x] == h[g[x]]``.  Elements of a :class:`FiniteGroup` are addressed
by their index into ``G.perms``; index 0 is always the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 20_000


class GroupError(Exception):
    """Base class for errors raised by the group machinery."""


class OrderCapExceeded(GroupError):
    pass


class MalformedPermutation(GroupError):
    pass


class DegreeMismatch(GroupError):
    pass


class NotNormal(GroupError):
    pass


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise MalformedPermutation(f"not a bijection on {n} points: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for a in cyc:
                if not 0 <= a < degree:
                    raise MalformedPermutation(f"point {a} outside degree {degree}")
                if a in seen:
                    raise MalformedPermutation(f"point {a} repeated in cycle notation")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        return multiply(self, other)

    def inverse(self) -> Permutation:
        return inverse(self)

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles(include_fixed=True))) if self.images else 1

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


def multiply(g: Permutation, h: Permutation) -> Permutation:
    """Return ``g * h``: apply ``g``, then ``h``."""
    if g.degree != h.degree:
        raise DegreeMismatch(f"degrees {g.degree} and {h.degree}")
    return Permutation(tuple(h.images[x] for x in g.images))


def inverse(g: Permutation) -> Permutation:
    inv = [0] * g.degree
    for x, y in enumerate(g.images):
        inv[y] = x
    return Permutation(tuple(inv))


class _Lookup:
    """Vectorised permutation -> element index lookup.

    Elements of one group are distinguished by their images on a small base of
    points; those images are packed into one int64 code per element.
    """

    def __init__(self, perms: np.ndarray):
        order, degree = perms.shape
        base: list[int] = []
        codes = np.zeros(order, dtype=np.int64)
        radix = max(degree, 2)
        # greedy base: add points until the packed codes separate all elements
        while len(np.unique(codes)) < order:
            best, best_count = None, -1
            for p in range(degree):
                if p in base:
                    continue
                count = len(np.unique(codes * radix + perms[:, p]))
                if count > best_count:
                    best, best_count = p, count
            if radix ** (len(base) + 1) >= 2**62:
                break
            base.append(best)
            codes = codes * radix + perms[:, best]
        self.base = base
        self.radix = radix
        self.packed = len(np.unique(codes)) == order
        if self.packed:
            self.order_idx = np.argsort(codes, kind="stable")
            self.sorted_codes = codes[self.order_idx]
        else:
            self.table = {row.tobytes(): i for i, row in enumerate(perms)}

    def __call__(self, rows: np.ndarray) -> np.ndarray:
        rows = np.asarray(rows, dtype=np.int32)
        single = rows.ndim == 1
        rows = np.atleast_2d(rows)
        if self.packed:
            codes = np.zeros(len(rows), dtype=np.int64)
            for p in self.base:
                codes = codes * self.radix + rows[:, p]
            pos = np.searchsorted(self.sorted_codes, codes)
            pos = np.minimum(pos, len(self.sorted_codes) - 1)
            if not np.all(self.sorted_codes[pos] == codes):
                raise KeyError("permutation is not an element of the group")
            out = self.order_idx[pos]
        else:
            out = np.array([self.table[r.tobytes()] for r in rows], dtype=np.int64)
        return out[0] if single else out


class FiniteGroup:
    """A permutation group with every element enumerated.

    Instances are built by :func:`close_generators` and are immutable after
    construction.  ``classes`` lists conjugacy classes as sorted tuples of
    element indices, ordered by their least index (so ``classes[0] == (0,)``);
    ``class_of[x]`` gives the class of element ``x``.
    """

    def __init__(self, degree: int, generators: list[Permutation], perms: np.ndarray,
                 gen_cols: np.ndarray, bfs_parent: np.ndarray, bfs_gen: np.ndarray):
        self.degree = degree
        self.generators = generators
        self.perms = perms
        self.perms.setflags(write=False)
        self.order = len(perms)
        # gen_cols[s, x] = index of x * generators[s]
        self.gen_cols = gen_cols
        self.bfs_parent = bfs_parent
        self.bfs_gen = bfs_gen
        self.lookup = _Lookup(perms)
        self.inverses = self.lookup(np.argsort(perms, axis=1))
        self._cols: dict[int, np.ndarray] = {}
        self._cache: dict = {}
        self._compute_classes()

    def __repr__(self) -> str:
        return f"<FiniteGroup degree={self.degree} order={self.order}>"

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_cols"] = {}
        state["_cache"] = {}
        return state

    def element(self, i: int) -> Permutation:
        return Permutation(tuple(int(x) for x in self.perms[i]))

    def index(self, g: Permutation) -> int:
        if g.degree != self.degree:
            raise DegreeMismatch(f"degree {g.degree} != {self.degree}")
        return int(self.lookup(np.array(g.images)))

    def mul(self, i: int, j: int) -> int:
        return int(self.lookup(self.perms[j][self.perms[i]]))

    def right_col(self, j: int) -> np.ndarray:
        """Indices of ``x * g_j`` for every element ``x``."""
        col = self._cols.get(j)
        if col is None:
            col = self.lookup(self.perms[j][self.perms])
            self._cols[j] = col
        return col

    def left_col(self, j: int) -> np.ndarray:
        """Indices of ``g_j * x`` for every element ``x``."""
        return self.lookup(self.perms[:, self.perms[j]])

    def conj_col(self, j: int) -> np.ndarray:
        """Indices of ``g_j^-1 * x * g_j`` for every element ``x``."""
        g = self.perms[j]
        ginv = self.perms[self.inverses[j]]
        return self.lookup(g[self.perms[:, ginv]])

    def power(self, i: int, t: int) -> int:
        g = self.perms[i]
        out = np.arange(self.degree)
        t %= int(self.element_orders[i])
        base = g.copy()
        while t:
            if t & 1:
                out = base[out]
            base = base[base]
            t >>= 1
        return int(self.lookup(out))

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.ones(self.order, dtype=np.int64)
        cur = self.perms.copy()
        ident = np.arange(self.degree)
        done = np.all(cur == ident, axis=1)
        m = 1
        while not done.all():
            m += 1
            cur = np.take_along_axis(self.perms, cur, axis=1)
            now = np.all(cur == ident, axis=1) & ~done
            orders[now] = m
            done |= now
        return orders

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in np.unique(self.element_orders)))

    @property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @property
    def class_reps(self) -> list[int]:
        return [c[0] for c in self.classes]

    @cached_property
    def inverse_class(self) -> np.ndarray:
        return np.array([self.class_of[self.inverses[c[0]]] for c in self.classes])

    def _compute_classes(self) -> None:
        # union the conjugation orbits of all generators
        parent = np.arange(self.order)
        cols = [self.conj_col(self.index(g)) for g in self.generators]
        changed = True
        while changed:
            changed = False
            for col in cols:
                merged = np.minimum(parent, parent[col])
                np.minimum.at(merged, col, parent)
                merged = merged[merged]
                if not np.array_equal(merged, parent):
                    parent = merged
                    changed = True
        reps, class_of = np.unique(parent, return_inverse=True)
        members: list[list[int]] = [[] for _ in reps]
        for x, c in enumerate(class_of):
            members[c].append(x)
        self.classes: list[tuple[int, ...]] = [tuple(m) for m in members]
        self.class_of = class_of.astype(np.int64)
        for c in self.classes:
            assert self.order % len(c) == 0


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` given by sorted element indices."""

    parent: FiniteGroup
    indices: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.indices)

    @cached_property
    def mask(self) -> int:
        """Bitmask over parent element indices."""
        return sum(1 << i for i in self.indices)

    @cached_property
    def bool_mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.indices)] = True
        return m

    def __contains__(self, i: int) -> bool:
        return bool(self.bool_mask[i])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subgroup) and self.parent is other.parent and self.indices == other.indices

    def __hash__(self) -> int:
        return hash(self.indices)

    def __le__(self, other: Subgroup) -> bool:
        return self.mask & other.mask == self.mask

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, picked greedily in index order."""
        gens: list[int] = []
        cur = _closure(self.parent, [])
        for i in self.indices:
            if not cur[i]:
                gens.append(i)
                cur = _closure(self.parent, gens)
                if cur.sum() == self.order:
                    break
        return tuple(gens)

    def as_group(self) -> tuple[FiniteGroup, np.ndarray]:
        """Standalone copy of the subgroup and the map from its indices to parent indices."""
        key = ("as_group", self.indices)
        hit = self.parent._cache.get(key)
        if hit is None:
            gens = [self.parent.element(i) for i in self.generators]
            H = close_generators(self.parent.degree, gens)
            emb = self.parent.lookup(H.perms)
            hit = (H, emb)
            self.parent._cache[key] = hit
        return hit


def close_generators(degree: int, gens: Sequence[Permutation], cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Enumerate the group generated by ``gens`` breadth first.

    Elements appear in the order they are reached by right multiplication by
    the generators, in generator order, starting from the identity.
    """
    gens = list(gens)
    for g in gens:
        if not isinstance(g, Permutation):
            g = Permutation(tuple(g))
        if g.degree != degree:
            raise DegreeMismatch(f"generator of degree {g.degree}, expected {degree}")
    gen_arrs = [np.array(g.images, dtype=np.int32) for g in gens]
    ident = np.arange(degree, dtype=np.int32)
    rows = [ident]
    seen = {ident.tobytes(): 0}
    parent = [-1]
    via = [-1]
    cols: list[list[int]] = [[] for _ in gens]
    head = 0
    while head < len(rows):
        x = rows[head]
        for s, g in enumerate(gen_arrs):
            y = g[x]
            key = y.tobytes()
            j = seen.get(key)
            if j is None:
                j = len(rows)
                if j >= cap:
                    raise OrderCapExceeded(f"group order exceeds cap {cap}")
                seen[key] = j
                rows.append(y)
                parent.append(head)
                via.append(s)
            cols[s].append(j)
        head += 1
    perms = np.array(rows, dtype=np.int32).reshape(len(rows), degree)
    gen_cols = np.array(cols, dtype=np.int64).reshape(len(gens), len(rows))
    return FiniteGroup(degree, [Permutation(tuple(map(int, g))) for g in gen_arrs], perms,
                       gen_cols, np.array(parent), np.array(via))


def element_order(G: FiniteGroup, i: int) -> int:
    return int(G.element_orders[i])


def _closure(G: FiniteGroup, gens: Sequence[int], start: np.ndarray | None = None) -> np.ndarray:
    """Boolean mask of the subgroup generated by ``gens`` (and ``start``)."""
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    if start is not None:
        mask |= start
    cols = [G.right_col(int(j)) for j in gens]
    frontier = np.flatnonzero(mask)
    while len(frontier):
        new = []
        for col in cols:
            img = col[frontier]
            img = img[~mask[img]]
            mask[img] = True
            new.append(img)
        frontier = np.unique(np.concatenate(new)) if new else np.array([], dtype=np.int64)
    return mask


def subgroup_from_mask(G: FiniteGroup, mask: np.ndarray) -> Subgroup:
    return Subgroup(G, tuple(int(i) for i in np.flatnonzero(mask)))


def subgroup_generated(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    seed = sorted(set(int(i) for i in seed))
    H = subgroup_from_mask(G, _closure(G, seed))
    assert G.order % H.order == 0
    return H


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    """All ``x`` with ``x g = g x``."""
    gx = G.left_col(g)
    xg = G.right_col(g)
    C = subgroup_from_mask(G, gx == xg)
    assert C.order * len(G.classes[G.class_of[g]]) == G.order
    return C


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Elements ``x`` with ``x^-1 H x = H``."""
    hmask = H.bool_mask
    keep = np.ones(G.order, dtype=bool)
    for h in H.generators:
        # x^-1 h x for all x
        xinv_h_x = G.lookup(_conj_many(G, h))
        keep &= hmask[xinv_h_x]
    return subgroup_from_mask(G, keep)


def _conj_many(G: FiniteGroup, h: int) -> np.ndarray:
    # row x holds x^-1 * h * x: apply x^-1, then h, then x
    P = G.perms
    Pinv = P[G.inverses]
    return np.take_along_axis(P, P[h][Pinv], axis=1)


def conjugates_of(G: FiniteGroup, h: int) -> np.ndarray:
    """Indices of ``x^-1 h x`` for every ``x``."""
    return G.lookup(_conj_many(G, h))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    hmask = H.bool_mask
    for g in G.generators:
        col = G.conj_col(G.index(g))
        if not hmask[col[list(H.indices)]].all():
            return False
    return True


def normal_closure(G: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest normal subgroup containing ``seed``."""
    seed_classes = {int(G.class_of[i]) for i in seed}
    gens = [i for c in sorted(seed_classes) for i in G.classes[c]]
    return subgroup_generated(G, gens)


def join(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    if A <= B:
        return B
    if B <= A:
        return A
    return subgroup_from_mask(G, _closure(G, B.generators, start=A.bool_mask))


def intersection(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    return subgroup_from_mask(G, A.bool_mask & B.bool_mask)


def coset_labels(G: FiniteGroup, N: Subgroup) -> np.ndarray:
    """Label each element by the coset ``xN`` containing it (labels by least member)."""
    labels = np.full(G.order, -1, dtype=np.int64)
    nperms = G.perms[list(N.indices)]
    count = 0
    for x in range(G.order):
        if labels[x] >= 0:
            continue
        # x * n for n in N: apply x then n
        members = G.lookup(nperms[:, G.perms[x]])
        labels[members] = count
        count += 1
    return labels


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, np.ndarray]:
    """``G/N`` acting on the cosets of ``N``, plus the projection map.

    ``proj[x]`` is the index in the quotient of the image of element ``x``.
    """
    if not is_normal(G, N):
        raise NotNormal("quotient needs a normal subgroup")
    labels = coset_labels(G, N)
    m = G.order // N.order
    reps = np.full(m, -1, dtype=np.int64)
    for x in range(G.order - 1, -1, -1):
        reps[labels[x]] = x
    gens = []
    for s in range(len(G.generators)):
        # coset of x maps to the coset of x * s
        gens.append(Permutation(tuple(int(v) for v in labels[G.gen_cols[s][reps]])))
    Q = close_generators(m, gens, cap=max(DEFAULT_ORDER_CAP, m))
    assert Q.order == m
    # walk Q's BFS tree alongside G to pair each quotient element with a coset
    coset_of_q = np.empty(Q.order, dtype=np.int64)
    grep = np.empty(Q.order, dtype=np.int64)
    grep[0] = 0
    coset_of_q[0] = labels[0]
    for y in range(1, Q.order):
        s = Q.bfs_gen[y]
        grep[y] = G.gen_cols[s][grep[Q.bfs_parent[y]]]
        coset_of_q[y] = labels[grep[y]]
    q_of_coset = np.empty(m, dtype=np.int64)
    q_of_coset[coset_of_q] = np.arange(Q.order)
    return Q, q_of_coset[labels]


def commutator_subgroup(G: FiniteGroup, A: Subgroup, B: Subgroup) -> Subgroup:
    """``[A, B]`` for normal subgroups ``A`` and ``B`` of ``G``."""
    P = G.perms
    gens = set()
    binv = P[G.inverses[list(B.indices)]]
    bperm = P[list(B.indices)]
    for a in A.generators:
        ainv = P[G.inverses[a]]
        for i in range(len(B.indices)):
            # a^-1 b^-1 a b
            img = bperm[i][P[a][binv[i][ainv]]]
            gens.add(int(G.lookup(img)))
    gens.discard(0)
    return normal_closure(G, gens) if gens else trivial_subgroup(G)
