"""Exact character tables by the Burnside-Dixon method.

The class-sum structure constants give commuting matrices whose common
eigenvectors, over a prime field F_l with l = 1 (mod exponent), are the
central characters.  Each eigenvector is scaled to a character mod l and
lifted to an exact cyclotomic value by counting, for every class, how often
each e-th root of unity occurs as an eigenvalue (a discrete Fourier transform
over the power maps).  Every table is checked exactly before it is returned.
"""

from __future__ import annotations

import math
from importlib import resources
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from sympy import isprime, primitive_root

from .cyclotomic import Cyclotomic, cyclotomic_poly, format_value, parse_value, reduce_batch
from .perm import FiniteGroup, GroupError, NotNormal, Subgroup, is_normal, subgroup_from_mask

DUMP_VERSION = 1


class TableError(GroupError):
    pass


class NoWorkingPrime(TableError):
    pass


class SplitFailure(TableError):
    pass


class LiftInconsistent(TableError):
    pass


class TableMismatch(TableError):
    pass


# ---------------------------------------------------------------------------
# class algebra


def class_constants(G: FiniteGroup) -> np.ndarray:
    """``a[i, j, k]``: number of pairs ``(x, y)`` in classes ``i`` and ``j`` with ``x y = z_k``.

    ``z_k`` is the representative of class ``k``.
    """
    if "class_constants" in G._cache:
        return G._cache["class_constants"]
    r = len(G.classes)
    a = np.zeros((r, r, r), dtype=np.int64)
    P = G.perms
    Pinv = P[G.inverses]
    cls = G.class_of
    for k, z in enumerate(G.class_reps):
        # y = x^-1 z for every x
        ys = G.lookup(P[z][Pinv])
        np.add.at(a[:, :, k], (cls, cls[ys]), 1)
    G._cache["class_constants"] = a
    return a


def working_prime(order: int, exponent: int, bound: int = 10**8) -> int:
    """Smallest prime ``l = 1 (mod exponent)`` with ``l > 2 sqrt(order)``."""
    low = 2 * math.isqrt(order) + 1
    l = low + ((1 - low) % exponent)
    while l < bound:
        if l > 2 and isprime(l) and l * l > 4 * order:
            return l
        l += exponent
    raise NoWorkingPrime(f"no prime = 1 mod {exponent} below {bound}")


def power_maps(G: FiniteGroup) -> np.ndarray:
    """``pm[k, t]`` is the class of ``g_k^t`` for ``t`` in ``0..e-1``."""
    if "power_maps" in G._cache:
        return G._cache["power_maps"]
    e = G.exponent
    R = G.perms[G.class_reps]
    cur = np.tile(np.arange(G.degree, dtype=np.int32), (len(R), 1))
    pm = np.empty((len(R), e), dtype=np.int64)
    for t in range(e):
        pm[:, t] = G.class_of[G.lookup(cur)]
        cur = np.take_along_axis(R, cur, axis=1)
    G._cache["power_maps"] = pm
    return pm


# ---------------------------------------------------------------------------
# linear algebra over F_p


def _rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    A = A.copy() % p
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if not len(nz):
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = A[r] * pow(int(A[r, c]), -1, p) % p
        f = A[:, c].copy()
        f[r] = 0
        nzr = np.flatnonzero(f)
        if len(nzr):
            A[nzr] = (A[nzr] - f[nzr, None] * A[r]) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning the right null space of ``A``."""
    R, piv = _rref(A, p)
    n = A.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, c in enumerate(piv):
            basis[t, c] = (-R[i, f]) % p
    return basis


def _charpoly(C: np.ndarray, p: int) -> list[int]:
    """Characteristic polynomial mod p (lowest degree first) via Hessenberg form."""
    H = [[int(x) % p for x in row] for row in C]
    n = len(H)
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = pow(H[m][m - 1], -1, p)
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv % p
            if u:
                Hi, Hm = H[i], H[m]
                for j in range(n):
                    Hi[j] = (Hi[j] - u * Hm[j]) % p
                for row in H:
                    row[m] = (row[m] + u * row[i]) % p
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        # (x - h_mm) * p_{m-1}
        prev = polys[m - 1]
        cur = [0] * (m + 1)
        hmm = H[m - 1][m - 1]
        for j, c in enumerate(prev):
            cur[j + 1] = (cur[j + 1] + c) % p
            cur[j] = (cur[j] - hmm * c) % p
        t = 1
        for i in range(1, m):
            t = t * H[m - i][m - i - 1] % p
            coef = H[m - i - 1][m - 1] * t % p
            if coef:
                for j, c in enumerate(polys[m - i - 1]):
                    cur[j] = (cur[j] - coef * c) % p
        polys.append(cur)
    return polys[n]


def _roots(poly: list[int], p: int) -> list[int]:
    xs = np.arange(p, dtype=np.int64)
    acc = np.zeros(p, dtype=np.int64)
    for c in reversed(poly):
        acc = (acc * xs + c) % p
    return [int(x) for x in np.flatnonzero(acc == 0)]


def _echelon_columns(B: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    R, piv = _rref(B.T, p)
    return R.T.copy(), piv


def _split(space: tuple[np.ndarray, list[int]], A: np.ndarray, p: int) -> list[tuple[np.ndarray, list[int]]]:
    """Split an invariant subspace (columns of ``B``) into eigenspaces of ``A``."""
    B, piv = space
    d = B.shape[1]
    C = (A @ B % p)[piv, :]
    if np.all(C == np.diag(np.full(d, C[0, 0]))):
        return [space]
    roots = _roots(_charpoly(C, p), p)
    out = []
    total = 0
    for lam in roots:
        Y = _nullspace((C - lam * np.eye(d, dtype=np.int64)) % p, p)
        total += len(Y)
        out.append(_echelon_columns(B @ Y.T % p, p))
    if total != d:
        raise SplitFailure("class matrix is not diagonalisable over the working prime")
    return out


# ---------------------------------------------------------------------------
# exact products in Z[x]/(x^e - 1)


def _pairing(A: np.ndarray, B: np.ndarray, weights: np.ndarray, contract: str) -> np.ndarray:
    """Exact ``sum_c w_c * a(c) * conj(b(c))`` over cyclotomic coefficient vectors.

    ``A`` has shape ``(a, c, e)``, ``B`` shape ``(b, c, e)`` (or with the first
    two axes swapped for column sums, see ``contract``).  The products are
    formed in Z[x]/(x^e - 1) by FFT; the result is rounded and the rounding is
    accepted only if every entry was within 1e-6 of an integer, otherwise the
    sum is recomputed with integer arithmetic.
    """
    FA = np.fft.fft(A, axis=-1)
    FB = np.fft.fft(B, axis=-1)
    w = np.asarray(weights, dtype=float)
    if contract != "rows":
        FA = FA.transpose(1, 0, 2)
        FB = FB.transpose(1, 0, 2)
    # batched over frequencies k: (a, c) @ (c, b)
    S = np.matmul((FA * w[None, :, None]).transpose(2, 0, 1), FB.conj().transpose(2, 1, 0))
    S = S.transpose(1, 2, 0)
    real = np.fft.ifft(S, axis=-1).real
    out = np.rint(real)
    if np.abs(real - out).max(initial=0.0) < 1e-6 and np.abs(real).max(initial=0.0) < 2**50:
        return out.astype(np.int64)
    return _pairing_exact(A, B, weights, contract)


def _pairing_exact(A, B, weights, contract):
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    if contract != "rows":
        A = A.transpose(1, 0, 2)
        B = B.transpose(1, 0, 2)
    na, nc, e = A.shape
    nb = B.shape[0]
    out = np.zeros((na, nb, e), dtype=object)
    for s in range(e):
        # coefficient s: sum_j a_j * b_{j-s}
        Bs = np.roll(B, s, axis=-1)
        out[:, :, s] = np.einsum("acj,bcj,c->ab", A, Bs, np.asarray(weights, dtype=object))
    return out.astype(np.int64)


# ---------------------------------------------------------------------------
# the table


@dataclass(eq=False)
class CharacterTable:
    """Irreducible characters of ``group``.

    ``mult[i, c, j]`` is the multiplicity of ``zeta_e^j`` among the eigenvalues
    of a representation affording character ``i`` at class ``c``, so
    ``chi_i(g_c) = sum_j mult[i, c, j] zeta_e^j``; ``canon`` holds the same
    values in canonical form (power basis modulo Phi_e).
    """

    group: FiniteGroup
    exponent: int
    prime: int
    class_sizes: tuple[int, ...]
    power_maps: np.ndarray
    degrees: tuple[int, ...]
    mult: np.ndarray
    canon: np.ndarray
    _rows: list | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.degrees)

    def value(self, row: int, cls: int) -> Cyclotomic:
        return Cyclotomic.from_canonical(self.exponent, tuple(int(x) for x in self.canon[row, cls]))

    @property
    def rows(self) -> list[list[Cyclotomic]]:
        if self._rows is None:
            self._rows = [[self.value(i, c) for c in range(len(self.class_sizes))] for i in range(len(self))]
        return self._rows

    def complex_values(self) -> np.ndarray:
        e = self.exponent
        roots = np.exp(2j * np.pi * np.arange(e) / e)
        return self.mult @ roots

    def class_value_equal(self, row: int, c: int, d: int) -> bool:
        return bool(np.array_equal(self.canon[row, c], self.canon[row, d]))

    @cached_property
    def kernel_classes(self) -> np.ndarray:
        """``kc[i, c]`` is True iff ``chi_i(g_c) = chi_i(1)``."""
        return np.all(self.canon == self.canon[:, :1, :], axis=2)

    @cached_property
    def linear_rows(self) -> list[int]:
        return [i for i, d in enumerate(self.degrees) if d == 1]


def _sort_key(canon_row: np.ndarray, degree: int, trivial: bool):
    return (degree, not trivial, tuple(int(x) for x in canon_row.ravel()))


def dixon_table(G: FiniteGroup, seed: int = 0) -> CharacterTable:
    """The exact character table of ``G`` (cached on the group per seed)."""
    key = ("table", seed)
    if key in G._cache:
        return G._cache[key]
    T = _dixon(G, seed)
    G._cache[key] = T
    return T


def _dixon(G: FiniteGroup, seed: int) -> CharacterTable:
    r = len(G.classes)
    e = G.exponent
    n = G.order
    ell = working_prime(n, e)
    sizes = np.array(G.class_sizes, dtype=np.int64)
    a = class_constants(G)

    # common eigenvectors w (columns) of M_i with (M_i)[j, k] = a[i, j, k]
    spaces = [(np.eye(r, dtype=np.int64), list(range(r)))]
    order = sorted(range(1, r), key=lambda i: (sizes[i], i))
    for i in order:
        if all(B.shape[1] == 1 for B, _ in spaces):
            break
        M = a[i] % ell
        new = []
        for sp in spaces:
            new.extend(_split(sp, M, ell) if sp[0].shape[1] > 1 else [sp])
        spaces = new
    rng = np.random.default_rng(seed)
    attempts = 0
    while not all(B.shape[1] == 1 for B, _ in spaces):
        attempts += 1
        if attempts > 50:
            raise SplitFailure("random class-matrix combinations did not separate the characters")
        coef = rng.integers(0, ell, size=r)
        M = np.einsum("i,ijk->jk", coef, a % ell) % ell
        new = []
        for sp in spaces:
            new.extend(_split(sp, M, ell) if sp[0].shape[1] > 1 else [sp])
        spaces = new
    if len(spaces) != r:
        raise SplitFailure(f"found {len(spaces)} central characters, expected {r}")

    inv_cls = G.inverse_class
    size_inv = np.array([pow(int(s), -1, ell) for s in sizes], dtype=np.int64)
    isqrt_n = math.isqrt(n)
    X = np.zeros((r, r), dtype=np.int64)
    degrees = []
    for t, (B, _) in enumerate(spaces):
        w = B[:, 0] % ell
        if w[0] == 0:
            raise LiftInconsistent("central character vanishes at the identity class")
        w = w * pow(int(w[0]), -1, ell) % ell
        s = int((w * w[inv_cls] % ell * size_inv % ell).sum() % ell)
        if s == 0:
            raise LiftInconsistent("degenerate norm for a central character")
        d2 = n * pow(s, -1, ell) % ell
        d = next((d for d in range(1, isqrt_n + 1) if d * d % ell == d2), None)
        if d is None:
            raise LiftInconsistent("no admissible degree for a central character")
        degrees.append(d)
        X[t] = d * w % ell * size_inv % ell

    pm = power_maps(G)
    z = pow(primitive_root(ell), (ell - 1) // e, ell)
    zinv = pow(z, -1, ell)
    zpow = np.array([pow(zinv, k, ell) for k in range(e)], dtype=np.int64)
    Z = zpow[np.outer(np.arange(e), np.arange(e)) % e]
    stacked = X[:, pm].reshape(r * r, e)  # chi(g_k^t)
    if e * ell * ell < 2**52:
        M = np.rint(stacked.astype(float) @ Z.astype(float)).astype(np.int64) % ell
    else:
        M = (stacked.astype(object) @ Z.astype(object)) % ell
        M = M.astype(np.int64)
    M = M * pow(e, -1, ell) % ell
    mult = M.reshape(r, r, e)
    deg = np.array(degrees, dtype=np.int64)
    if np.any(mult > deg[:, None, None]) or np.any(mult.sum(axis=2) != deg[:, None]):
        raise LiftInconsistent("eigenvalue multiplicities outside [0, degree]")

    canon = reduce_batch(mult, e)
    trivial = [bool(np.all(mult[i, :, 0] == 1)) for i in range(r)]
    perm = sorted(range(r), key=lambda i: _sort_key(canon[i], degrees[i], trivial[i]))
    T = CharacterTable(
        group=G,
        exponent=e,
        prime=ell,
        class_sizes=tuple(int(s) for s in sizes),
        power_maps=pm,
        degrees=tuple(int(degrees[i]) for i in perm),
        mult=mult[perm],
        canon=canon[perm],
    )
    verify_table(T)
    return T


def verify_table(T: CharacterTable) -> None:
    """Exact orthogonality checks; raises :class:`LiftInconsistent` on failure."""
    G = T.group
    r = len(T.class_sizes)
    e = T.exponent
    if len(T) != r:
        raise LiftInconsistent("row count differs from class count")
    if sum(d * d for d in T.degrees) != G.order:
        raise LiftInconsistent("sum of squared degrees differs from the group order")
    for d in T.degrees:
        if G.order % d:
            raise LiftInconsistent(f"degree {d} does not divide |G|")
    one = np.zeros(len(cyclotomic_poly(e)) - 1, dtype=np.int64)
    one[0] = 1
    rows = reduce_batch(_pairing(T.mult, T.mult, np.array(T.class_sizes), "rows"), e)
    want = np.einsum("ab,k->abk", np.eye(r, dtype=np.int64) * G.order, one)
    if not np.array_equal(rows, want):
        raise LiftInconsistent("row orthogonality fails")
    cols = reduce_batch(_pairing(T.mult, T.mult, np.ones(r), "cols"), e)
    cent = np.array([G.order // s for s in T.class_sizes], dtype=np.int64)
    want = np.einsum("ab,k->abk", np.diag(cent), one)
    if not np.array_equal(cols, want):
        raise LiftInconsistent("column orthogonality fails")
    vals = np.abs(T.complex_values())
    if np.any(vals > np.array(T.degrees)[:, None] + 1e-9):
        raise LiftInconsistent("character value exceeds its degree in absolute value")


# ---------------------------------------------------------------------------
# kernels, restriction


def kernel(T: CharacterTable, row: int) -> Subgroup:
    """``Ker chi``: union of the classes where ``chi(g) = chi(1)``."""
    G = T.group
    mask = T.kernel_classes[row][G.class_of]
    K = subgroup_from_mask(G, mask)
    assert G.order % K.order == 0
    return K


def kernel_order(T: CharacterTable, row: int) -> int:
    return int(np.dot(T.kernel_classes[row], T.class_sizes))


def is_faithful(T: CharacterTable, row: int) -> bool:
    return kernel_order(T, row) == 1


def subgroup_table(N: Subgroup, seed: int = 0) -> tuple[CharacterTable, np.ndarray]:
    """Table of ``N`` (as a standalone group) and the embedding of its elements."""
    H, emb = N.as_group()
    return dixon_table(H, seed), emb


def restriction_multiplicities(T: CharacterTable, N: Subgroup, T_N: CharacterTable) -> np.ndarray:
    """``m[i, j] = <chi_i|_N, theta_j>_N`` for all rows of both tables (exact)."""
    G = T.group
    if not is_normal(G, N):
        raise NotNormal("restriction is set up for normal subgroups")
    H, emb = N.as_group()
    if T_N.group is not H:
        if T_N.group.order != N.order or set(G.lookup(T_N.group.perms).tolist()) != set(N.indices):
            raise TableMismatch("table does not belong to the given subgroup")
        H = T_N.group
        emb = G.lookup(H.perms)
    key = ("restrict", N.indices, id(T_N))
    if key in G._cache:
        return G._cache[key]
    e = T.exponent
    if e % T_N.exponent:
        raise TableMismatch("subgroup exponent does not divide group exponent")
    step = e // T_N.exponent
    gcls = G.class_of[emb[H.class_reps]]
    A = T.mult[:, gcls, :]
    B = np.zeros((len(T_N), len(H.classes), e), dtype=np.int64)
    B[:, :, ::step] = T_N.mult
    prod = reduce_batch(_pairing(A, B, np.array(H.class_sizes), "rows"), e)
    if np.any(prod[:, :, 1:]) or np.any(prod[:, :, 0] % N.order):
        raise LiftInconsistent("restriction multiplicities are not integers")
    out = prod[:, :, 0] // N.order
    G._cache[key] = out
    return out


def restrict(T: CharacterTable, row: int, N: Subgroup, T_N: CharacterTable) -> np.ndarray:
    return restriction_multiplicities(T, N, T_N)[row]


def lies_over(T: CharacterTable, row: int, N: Subgroup, T_N: CharacterTable, row_N: int) -> bool:
    return bool(restriction_multiplicities(T, N, T_N)[row, row_N] > 0)


# ---------------------------------------------------------------------------
# text dump


def dump_table(T: CharacterTable, label: str = "") -> str:
    """Versioned plain-text dump.

    Layout::

        chartab 1
        label <text>
        order <n> exponent <e> classes <r>
        sizes <s_1> ... <s_r>
        orders <o_1> ... <o_r>
        row <degree>: <v_1> ; ... ; <v_r>

    Values are canonical coefficient lists ``[c_0,...,c_{phi(e)-1}]`` over the
    power basis of Q(zeta_e).  :func:`load_table` also accepts GAP-style
    expressions such as ``-E(5)^2-E(5)^3``.
    """
    G = T.group
    lines = [f"chartab {DUMP_VERSION}", f"label {label}",
             f"order {G.order} exponent {T.exponent} classes {len(T.class_sizes)}",
             "sizes " + " ".join(map(str, T.class_sizes)),
             "orders " + " ".join(str(int(G.element_orders[c])) for c in G.class_reps)]
    for i, d in enumerate(T.degrees):
        vals = " ; ".join("[" + ",".join(str(int(x)) for x in T.canon[i, c]) + "]"
                          for c in range(len(T.class_sizes)))
        lines.append(f"row {d}: {vals}")
    return "\n".join(lines) + "\n"


@dataclass
class TableDump:
    label: str
    order: int
    exponent: int
    sizes: list[int]
    orders: list[int]
    degrees: list[int]
    rows: list[list[Cyclotomic]]


def load_table(text: str) -> TableDump:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    head = lines[0].split()
    if head[0] != "chartab" or int(head[1]) != DUMP_VERSION:
        raise ValueError(f"unsupported table dump header {lines[0]!r}")
    label = lines[1][len("label"):].strip()
    f = lines[2].split()
    order, exponent = int(f[1]), int(f[3])
    sizes = [int(x) for x in lines[3].split()[1:]]
    orders = [int(x) for x in lines[4].split()[1:]]
    degrees, rows = [], []
    for ln in lines[5:]:
        head, _, body = ln.partition(":")
        degrees.append(int(head.split()[1]))
        row = []
        for tok in body.split(";"):
            tok = tok.strip()
            if tok.startswith("["):
                coeffs = [int(x) for x in tok.strip("[]").split(",") if x.strip()]
                row.append(Cyclotomic.from_canonical(exponent, coeffs))
            else:
                row.append(parse_value(tok))
        rows.append(row)
    return TableDump(label, order, exponent, sizes, orders, degrees, rows)


def table_signature(sizes, rows, order: int) -> list:
    """Order-free description of a table: per row, the sorted (class size, value) pairs.

    Values are written over a common root-of-unity order ``order`` (a multiple
    of every value's order) and compared by canonical form, so matching is exact.
    """
    sig = []
    for row in rows:
        pairs = sorted((s, v.embed(order).canonical()) for s, v in zip(sizes, row))
        sig.append(tuple(pairs))
    return sorted(sig)


def reference_table(name: str) -> TableDump:
    """A shipped hand-written table (``S3``, ``S4``, ``A4``, ``A5``, ``Q8``, ``D8``)."""
    return load_table(resources.files("charcod").joinpath(f"data/tables/{name}.tbl").read_text())


def matches_reference(T: CharacterTable, ref: TableDump) -> bool:
    """Exact comparison up to row and class order."""
    if T.group.order != ref.order or sorted(T.degrees) != sorted(ref.degrees):
        return False
    e = math.lcm(T.exponent, ref.exponent)
    return table_signature(list(T.class_sizes), T.rows, e) == table_signature(ref.sizes, ref.rows, e)


__all__ = [
    "CharacterTable", "class_constants", "dixon_table", "kernel", "is_faithful", "restrict",
    "lies_over", "restriction_multiplicities", "dump_table", "load_table", "format_value",
    "working_prime", "reference_table", "matches_reference", "NoWorkingPrime", "SplitFailure", "LiftInconsistent", "TableMismatch",
]
