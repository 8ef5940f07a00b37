"""Exact arithmetic in the cyclotomic field Q(zeta_e).

A :class:`Cyclotomic` is stored as a coefficient vector over the powers
``zeta_e^0 .. zeta_e^(e-1)``.  That spanning set is redundant, so equality and
hashing go through the canonical form: the remainder modulo the cyclotomic
polynomial ``Phi_e``, i.e. coordinates in the power basis
``1, zeta, ..., zeta^(phi(e)-1)``.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np

Number = Union[int, Fraction]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    num = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        q, r = divmod(num[i + len(den) - 1], lead)
        assert r == 0
        out[i] = q
        for j, c in enumerate(den):
            num[i + j] -= q * c
    assert not any(num[: len(den) - 1])
    return out


def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _reduction_matrix(e: int) -> np.ndarray:
    """Row ``j`` holds the canonical form of ``zeta_e^j``."""
    phi = cyclotomic_poly(e)
    deg = len(phi) - 1
    R = np.zeros((e, deg), dtype=np.int64)
    cur = np.zeros(deg, dtype=np.int64)
    cur[0] = 1
    low = np.array(phi[:-1], dtype=np.int64)
    for j in range(e):
        R[j] = cur
        # multiply by x, then replace x^deg by -sum(low * x^i)
        top = cur[-1]
        cur = np.concatenate(([0], cur[:-1])) - top * low
    R.setflags(write=False)
    return R


def reduce_batch(coeffs: np.ndarray, e: int) -> np.ndarray:
    """Canonical forms for a stack of integer vectors of length ``e``.

    ``coeffs`` has shape ``(..., e)``; the result has shape ``(..., phi(e))``.
    """
    R = _reduction_matrix(e)
    c = np.asarray(coeffs, dtype=np.int64)
    flat = c.reshape(-1, e)
    bound = float(np.abs(flat).sum(axis=1).max(initial=0)) * float(np.abs(R).max(initial=0))
    if bound < 2**52:
        out = np.rint(flat.astype(float) @ R.astype(float)).astype(np.int64)
    else:
        out = (flat.astype(object) @ R.astype(object)).astype(np.int64)
    return out.reshape(c.shape[:-1] + (R.shape[1],))


class Cyclotomic:
    """An element of Q(zeta_e) with exact rational coefficients."""

    __slots__ = ("order", "coeffs", "_canon")

    def __init__(self, order: int, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != order:
            raise ValueError(f"expected {order} coefficients, got {len(coeffs)}")
        self.order = order
        self.coeffs: tuple[Number, ...] = tuple(_norm(c) for c in coeffs)
        self._canon: tuple[Number, ...] | None = None

    @classmethod
    def rational(cls, q: Number, order: int = 1) -> Cyclotomic:
        return cls(order, (q,) + (0,) * (order - 1))

    @classmethod
    def root(cls, order: int, k: int = 1) -> Cyclotomic:
        c = [0] * order
        c[k % order] = 1
        return cls(order, c)

    @classmethod
    def from_canonical(cls, order: int, canon) -> Cyclotomic:
        c = list(canon) + [0] * (order - len(canon))
        z = cls(order, c)
        z._canon = tuple(_norm(x) for x in canon)
        return z

    def canonical(self) -> tuple[Number, ...]:
        if self._canon is None:
            phi = cyclotomic_poly(self.order)
            deg = len(phi) - 1
            c = list(self.coeffs)
            for i in range(self.order - 1, deg - 1, -1):
                t = c[i]
                if t:
                    for j in range(deg):
                        c[i - deg + j] -= t * phi[j]
                    c[i] = 0
            self._canon = tuple(_norm(x) for x in c[:deg])
        return self._canon

    def embed(self, order: int) -> Cyclotomic:
        """The same number written over zeta_order (``self.order`` must divide it)."""
        if order % self.order:
            raise ValueError(f"{self.order} does not divide {order}")
        step = order // self.order
        c = [0] * order
        for j, v in enumerate(self.coeffs):
            c[j * step] += v
        return Cyclotomic(order, c)

    def _coerce(self, other) -> tuple[Cyclotomic, Cyclotomic]:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(other, self.order)
        if not isinstance(other, Cyclotomic):
            return NotImplemented, NotImplemented
        if other.order == self.order:
            return self, other
        m = math.lcm(self.order, other.order)
        return self.embed(m), other.embed(m)

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return Cyclotomic(a.order, (x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.order, (-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        e = a.order
        out = [0] * e
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        out[(i + j) % e] += x * y
        return Cyclotomic(e, out)

    __rmul__ = __mul__

    def conjugate(self) -> Cyclotomic:
        e = self.order
        return Cyclotomic(e, (self.coeffs[(-j) % e] for j in range(e)))

    def galois(self, k: int) -> Cyclotomic:
        """Image under zeta -> zeta^k (k coprime to the order)."""
        e = self.order
        c = [0] * e
        for j, v in enumerate(self.coeffs):
            c[(j * k) % e] += v
        return Cyclotomic(e, c)

    def __eq__(self, other) -> bool:
        a, b = self._coerce(other)
        if a is NotImplemented:
            return NotImplemented
        return a.canonical() == b.canonical()

    def __hash__(self) -> int:
        # equal values written over different orders have different canonical
        # forms, so only the rational case gets a discriminating hash
        r = self.as_rational()
        return hash(r) if r is not None else hash("irrational-cyclotomic")

    def as_rational(self) -> Number | None:
        c = self.canonical()
        if any(c[1:]):
            return None
        return c[0] if c else 0

    def __complex__(self) -> complex:
        e = self.order
        return sum((complex(v) * cmath.exp(2j * math.pi * j / e) for j, v in enumerate(self.coeffs) if v), 0j)

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"

    def __str__(self) -> str:
        return format_value(self)


def _norm(x) -> Number:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else x
    return int(x)


def format_value(z: Cyclotomic) -> str:
    """GAP-style text: integer combination of ``E(e)^k`` over the canonical basis."""
    c = z.canonical()
    terms = []
    for j, v in enumerate(c):
        if not v:
            continue
        if j == 0:
            mono = ""
        elif j == 1:
            mono = f"E({z.order})"
        else:
            mono = f"E({z.order})^{j}"
        if not mono:
            terms.append(str(v))
        elif v == 1:
            terms.append(mono)
        elif v == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{v}*{mono}")
    if not terms:
        return "0"
    out = terms[0]
    for t in terms[1:]:
        out += t if t.startswith("-") else "+" + t
    return out


_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(E\((\d+)\)(?:\^(-?\d+))?)?\s*")


def parse_value(text: str) -> Cyclotomic:
    """Inverse of :func:`format_value`; also accepts any sum of ``q*E(n)^k`` terms."""
    text = text.strip()
    if not text:
        raise ValueError("empty value")
    terms: list[tuple[Fraction, int, int]] = []
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or not (m.group(2) or m.group(3)):
            raise ValueError(f"cannot parse cyclotomic value {text!r} at column {pos + 1}")
        sign = -1 if m.group(1) == "-" else 1
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            n, k = int(m.group(4)), int(m.group(5) or 1)
        else:
            n, k = 1, 0
        terms.append((sign * coef, n, k))
        pos = m.end()
    order = math.lcm(*(n for _, n, _ in terms))
    c: list[Number] = [0] * order
    for q, n, k in terms:
        c[(k * (order // n)) % order] += q
    return Cyclotomic(order, c)
