"""Group constructors, recipes and the corpus file format.

Corpus files are line oriented.  The first non-comment line is the header
``codegree-corpus 1``; every further line is ``<label> = <recipe>`` where a
recipe is either a constructor call::

    S3 = symmetric(3)
    F21 = semidirect_cyclic(3, 7, 2)
    C2xS3 = direct_product(cyclic(2), symmetric(3))

or raw generators in 1-based disjoint-cycle notation::

    A4raw = degree 4; gens (1 2 3), (1 2)(3 4)

Raw generators passed to ``direct_product`` go in square brackets:
``direct_product(cyclic(2), [degree 3; gens (1 2 3), (1 2)])``.
``#`` starts a comment.  Internally points are 0-based.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from sympy import isprime, n_order

from .perm import DEFAULT_ORDER_CAP, FiniteGroup, GroupError, OrderCapExceeded, Permutation, close_generators
from .structure import NotPrime

CORPUS_VERSION = 1


class ParseError(GroupError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line else (f"column {column}: " if column else "")
        super().__init__(where + message)


class BadAction(GroupError):
    pass


# ---------------------------------------------------------------------------
# constructors


def _check_cap(order: int, cap: int) -> None:
    if order > cap:
        raise OrderCapExceeded(f"order {order} exceeds cap {cap}")


def cyclic(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    if n < 1:
        raise ValueError("cyclic group needs n >= 1")
    _check_cap(n, cap)
    if n == 1:
        return close_generators(1, [])
    return close_generators(n, [Permutation.from_cycles([range(n)], n)], cap)


def elementary_abelian(p: int, k: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """``k`` commuting ``p``-cycles on ``k*p`` points."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 0:
        raise ValueError("rank must be nonnegative")
    _check_cap(p**k, cap)
    if k == 0:
        return close_generators(1, [])
    gens = [Permutation.from_cycles([range(i * p, (i + 1) * p)], k * p) for i in range(k)]
    return close_generators(k * p, gens, cap)


def dihedral(n: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Dihedral group of order ``2n``; on ``n`` points for ``n >= 3``."""
    if n < 1:
        raise ValueError("dihedral group needs n >= 1")
    _check_cap(2 * n, cap)
    if n == 1:
        return cyclic(2)
    if n == 2:
        return elementary_abelian(2, 2)
    rot = Permutation.from_cycles([range(n)], n)
    ref = Permutation(tuple((-i) % n for i in range(n)))
    return close_generators(n, [rot, ref], cap)


def quaternion8() -> FiniteGroup:
    """Q8 in its regular representation on 8 points.

    Points 0..7 stand for 1, i, j, k, -1, -i, -j, -k; the generators are right
    multiplication by i and by j.
    """
    # quaternion unit products: (sign, index) for basis 1,i,j,k
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }

    def right_mult(u: int) -> Permutation:
        images = []
        for x in range(8):
            sign = -1 if x >= 4 else 1
            s, idx = table[(x % 4, u)]
            s *= sign
            images.append(idx + (0 if s == 1 else 4))
        return Permutation(tuple(images))

    return close_generators(8, [right_mult(1), right_mult(2)])


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise ValueError("symmetric groups are provided for 1 <= n <= 6")
    if n == 1:
        return close_generators(1, [])
    if n == 2:
        return close_generators(2, [Permutation((1, 0))])
    return close_generators(n, [Permutation.from_cycles([range(n)], n), Permutation.from_cycles([(0, 1)], n)])


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise ValueError("alternating groups are provided for 1 <= n <= 6")
    if n <= 2:
        return close_generators(n, [])
    gens = [Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return close_generators(n, gens)


def direct_product(A: FiniteGroup, B: FiniteGroup, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """``A x B`` on the disjoint union of the two point sets."""
    _check_cap(A.order * B.order, cap)
    n = A.degree + B.degree
    gens = []
    for g in A.generators:
        gens.append(Permutation(g.images + tuple(range(A.degree, n))))
    for g in B.generators:
        gens.append(Permutation(tuple(range(A.degree)) + tuple(A.degree + x for x in g.images)))
    return close_generators(n, gens, cap)


def semidirect_cyclic(m: int, n: int, u: int, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """``C_m`` acting on ``C_n`` by ``x -> u*x mod n``.

    Realised on the points ``Z/n`` by the translation ``x -> x+1`` and the
    multiplier ``x -> u*x``.  When ``u`` has multiplicative order below ``m``
    the multiplier also cycles ``m`` extra points, so the order is always ``m*n``.
    """
    if m < 1 or n < 1:
        raise BadAction("m and n must be positive")
    if math.gcd(u, n) != 1 or pow(u, m, n) != 1 % n:
        raise BadAction(f"x -> {u}x does not define an action of C_{m} on C_{n}")
    _check_cap(m * n, cap)
    ord_u = n_order(u % n, n) if n > 1 else 1
    extra = 0 if ord_u == m else m
    deg = n + extra
    trans = [(x + 1) % n for x in range(n)] + list(range(n, deg))
    mult = [(u * x) % n for x in range(n)]
    if extra:
        mult += [n + (i + 1) % m for i in range(m)]
    gens = [Permutation(tuple(trans)), Permutation(tuple(mult))]
    G = close_generators(deg, [g for g in gens if g.images != tuple(range(deg))] or [], cap)
    assert G.order == m * n
    return G


CONSTRUCTORS = {
    "cyclic": (cyclic, 1),
    "elementary_abelian": (elementary_abelian, 2),
    "dihedral": (dihedral, 1),
    "quaternion8": (quaternion8, 0),
    "symmetric": (symmetric, 1),
    "alternating": (alternating, 1),
    "semidirect_cyclic": (semidirect_cyclic, 3),
    "direct_product": (direct_product, 2),
}


# ---------------------------------------------------------------------------
# recipes


@dataclass(frozen=True)
class GroupRecipe:
    """How to build a group: a constructor call or raw generators.

    ``params`` holds integers, or nested recipes for ``direct_product``.
    ``raw`` is ``(degree, generators)`` with 0-based cycles.
    """

    kind: str
    params: tuple = ()
    raw: tuple | None = None
    label: str = ""

    def build(self, cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
        if self.kind == "raw":
            degree, gens = self.raw
            perms = [Permutation.from_cycles(cycles, degree) for cycles in gens]
            return close_generators(degree, perms, cap)
        fn, arity = CONSTRUCTORS[self.kind]
        args = [p.build(cap) if isinstance(p, GroupRecipe) else p for p in self.params]
        return fn(*args)

    def serialize(self) -> str:
        if self.kind == "raw":
            degree, gens = self.raw
            parts = []
            for cycles in gens:
                parts.append("".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cycles) or "()")
            text = f"degree {degree}; gens " + ", ".join(parts)
            return text.rstrip() if gens else f"degree {degree}; gens"
        args = ", ".join(_arg(p) for p in self.params)
        return f"{self.kind}({args})"


def _arg(p) -> str:
    if not isinstance(p, GroupRecipe):
        return str(p)
    return f"[{p.serialize()}]" if p.kind == "raw" else p.serialize()


class _Parser:
    def __init__(self, text: str, line: int = 0, offset: int = 0):
        self.text = text
        self.pos = 0
        self.line = line
        self.offset = offset

    def error(self, msg: str) -> ParseError:
        return ParseError(msg, self.line, self.offset + self.pos + 1)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self) -> str:
        self.skip()
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(self.text, self.pos)
        if not m:
            raise self.error("expected a name")
        self.pos = m.end()
        return m.group(0)

    def integer(self) -> int:
        self.skip()
        m = re.compile(r"-?\d+").match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group(0))

    def at_end(self) -> bool:
        return self.peek() == ""

    def recipe(self) -> GroupRecipe:
        start = self.pos
        name = self.word()
        if name == "degree":
            self.pos = start
            return self.raw()
        if name not in CONSTRUCTORS:
            self.pos = start
            raise self.error(f"unknown constructor {name!r}")
        _, arity = CONSTRUCTORS[name]
        params: list = []
        self.expect("(")
        if self.peek() != ")":
            while True:
                if self.peek() == "[":
                    # raw generators nested in a call are bracketed
                    self.pos += 1
                    params.append(self.recipe())
                    self.expect("]")
                elif self.peek().isalpha():
                    params.append(self.recipe())
                else:
                    params.append(self.integer())
                if self.peek() == ",":
                    self.pos += 1
                    continue
                break
        self.expect(")")
        if len(params) != arity:
            raise self.error(f"{name} takes {arity} argument(s), got {len(params)}")
        want_group = name == "direct_product"
        if any(isinstance(p, GroupRecipe) != want_group for p in params):
            raise self.error(f"bad argument types for {name}")
        return GroupRecipe(name, tuple(params))

    def raw(self) -> GroupRecipe:
        self.word()  # "degree"
        degree = self.integer()
        if degree < 1:
            raise self.error("degree must be positive")
        self.expect(";")
        if self.word() != "gens":
            raise self.error("expected 'gens'")
        gens: list[tuple[tuple[int, ...], ...]] = []
        while self.peek() == "(":
            cycles = []
            while self.peek() == "(":
                self.pos += 1
                pts = []
                while self.peek() not in (")", ""):
                    v = self.integer()
                    if not 1 <= v <= degree:
                        raise self.error(f"point {v} outside 1..{degree}")
                    pts.append(v - 1)
                    if self.peek() == ",":
                        self.pos += 1
                self.expect(")")
                if pts:
                    cycles.append(tuple(pts))
            try:
                Permutation.from_cycles(cycles, degree)
            except GroupError as exc:
                raise self.error(str(exc)) from None
            gens.append(tuple(cycles))
            if self.peek() == ",":
                self.pos += 1
            else:
                break
        return GroupRecipe("raw", (), (degree, tuple(gens)))


def parse_group(text: str) -> GroupRecipe:
    """Parse one recipe (constructor call or ``degree N; gens ...``)."""
    p = _Parser(text)
    r = p.recipe()
    if not p.at_end():
        raise p.error("unexpected trailing text")
    return r


def parse_corpus(text: str) -> list[GroupRecipe]:
    recipes: list[GroupRecipe] = []
    labels: set[str] = set()
    header_seen = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        if not header_seen:
            parts = body.split()
            if len(parts) != 2 or parts[0] != "codegree-corpus":
                raise ParseError("expected header 'codegree-corpus <version>'", lineno, 1)
            if parts[1] != str(CORPUS_VERSION):
                raise ParseError(f"unsupported corpus version {parts[1]}", lineno, 1)
            header_seen = True
            continue
        label, eq, rest = body.partition("=")
        if not eq:
            raise ParseError("expected '<label> = <recipe>'", lineno, 1)
        label = label.strip()
        if not re.fullmatch(r"[A-Za-z0-9_.\-+]+", label):
            raise ParseError(f"bad label {label!r}", lineno, 1)
        if label in labels:
            raise ParseError(f"duplicate label {label!r}", lineno, 1)
        labels.add(label)
        p = _Parser(rest, lineno, len(label) + 1 + body.index("="))
        p.pos = 0
        r = p.recipe()
        if not p.at_end():
            raise p.error("unexpected trailing text")
        recipes.append(GroupRecipe(r.kind, r.params, r.raw, label))
    return recipes


def serialize_corpus(recipes: list[GroupRecipe]) -> str:
    lines = [f"codegree-corpus {CORPUS_VERSION}"]
    lines += [f"{r.label} = {r.serialize()}" for r in recipes]
    return "\n".join(lines) + "\n"


def default_corpus_text() -> str:
    return resources.files("charcod").joinpath("data/default_corpus.txt").read_text()


def load_corpus(source: str | Path | None = None, cap: int = DEFAULT_ORDER_CAP) -> list[tuple[str, FiniteGroup]]:
    """Parse a corpus file (default: the shipped corpus) and build every group."""
    recipes = load_recipes(source)
    return [(r.label, r.build(cap)) for r in recipes]


def load_recipes(source: str | Path | None = None) -> list[GroupRecipe]:
    text = default_corpus_text() if source is None else Path(source).read_text()
    return parse_corpus(text)
