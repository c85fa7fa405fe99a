"""
Named group families, the group-spec mini-language, catalogue sweeps and the
on-disk lattice cache.

Spec grammar (whitespace-insensitive, family letters case-sensitive)::

    spec  := term ("x" term)*
    term  := atom | "sd(" spec "," spec "," table ")" | "(" spec ")"
    atom  := C<n> | D<2n> | Q<4n> | S<n> | A<n> | E<p^k> | V4
    table := "[" row ("," row)* "]"      one row per generator of H
    row   := "[" word ("," word)* "]"    images of the generators of N
    word  := "1" | (letter ["^" ["-"] int])+   letters a, b, ... name N's generators

D<m> is the dihedral group of order m. E<m> is elementary abelian of prime
power order m (also written E<p>^<k>).
"""

from __future__ import annotations

import hashlib
import itertools
import logging
import math
import os
import re
import struct
from collections import Counter
import zlib
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import CacheIOError, ParseError
from .lattice import SubgroupLattice, _classify
from .perm_core import (
    Group,
    _extend_hom,
    close_generators,
    fingerprint,
    from_cycles,
    is_isomorphic,
    is_prime,
    prime_factors,
)

log = logging.getLogger(__name__)


# ---------------------------------------------------------------------------
# syntax tree

@dataclass(frozen=True)
class Atom:
    family: str
    n: int

    def __str__(self):
        return f"{self.family}{self.n}"


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __str__(self):
        return " x ".join(f"({f})" if isinstance(f, Product) else str(f) for f in self.factors)


@dataclass(frozen=True)
class Semidirect:
    normal: object
    acting: object
    table: tuple  # tuple of rows; each row a tuple of words; word = tuple of (letter index, exponent)

    def __str__(self):
        rows = ", ".join("[" + ", ".join(_word_str(w) for w in row) + "]" for row in self.table)
        return f"sd({self.normal}, {self.acting}, [{rows}])"


def _word_str(word) -> str:
    if not word:
        return "1"
    return "".join(chr(ord("a") + i) + ("" if e == 1 else f"^{e}") for i, e in word)


class _Parser:
    def __init__(self, text: str):
        self.s = re.sub(r"\s+", "", text)
        self.i = 0

    def fail(self, msg):
        raise ParseError(f"{msg} at position {self.i} in {self.s!r}")

    def peek(self, k=1):
        return self.s[self.i:self.i + k]

    def eat(self, tok):
        if not self.s.startswith(tok, self.i):
            self.fail(f"expected {tok!r}")
        self.i += len(tok)

    def int_(self) -> int:
        m = re.match(r"-?\d+", self.s[self.i:])
        if not m:
            self.fail("expected integer")
        self.i += m.end()
        return int(m.group())

    def spec(self):
        terms = [self.term()]
        while self.peek() == "x":
            self.eat("x")
            terms.append(self.term())
        if len(terms) == 1:
            return terms[0]
        flat = []
        for t in terms:
            flat.extend(t.factors if isinstance(t, Product) else [t])
        return Product(tuple(flat))

    def term(self):
        if self.peek(3) == "sd(":
            self.eat("sd(")
            n = self.spec()
            self.eat(",")
            h = self.spec()
            self.eat(",")
            table = self.table()
            self.eat(")")
            return Semidirect(n, h, table)
        if self.peek() == "(":
            self.eat("(")
            inner = self.spec()
            self.eat(")")
            return inner
        if self.s.startswith("V4", self.i) and not self.s[self.i + 2:self.i + 3].isdigit():
            self.i += 2
            return Atom("V", 4)
        m = re.match(r"([CDQSAE])(\d+)(?:\^(\d+))?", self.s[self.i:])
        if not m:
            self.fail("expected group atom")
        self.i += m.end()
        fam, n = m.group(1), int(m.group(2))
        if m.group(3) is not None:
            if fam != "E":
                self.fail("exponent only allowed for E")
            n = n ** int(m.group(3))
        _validate_atom(fam, n, self)
        return Atom(fam, n)

    def table(self):
        self.eat("[")
        rows = [self.row()]
        while self.peek() == ",":
            self.eat(",")
            rows.append(self.row())
        self.eat("]")
        return tuple(rows)

    def row(self):
        self.eat("[")
        if self.peek() == "]":
            self.eat("]")
            return ()
        words = [self.word()]
        while self.peek() == ",":
            self.eat(",")
            words.append(self.word())
        self.eat("]")
        return tuple(words)

    def word(self):
        if self.peek() == "1":
            self.eat("1")
            return ()
        out = []
        while self.peek().isalpha() and self.peek().islower():
            letter = ord(self.peek()) - ord("a")
            self.i += 1
            e = 1
            if self.peek() == "^":
                self.eat("^")
                e = self.int_()
            out.append((letter, e))
        if not out:
            self.fail("expected word")
        return tuple(out)


def _validate_atom(fam: str, n: int, p: _Parser):
    if fam == "C" and n < 1:
        p.fail("C<n> needs n >= 1")
    if fam == "D" and (n < 2 or n % 2):
        p.fail("D<m> needs even m >= 2")
    if fam == "Q" and (n < 8 or n % 4):
        p.fail("Q<m> needs m divisible by 4, m >= 8")
    if fam in "SA" and not 1 <= n <= 6:
        p.fail(f"{fam}<n> needs 1 <= n <= 6")
    if fam == "E" and (n < 2 or len(set(prime_factors(n))) != 1):
        p.fail("E<m> needs a prime power m")


def parse(text: str):
    p = _Parser(text)
    tree = p.spec()
    if p.i != len(p.s):
        p.fail("trailing input")
    return tree


def canonical(text: str) -> str:
    return str(parse(text))


# ---------------------------------------------------------------------------
# construction

def _atom_gens(a: Atom) -> tuple[int, list]:
    fam, n = a.family, a.n
    if fam == "C":
        return n, ([from_cycles(n, tuple(range(n)))] if n > 1 else [])
    if fam == "V":
        return 4, [from_cycles(4, (0, 1), (2, 3)), from_cycles(4, (0, 2), (1, 3))]
    if fam == "D":
        k = n // 2
        if k == 1:
            return 2, [from_cycles(2, (0, 1))]
        if k == 2:
            return 4, [from_cycles(4, (0, 1), (2, 3)), from_cycles(4, (0, 2), (1, 3))]
        rot = from_cycles(k, tuple(range(k)))
        refl = tuple((-i) % k for i in range(k))
        return k, [rot, refl]
    if fam == "Q":
        # right regular action on a^i x^j, point i + 2k j
        k = n // 4
        m = 2 * k
        a = [0] * n
        x = [0] * n
        for i in range(m):
            a[i] = (i + 1) % m
            a[m + i] = m + (i - 1) % m
            x[i] = m + i
            x[m + i] = (i + k) % m
        return n, [tuple(a), tuple(x)]
    if fam == "S":
        if n <= 1:
            return n, []
        if n == 2:
            return 2, [from_cycles(2, (0, 1))]
        return n, [from_cycles(n, tuple(range(n))), from_cycles(n, (0, 1))]
    if fam == "A":
        if n <= 2:
            return n, []
        if n == 3:
            return 3, [from_cycles(3, (0, 1, 2))]
        long = tuple(range(n)) if n % 2 else tuple(range(1, n))
        return n, [from_cycles(n, (0, 1, 2)), from_cycles(n, long)]
    if fam == "E":
        p = prime_factors(n)[0]
        k = len(prime_factors(n))
        gens = []
        for j in range(k):
            g = list(range(p * k))
            for i in range(p):
                g[j * p + i] = j * p + (i + 1) % p
            gens.append(tuple(g))
        return p * k, gens
    raise ParseError(f"unknown family {fam}")


def _direct_product_gens(parts: list[tuple[int, list]]) -> tuple[int, list]:
    degree = sum(d for d, _ in parts)
    gens = []
    offset = 0
    for d, gs in parts:
        for g in gs:
            img = list(range(degree))
            for i, j in enumerate(g):
                img[offset + i] = offset + j
            gens.append(tuple(img))
        offset += d
    return degree, gens


def _eval_word(N: Group, word) -> int:
    T = N.table
    gens = N.gen_indices
    x = 0
    for letter, e in word:
        if letter >= len(gens):
            raise ParseError(f"word uses generator {chr(ord('a') + letter)} but N has {len(gens)}")
        g = gens[letter]
        if e < 0:
            g = int(N.inverse[g])
            e = -e
        for _ in range(e):
            x = int(T[x, g])
    return x


def _build(tree, cap) -> tuple[int, list]:
    if isinstance(tree, Atom):
        return _atom_gens(tree)
    if isinstance(tree, Product):
        return _direct_product_gens([_build(f, cap) for f in tree.factors])
    N = close_generators(*_build(tree.normal, cap), name=str(tree.normal), cap=cap)
    H = close_generators(*_build(tree.acting, cap), name=str(tree.acting), cap=cap)
    if len(tree.table) != len(H.generators):
        raise ParseError(f"action table has {len(tree.table)} rows, {tree.acting} has {len(H.generators)} generators")
    nN = N.order
    degree = nN + H.degree
    gens = []
    for n in N.gen_indices:
        gens.append(tuple(N.table[:, n].tolist()) + tuple(range(nN, degree)))
    for h, row in zip(H.generators, tree.table):
        if len(row) != len(N.generators):
            raise ParseError(f"action row {row!r} must give {len(N.generators)} images")
        imgs = [_eval_word(N, w) for w in row]
        phi = _extend_hom(N, N, N.gen_indices, imgs)
        if phi is None or len(phi) != nN:
            raise ParseError(f"row {row!r} does not define an automorphism of {tree.normal}")
        gens.append(tuple(phi[i] for i in range(nN)) + tuple(nN + j for j in h))
    G = close_generators(degree, gens, cap=cap)
    if G.order != N.order * H.order:
        raise ParseError("action table does not define a homomorphism into Aut(N)")
    return degree, gens


def construct(spec: str, cap: int | None = None) -> Group:
    tree = parse(spec)
    degree, gens = _build(tree, cap)
    return close_generators(degree, gens, name=str(tree), cap=cap)


# ---------------------------------------------------------------------------
# catalogue

_RANK = {"C": 0, "S": 1, "A": 2, "E": 3, "D": 4, "Q": 5, "V": 6}


def _atom_order(a: Atom) -> int:
    if a.family == "S":
        return math.factorial(a.n)
    if a.family == "A":
        return max(1, math.factorial(a.n) // 2)
    return a.n


def _atoms(max_order: int) -> list[Atom]:
    out = [Atom("C", n) for n in range(1, max_order + 1)]
    out += [Atom("S", n) for n in range(1, 7) if math.factorial(n) <= max_order]
    out += [Atom("A", n) for n in range(1, 7) if math.factorial(n) // 2 <= max_order]
    out += [Atom("E", q) for q in range(4, max_order + 1)
            if len(set(prime_factors(q))) == 1 and not is_prime(q)]
    out += [Atom("D", m) for m in range(2, max_order + 1, 2)]
    out += [Atom("Q", m) for m in range(8, max_order + 1, 4)]
    return out


def _sort_key(tree) -> tuple:
    if isinstance(tree, Atom):
        return (_atom_order(tree), 0, _RANK[tree.family], tree.n, str(tree))
    return (math.prod(_atom_order(f) for f in tree.factors), 1, 0, 0, str(tree))


def _dedupe(trees, cap=None) -> list[Group]:
    kept: dict[int, list[Group]] = {}
    out = []
    for t in sorted(trees, key=_sort_key):
        G = construct(str(t), cap=cap)
        same = kept.setdefault(G.order, [])
        if any(fingerprint(H) == fingerprint(G) and is_isomorphic(H, G) for H in same):
            continue
        same.append(G)
        out.append(G)
    return out


@lru_cache(maxsize=None)
def _atom_reps(max_order: int) -> tuple[Group, ...]:
    return tuple(_dedupe(_atoms(max_order)))


def _product_trees(atoms: list[Group], max_order: int, exact: int | None = None):
    nontrivial = [G for G in atoms if G.order > 1]
    for A, B in itertools.combinations_with_replacement(nontrivial, 2):
        n = A.order * B.order
        if n <= max_order and (exact is None or n == exact):
            yield Product((parse(A.name), parse(B.name)))


@lru_cache(maxsize=None)
def _sweep(max_order: int) -> tuple[Group, ...]:
    atoms = list(_atom_reps(max_order))
    trees = [parse(G.name) for G in atoms] + list(_product_trees(atoms, max_order))
    return tuple(_dedupe(trees))


def sweep(max_order: int) -> list[Group]:
    """Stock families and their pairwise direct products up to ``max_order``,
    one per isomorphism class. Not every group of each order is present."""
    return list(_sweep(max_order))


@lru_cache(maxsize=None)
def _element_order_stats(spec: str) -> tuple:
    tree = parse(spec)
    if isinstance(tree, Product):
        stats = Counter({1: 1})
        for f in tree.factors:
            nxt = Counter()
            for (a, ca), (b, cb) in itertools.product(stats.items(), _element_order_stats(str(f))):
                nxt[math.lcm(a, b)] += ca * cb
            stats = nxt
        return tuple(sorted(stats.items()))
    G = construct(spec)
    return tuple(sorted(Counter(G.element_orders.tolist()).items()))


@lru_cache(maxsize=None)
def _candidate_trees(n: int) -> tuple:
    atoms = _dedupe([a for a in _atoms(n) if n % _atom_order(a) == 0])
    trees = [parse(G.name) for G in atoms if G.order == n] + list(_product_trees(atoms, n, exact=n))
    return tuple(sorted(trees, key=_sort_key))


@lru_cache(maxsize=None)
def groups_of_order(n: int) -> tuple[Group, ...]:
    return tuple(_dedupe(_candidate_trees(n)))


def identify(G: Group) -> str:
    """Catalogue name of G up to isomorphism, else an invariant fingerprint."""
    stats = tuple(sorted(Counter(G.element_orders.tolist()).items()))
    for tree in _candidate_trees(G.order):
        if _element_order_stats(str(tree)) == stats:
            H = construct(str(tree))
            if is_isomorphic(H, G):
                return H.name
    fp = fingerprint(G)
    return f"?[order={fp[0]}, derived={list(fp[4])}, abelianization={list(fp[6])}]"


@lru_cache(maxsize=None)
def _simple() -> tuple:
    return tuple((name, construct(name)) for name in ("A5", "A6"))


def simple_groups() -> list[tuple[str, Group]]:
    """Nonabelian simple groups among the stock families."""
    return list(_simple())


# ---------------------------------------------------------------------------
# lattice cache

MAGIC = b"BLAT1"
VERSION = 1
_HEADER = struct.Struct("<5sIIII")


def cache_key(G: Group) -> str:
    digest = hashlib.sha256(repr(G.key).encode()).hexdigest()[:16]
    safe = re.sub(r"[^A-Za-z0-9]+", "_", G.name).strip("_") or "group"
    return f"{safe}-{digest}"


def _words(mask: int, nwords: int) -> bytes:
    return mask.to_bytes(8 * nwords, "little")


def encode_lattice(L: SubgroupLattice) -> bytes:
    n = L.group.order
    count = len(L)
    w = (n + 63) // 64
    wr = (count + 63) // 64
    body = bytearray()
    for m in L.masks:
        body += _words(m, w)
    packed = np.packbits(L.leq, axis=1, bitorder="little")
    padded = np.zeros((count, 8 * wr), dtype=np.uint8)
    padded[:, :packed.shape[1]] = packed
    body += padded.tobytes()
    return _HEADER.pack(MAGIC, VERSION, n, count, zlib.crc32(body)) + bytes(body)


def decode_lattice(G: Group, data: bytes) -> SubgroupLattice | None:
    if len(data) < _HEADER.size:
        return None
    magic, version, order, count, crc = _HEADER.unpack_from(data)
    if magic != MAGIC or version != VERSION or order != G.order:
        return None
    w = (order + 63) // 64
    wr = (count + 63) // 64
    body = data[_HEADER.size:]
    if len(body) != count * 8 * (w + wr) or zlib.crc32(body) != crc:
        return None
    masks = [int.from_bytes(body[8 * w * i:8 * w * (i + 1)], "little") for i in range(count)]
    raw = np.frombuffer(body[8 * w * count:], dtype=np.uint8).reshape(count, 8 * wr)
    leq = np.unpackbits(raw, axis=1, bitorder="little")[:, :count].astype(bool)
    class_of, reps, normal = _classify(G, masks)
    return SubgroupLattice(G, masks, leq, class_of, reps, normal)


class LatticeCache:
    """One file per group; writes go through a temp file and atomic rename."""

    def __init__(self, directory):
        self.dir = Path(directory)

    def path(self, G: Group) -> Path:
        return self.dir / f"{cache_key(G)}.blat"

    def load(self, G: Group) -> SubgroupLattice | None:
        p = self.path(G)
        try:
            data = p.read_bytes()
        except FileNotFoundError:
            return None
        except OSError as exc:
            raise CacheIOError(f"cannot read {p}: {exc}") from exc
        L = decode_lattice(G, data)
        if L is None:
            log.warning("lattice cache entry %s is corrupt; recomputing", p)
        return L

    def save(self, G: Group, L: SubgroupLattice) -> None:
        p = self.path(G)
        tmp = p.with_suffix(f".tmp{os.getpid()}")
        try:
            self.dir.mkdir(parents=True, exist_ok=True)
            tmp.write_bytes(encode_lattice(L))
            os.replace(tmp, p)
        except OSError as exc:
            raise CacheIOError(f"cannot write {p}: {exc}") from exc


def cache_store(G: Group, L: SubgroupLattice, directory) -> None:
    LatticeCache(directory).save(G, L)


def cache_load(G: Group, directory) -> SubgroupLattice | None:
    return LatticeCache(directory).load(G)
