"""
Finite permutation groups with fully materialized element tables.

Elements are permutations of {0, ..., degree-1} stored as tuples. Products act
on the right: ``i^(ab) = (i^a)^b``, so ``compose(a, b)`` applies ``a`` first.
Every group element gets an integer index (0 is the identity) and subgroups
are Python ints used as bitsets over those indices.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, InvalidPermutation, NotNormal, NotPrime, UnidentifiedSimpleFactor

Perm = tuple  # tuple[int, ...] of images


@dataclass
class Limits:
    order_cap: int = 400
    lattice_cap: int = 20000


LIMITS = Limits()


# ---------------------------------------------------------------------------
# permutations

def check_perm(images: Sequence[int], degree: int) -> Perm:
    p = tuple(int(i) for i in images)
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise InvalidPermutation(f"{images!r} is not a bijection on {degree} points")
    return p


def from_cycles(degree: int, *cycles: Sequence[int]) -> Perm:
    images = list(range(degree))
    seen = set()
    for cyc in cycles:
        for i, a in enumerate(cyc):
            if a in seen or not 0 <= a < degree:
                raise InvalidPermutation(f"bad cycle {cyc!r} on {degree} points")
            seen.add(a)
            images[a] = cyc[(i + 1) % len(cyc)]
    return tuple(images)


def compose(a: Perm, b: Perm) -> Perm:
    "a then b"
    return tuple(b[i] for i in a)


def invert(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, j in enumerate(a):
        inv[j] = i
    return tuple(inv)


def identity(degree: int) -> Perm:
    return tuple(range(degree))


# ---------------------------------------------------------------------------
# bitset helpers

def mask_from_bool(member: np.ndarray) -> int:
    return int.from_bytes(np.packbits(member, bitorder="little").tobytes(), "little")


def mask_from_indices(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def bits(mask: int) -> np.ndarray:
    if not mask:
        return np.zeros(0, dtype=np.intp)
    raw = np.frombuffer(mask.to_bytes((mask.bit_length() + 7) // 8, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little"))


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of some parent Group, as a bitset over element indices."""

    mask: int

    @property
    def order(self) -> int:
        return self.mask.bit_count()

    def elements(self) -> np.ndarray:
        return bits(self.mask)

    def __contains__(self, i: int) -> bool:
        return bool((self.mask >> i) & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return self.mask & other.mask == self.mask

    def __lt__(self, other: "Subgroup") -> bool:
        return self.mask != other.mask and self <= other

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.mask & other.mask)


# ---------------------------------------------------------------------------
# groups

class Group:
    """A closed permutation group. Build with :func:`close_generators`."""

    def __init__(self, degree: int, generators: tuple, elements: list, name: str):
        self.degree = degree
        self.generators = generators
        self.elements = elements
        self.name = name
        self.order = len(elements)
        self.index = {e: i for i, e in enumerate(elements)}
        self.key = (degree, generators)

    def __repr__(self):
        return f"<Group {self.name} order={self.order} degree={self.degree}>"

    def __eq__(self, other):
        return isinstance(other, Group) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def gen_indices(self) -> list[int]:
        return [self.index[g] for g in self.generators]

    @cached_property
    def table(self) -> np.ndarray:
        """``table[a, b]`` is the index of ``a*b``."""
        n, d = self.order, self.degree
        if d == 0:
            return np.zeros((1, 1), dtype=np.int32)
        E = np.array(self.elements, dtype=np.int64).reshape(n, d)
        # a base: a few points whose images determine the element
        base: list[int] = []
        labels = np.zeros(n, dtype=np.int64)
        distinct = 1
        for p in range(d):
            if distinct == n:
                break
            _, refined = np.unique(labels * d + E[:, p], return_inverse=True)
            if refined.max() + 1 > distinct:
                base.append(p)
                labels = refined.ravel()
                distinct = int(labels.max()) + 1
        if len(base) * math.log2(max(d, 2)) < 62:
            w = d ** np.arange(len(base), dtype=np.int64)
            codes = E[:, base] @ w
            order = np.argsort(codes)
            sorted_codes = codes[order]
            T = np.empty((n, n), dtype=np.int32)
            for a in range(n):
                c = E[:, E[a, base]] @ w
                T[a] = order[np.searchsorted(sorted_codes, c)]
            return T
        T = np.empty((n, n), dtype=np.int32)
        idx = {r.tobytes(): i for i, r in enumerate(E[:, base])}
        for a in range(n):
            P = E[:, E[a, base]]
            T[a] = [idx[r.tobytes()] for r in P]
        return T

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def inverse(self) -> np.ndarray:
        return np.argmin(self.table, axis=1).astype(np.int32)

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, x]`` is the index of ``g^-1 x g``."""
        T = self.table
        left = T[self.inverse]
        return T[left, np.arange(self.order)[:, None]]

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        T = self.table
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 0
        while not orders.all():
            k += 1
            orders[(cur == 0) & (orders == 0)] = k
            cur = T[cur, np.arange(n)]
        return orders

    @cached_property
    def element_classes(self) -> list[np.ndarray]:
        """Conjugacy classes of elements, ordered by smallest member."""
        n = self.order
        label = np.full(n, -1)
        classes = []
        gens = self.gen_indices
        C = self.conj
        for x in range(n):
            if label[x] >= 0:
                continue
            cid = len(classes)
            label[x] = cid
            orbit = [x]
            for y in orbit:
                for g in gens:
                    z = int(C[g, y])
                    if label[z] < 0:
                        label[z] = cid
                        orbit.append(z)
            classes.append(np.array(sorted(orbit)))
        return classes

    @cached_property
    def class_size_of(self) -> np.ndarray:
        out = np.zeros(self.order, dtype=np.int64)
        for c in self.element_classes:
            out[c] = len(c)
        return out

    @property
    def whole(self) -> Subgroup:
        return Subgroup((1 << self.order) - 1)

    @property
    def trivial(self) -> Subgroup:
        return Subgroup(1)


def close_generators(degree: int, generators: Sequence[Sequence[int]], name: str = "",
                     cap: int | None = None) -> Group:
    cap = LIMITS.order_cap if cap is None else cap
    gens = tuple(check_perm(g, degree) for g in generators)
    e = identity(degree)
    elements = [e]
    seen = {e}
    for x in elements:
        for s in gens:
            y = compose(x, s)
            if y not in seen:
                seen.add(y)
                elements.append(y)
                if len(elements) > cap:
                    raise CapExceeded(f"group {name or '?'} exceeds order cap {cap}")
    return Group(degree, gens, elements, name or f"<{len(elements)}>")


# ---------------------------------------------------------------------------
# subgroup generation

def _extend(G: Group, elems: np.ndarray, member: np.ndarray, gens: list[int], x: int):
    """Dimino step: the subgroup generated by ``elems`` (a subgroup) and ``x``."""
    if member[x]:
        return elems, member
    T = G.table
    member = member.copy()
    gens = gens + [x]
    parts = [elems]
    reps = [0]
    for r in reps:
        row = T[r]
        for s in gens:
            y = int(row[s])
            if not member[y]:
                reps.append(y)
                coset = T[elems, y]
                member[coset] = True
                parts.append(coset)
    return np.concatenate(parts), member


def generate(G: Group, xs: Iterable[int], start: Subgroup | None = None) -> Subgroup:
    if start is None:
        elems = np.zeros(1, dtype=np.intp)
        gens: list[int] = []
    else:
        elems = start.elements()
        gens = generators_of(G, start)
    member = np.zeros(G.order, dtype=bool)
    member[elems] = True
    for x in xs:
        x = int(x)
        if not member[x]:
            elems, member = _extend(G, elems, member, gens, x)
            gens.append(x)
    return Subgroup(mask_from_bool(member))


def generators_of(G: Group, S: Subgroup) -> list[int]:
    """A small generating set of S (greedy by element order)."""
    els = S.elements()
    if len(els) <= 1:
        return []
    ords = G.element_orders
    cand = sorted(els.tolist(), key=lambda e: (-ords[e], e))
    elems = np.zeros(1, dtype=np.intp)
    member = np.zeros(G.order, dtype=bool)
    member[0] = True
    gens: list[int] = []
    for x in cand:
        if not member[x]:
            elems, member = _extend(G, elems, member, gens, x)
            gens.append(x)
            if len(elems) == len(els):
                break
    return gens


def conjugate(G: Group, S: Subgroup, g: int) -> Subgroup:
    "g^-1 S g"
    m = np.zeros(G.order, dtype=bool)
    m[G.conj[g, S.elements()]] = True
    return Subgroup(mask_from_bool(m))


def conjugates(G: Group, S: Subgroup) -> list[Subgroup]:
    orbit = [S]
    seen = {S.mask}
    for H in orbit:
        for g in G.gen_indices:
            K = conjugate(G, H, g)
            if K.mask not in seen:
                seen.add(K.mask)
                orbit.append(K)
    return orbit


def is_normal(G: Group, S: Subgroup) -> bool:
    return all(conjugate(G, S, g) == S for g in G.gen_indices)


def normal_closure(G: Group, S: Subgroup) -> Subgroup:
    K = S
    while True:
        new = [int(x) for g in G.gen_indices for x in G.conj[g, K.elements()] if not (K.mask >> int(x)) & 1]
        if not new:
            return K
        K = generate(G, new, start=K)


def centralizer(G: Group, S: Subgroup) -> Subgroup:
    T = G.table
    s = S.elements()
    ok = np.all(T[:, s] == T[s, :].T, axis=1)
    return Subgroup(mask_from_bool(ok))


def normalizer(G: Group, S: Subgroup) -> Subgroup:
    member = np.zeros(G.order, dtype=bool)
    for g in range(G.order):
        member[g] = conjugate(G, S, g) == S
    return Subgroup(mask_from_bool(member))


def center(G: Group) -> Subgroup:
    return centralizer(G, G.whole)


def is_abelian(G: Group) -> bool:
    return center(G) == G.whole


def commutator(G: Group, A: Subgroup, B: Subgroup) -> Subgroup:
    """[A, B]; assumes A and B are normal so the result is too."""
    T, inv = G.table, G.inverse
    a, b = A.elements(), B.elements()
    left = T[inv[a][:, None], inv[b][None, :]]
    right = T[a[:, None], b[None, :]]
    comms = np.unique(T[left, right])
    return generate(G, comms)


def derived_series(G: Group) -> list[Subgroup]:
    series = [G.whole]
    while True:
        nxt = commutator(G, series[-1], series[-1])
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_solvable(G: Group) -> bool:
    return derived_series(G)[-1].order == 1


def lower_central_series(G: Group) -> list[Subgroup]:
    series = [G.whole]
    while True:
        nxt = commutator(G, series[-1], G.whole)
        if nxt == series[-1]:
            return series
        series.append(nxt)


def is_nilpotent(G: Group) -> bool:
    return lower_central_series(G)[-1].order == 1


def is_cyclic(G: Group) -> bool:
    return bool((G.element_orders == G.order).any())


# ---------------------------------------------------------------------------
# p-structure

def is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, math.isqrt(p) + 1))


def prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        while n % k == 0:
            out.append(k)
            n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def sylow_subgroup(G: Group, p: int) -> Subgroup:
    if not is_prime(p):
        raise NotPrime(p)
    ords = G.element_orders
    p_elems = [x for x in range(G.order) if _is_p_power(int(ords[x]), p)]
    P = G.trivial
    grown = True
    while grown:
        grown = False
        N = normalizer(G, P)
        for x in p_elems:
            if x in N and x not in P:
                P = generate(G, [x], start=P)
                grown = True
                break
    return P


def o_p(G: Group, p: int) -> Subgroup:
    """Largest normal p-subgroup: the core of a Sylow p-subgroup."""
    P = sylow_subgroup(G, p)
    core = P.mask
    for Q in conjugates(G, P):
        core &= Q.mask
    return Subgroup(core)


def quotient_is_cyclic(G: Group, N: Subgroup) -> bool:
    index = G.order // N.order
    T = G.table
    for x in range(G.order):
        y, k = x, 1
        while not (N.mask >> y) & 1:
            y = int(T[y, x])
            k += 1
        if k == index:
            return True
    return False


def is_p_hypo_elementary(G: Group, p: int) -> bool:
    return quotient_is_cyclic(G, o_p(G, p))


def is_hypo_elementary(G: Group) -> tuple[bool, int | None]:
    primes = sorted(set(prime_factors(G.order)))
    if is_cyclic(G):
        return True, (primes[0] if primes else 2)
    for p in primes:
        if is_p_hypo_elementary(G, p):
            return True, p
    return False, None


# ---------------------------------------------------------------------------
# quotients and subgroups as groups

@lru_cache(maxsize=4096)
def quotient(G: Group, N: Subgroup) -> tuple[Group, np.ndarray]:
    """G/N acting on the cosets of N, with the projection on element indices."""
    if not is_normal(G, N):
        raise NotNormal(f"subgroup of order {N.order} is not normal in {G.name}")
    T = G.table
    coset = np.full(G.order, -1)
    reps = []
    n_elems = N.elements()
    for g in range(G.order):
        if coset[g] < 0:
            coset[T[g, n_elems]] = len(reps)
            reps.append(g)
    reps = np.array(reps)
    k = len(reps)
    perms = coset[T[reps, :]].T  # row a: action of element a on cosets
    gens = [tuple(perms[g].tolist()) for g in G.gen_indices]
    Q = close_generators(k, gens, name=f"{G.name}/N{N.order}", cap=max(LIMITS.order_cap, k))
    proj = np.array([Q.index[tuple(r)] for r in perms.tolist()], dtype=np.intp)
    return Q, proj


def subgroup_as_group(G: Group, S: Subgroup, name: str | None = None) -> Group:
    gens = [G.elements[x] for x in generators_of(G, S)]
    return close_generators(G.degree, gens, name=name or f"{G.name}>{S.order}",
                            cap=max(LIMITS.order_cap, S.order))


def normal_subgroups_of(G: Group) -> list[Subgroup]:
    """All normal subgroups, as joins of normal closures of elements."""
    seeds = {}
    for c in G.element_classes:
        S = normal_closure(G, generate(G, [int(c[0])]))
        seeds[S.mask] = S
    seeds = list(seeds.values())
    found = {1: G.trivial}
    todo = [G.trivial]
    for N in todo:
        for S in seeds:
            if S.mask & ~N.mask:
                J = generate(G, generators_of(G, S), start=N)
                if J.mask not in found:
                    found[J.mask] = J
                    todo.append(J)
    return sorted(found.values(), key=lambda S: (S.order, S.mask))


# ---------------------------------------------------------------------------
# isomorphism

def abelianization_orders(G: Group) -> tuple:
    D = commutator(G, G.whole, G.whole)
    T = G.table
    counts = Counter()
    for x in range(G.order):
        y, k = x, 1
        while not (D.mask >> y) & 1:
            y = int(T[y, x])
            k += 1
        counts[k] += 1
    return tuple(sorted((k, v // D.order) for k, v in counts.items()))


@lru_cache(maxsize=4096)
def fingerprint(G: Group) -> tuple:
    ords = G.element_orders
    cls = G.class_size_of
    return (
        G.order,
        tuple(sorted(Counter(ords.tolist()).items())),
        tuple(sorted(Counter(zip(cls.tolist(), ords.tolist())).items())),
        center(G).order,
        tuple(S.order for S in derived_series(G)),
        tuple(S.order for S in lower_central_series(G)),
        abelianization_orders(G),
    )


def minimal_generating_set(G: Group) -> list[int]:
    """Greedy: each step adds the element giving the largest subgroup."""
    n = G.order
    ords = G.element_orders
    elems = np.zeros(1, dtype=np.intp)
    member = np.zeros(n, dtype=bool)
    member[0] = True
    gens: list[int] = []
    while len(elems) < n:
        if gens:
            cands = [x for x in range(n) if not member[x]]
        else:
            cands = [int(c[0]) for c in G.element_classes]
        cands.sort(key=lambda x: (-ords[x], x))
        best = None
        for x in cands:
            e2, m2 = _extend(G, elems, member, gens, x)
            if best is None or len(e2) > len(best[1]):
                best = (x, e2, m2)
                if len(e2) == n:
                    break
        x, elems, member = best
        gens.append(x)
    return gens


def _extend_hom(G1: Group, G2: Group, gens: list[int], imgs: list[int]):
    R1, R2 = G1.rows, G2.rows
    phi = {0: 0}
    used = {0}
    queue = [0]
    for x in queue:
        px = phi[x]
        r1, r2 = R1[x], R2[px]
        for s, t in zip(gens, imgs):
            xs = r1[s]
            val = r2[t]
            old = phi.get(xs)
            if old is None:
                if val in used:
                    return None
                phi[xs] = val
                used.add(val)
                queue.append(xs)
            elif old != val:
                return None
    return phi


def find_isomorphism(G1: Group, G2: Group) -> dict[int, int] | None:
    if fingerprint(G1) != fingerprint(G2):
        return None
    if G1.order == 1:
        return {0: 0}
    gens = minimal_generating_set(G1)
    o1, o2 = G1.element_orders, G2.element_orders
    c1, c2 = G1.class_size_of, G2.class_size_of
    cands = []
    for i, g in enumerate(gens):
        pool = [int(c[0]) for c in G2.element_classes] if i == 0 else range(G2.order)
        cands.append([y for y in pool if o2[y] == o1[g] and c2[y] == c1[g]])

    def search(imgs):
        phi = _extend_hom(G1, G2, gens[:len(imgs)], imgs)
        if phi is None:
            return None
        if len(imgs) == len(gens):
            return phi if len(phi) == G1.order else None
        for y in cands[len(imgs)]:
            found = search(imgs + [y])
            if found is not None:
                return found
        return None

    for y in cands[0]:
        phi = search([y])
        if phi is not None:
            return phi
    return None


def is_isomorphic(G1: Group, G2: Group) -> bool:
    if G1 == G2:
        return True
    return find_isomorphism(G1, G2) is not None


# ---------------------------------------------------------------------------
# composition factors

def maximal_normal_subgroups_of(G: Group) -> list[Subgroup]:
    normals = [N for N in normal_subgroups_of(G) if N.order < G.order]
    return [N for N in normals if not any(N < M for M in normals)]


def _label_simple(Q: Group) -> str:
    if is_prime(Q.order):
        return f"C{Q.order}"
    from .catalogue import simple_groups

    for name, S in simple_groups():
        if S.order == Q.order and is_isomorphic(Q, S):
            return name
    raise UnidentifiedSimpleFactor(Q.order, fingerprint(Q))


def composition_factors(G: Group) -> Counter:
    factors: Counter = Counter()
    H = G
    while H.order > 1:
        if is_abelian(H):
            factors.update(f"C{p}" for p in prime_factors(H.order))
            break
        M = max(maximal_normal_subgroups_of(H), key=lambda S: (S.order, -S.mask))
        Q, _ = quotient(H, M)
        factors[_label_simple(Q)] += 1
        H = subgroup_as_group(H, M)
    return factors
