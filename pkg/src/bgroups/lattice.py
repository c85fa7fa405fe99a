"""Subgroup lattices and their Möbius functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import LatticeTooLarge
from .perm_core import (
    LIMITS,
    Group,
    Subgroup,
    _extend,
    bits,
    conjugate,
    generators_of,
    mask_from_bool,
)


@dataclass(eq=False)
class SubgroupLattice:
    group: Group
    masks: list[int]
    leq: np.ndarray
    class_of: list[int]
    class_reps: list[int]
    is_normal: list[bool]
    index: dict[int, int] = field(init=False, repr=False)

    def __post_init__(self):
        self.index = {m: i for i, m in enumerate(self.masks)}

    def __len__(self):
        return len(self.masks)

    @property
    def subgroups(self) -> list[Subgroup]:
        return [Subgroup(m) for m in self.masks]

    @property
    def orders(self) -> np.ndarray:
        return np.array([m.bit_count() for m in self.masks], dtype=np.int64)

    @property
    def top(self) -> int:
        return len(self.masks) - 1

    def position(self, S: Subgroup) -> int:
        return self.index[S.mask]

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.class_reps]
        for i, c in enumerate(self.class_of):
            out[c].append(i)
        return out


@dataclass(eq=False)
class MobiusTable:
    lattice: SubgroupLattice
    values: np.ndarray

    def __call__(self, x: int, y: int) -> int:
        return int(self.values[x, y])

    def column(self, y: int) -> np.ndarray:
        return self.values[:, y]


def _cyclic_subgroups(G: Group) -> list[tuple[int, int]]:
    T = G.table
    out = {}
    for x in range(G.order):
        powers = [0]
        y = x
        while y != 0:
            powers.append(y)
            y = int(T[y, x])
        m = 0
        for p in powers:
            m |= 1 << p
        out.setdefault(m, x)
    return sorted(((m, x) for m, x in out.items()), key=lambda t: (t[0].bit_count(), t[0]))


def _containment(masks: list[int], n: int) -> np.ndarray:
    S = np.zeros((len(masks), n), dtype=np.float32)
    for i, m in enumerate(masks):
        S[i, bits(m)] = 1.0
    inter = S @ S.T
    sizes = S.sum(axis=1)
    return inter == sizes[:, None]


def _classify(G: Group, masks: list[int]) -> tuple[list[int], list[int], list[bool]]:
    index = {m: i for i, m in enumerate(masks)}
    class_of = [-1] * len(masks)
    reps = []
    for i, m in enumerate(masks):
        if class_of[i] >= 0:
            continue
        cid = len(reps)
        reps.append(i)
        class_of[i] = cid
        orbit = [Subgroup(m)]
        for H in orbit:
            for g in G.gen_indices:
                K = conjugate(G, H, g)
                j = index[K.mask]
                if class_of[j] < 0:
                    class_of[j] = cid
                    orbit.append(K)
    sizes = np.bincount(class_of)
    return class_of, reps, [bool(sizes[c] == 1) for c in class_of]


def build_lattice(G: Group, masks: list[int]) -> SubgroupLattice:
    masks = sorted(masks, key=lambda m: (m.bit_count(), m))
    class_of, reps, normal = _classify(G, masks)
    return SubgroupLattice(G, masks, _containment(masks, G.order), class_of, reps, normal)


def enumerate_subgroups(G: Group, cap: int | None = None) -> list[int]:
    """Cyclic seeds joined into conjugacy-class representatives until closed.

    Every subgroup is a chain of cyclic joins, and joins commute with
    conjugation, so joining each cyclic subgroup onto one representative per
    class suffices.
    """
    cap = LIMITS.lattice_cap if cap is None else cap
    cyclic = _cyclic_subgroups(G)
    found: set[int] = set()
    reps: list[tuple[int, list[int]]] = []

    def register(mask: int, gens: list[int]):
        orbit = [Subgroup(mask)]
        found.add(mask)
        for H in orbit:
            for g in G.gen_indices:
                K = conjugate(G, H, g)
                if K.mask not in found:
                    found.add(K.mask)
                    orbit.append(K)
        if len(found) > cap:
            raise LatticeTooLarge(f"{G.name} has more than {cap} subgroups")
        reps.append((mask, gens))

    register(1, [])
    member0 = np.zeros(G.order, dtype=bool)
    for mask, gens in reps:
        elems = bits(mask)
        member = member0.copy()
        member[elems] = True
        for cmask, x in cyclic:
            if cmask & ~mask == 0:
                continue
            _, m2 = _extend(G, elems, member, gens, x)
            k = mask_from_bool(m2)
            if k not in found:
                register(k, gens + [x])
    return list(found)


@lru_cache(maxsize=512)
def all_subgroups(G: Group) -> SubgroupLattice:
    if _store is not None:
        L = _store.load(G)
        if L is not None:
            return L
    L = build_lattice(G, enumerate_subgroups(G))
    if _store is not None:
        _store.save(G, L)
    return L


_store = None


def set_persistent_store(store) -> None:
    """Install an object with ``load(G)`` / ``save(G, L)``, or None."""
    global _store
    _store = store
    all_subgroups.cache_clear()


def rejoin_pass(L: SubgroupLattice) -> set[int]:
    """One full join pass over a finished lattice; returns any new subgroups."""
    G = L.group
    new = set()
    cyclic = _cyclic_subgroups(G)
    for mask in L.masks:
        S = Subgroup(mask)
        elems = S.elements()
        member = np.zeros(G.order, dtype=bool)
        member[elems] = True
        gens = generators_of(G, S)
        for cmask, x in cyclic:
            if cmask & ~mask:
                k = mask_from_bool(_extend(G, elems, member, gens, x)[1])
                if k not in L.index:
                    new.add(k)
    return new




def mobius(L: SubgroupLattice) -> MobiusTable:
    cached = getattr(L, "_mobius", None)
    if cached is not None:
        return cached
    n = len(L)
    leq = L.leq
    M = np.zeros((n, n), dtype=np.int64)
    for x in range(n - 1, -1, -1):
        up = np.flatnonzero(leq[x])
        strict = up[up != x]
        if len(strict):
            row = -M[np.ix_(strict, up)].sum(axis=0)
            if np.abs(row).max() >= 1 << 40:
                raise OverflowError("Möbius value out of range; lattice is corrupt")
            M[x, up] = row
        M[x, x] = 1
    table = MobiusTable(L, M)
    L._mobius = table
    return table


def normal_subgroups(L: SubgroupLattice) -> list[Subgroup]:
    return [Subgroup(m) for m, nrm in zip(L.masks, L.is_normal) if nrm]


def minimal_normal_subgroups(L: SubgroupLattice) -> list[Subgroup]:
    normals = [S for S in normal_subgroups(L) if S.order > 1]
    return [N for N in normals if not any(M < N for M in normals)]


def maximal_proper_normal_subgroups(L: SubgroupLattice) -> list[Subgroup]:
    n = L.group.order
    normals = [S for S in normal_subgroups(L) if S.order < n]
    return [N for N in normals if not any(N < M for M in normals)]
