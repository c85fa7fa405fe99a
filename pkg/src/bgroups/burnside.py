"""
Rational Burnside algebra: table of marks, the top idempotent, deflation,
and the deflation number m_{G,N} computed two independent ways.

Coordinates are taken in the basis of transitive G-sets [G/K], one per
conjugacy class of subgroups, with classes ordered as in the lattice
(by order, then bitset). All arithmetic is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import MarkCheckFailed, NotNormal, NotProportional
from .lattice import MobiusTable, SubgroupLattice, all_subgroups, mobius
from .perm_core import Group, Subgroup, mask_from_bool, quotient


@dataclass(eq=False)
class TableOfMarks:
    lattice: SubgroupLattice
    marks: list[list[int]]  # marks[h][k] = |(G/K)^H| over class ids

    def mark(self, h: int, k: int) -> int:
        return self.marks[h][k]

    @property
    def array(self) -> np.ndarray:
        arr = getattr(self, "_array", None)
        if arr is None:
            arr = self._array = np.array(self.marks, dtype=np.int64).reshape(len(self.marks), -1)
        return arr


@dataclass(eq=False)
class BurnsideElement:
    lattice: SubgroupLattice
    coeffs: dict[int, Fraction]  # class id -> coefficient of [G/K]

    def __add__(self, other):
        assert other.lattice is self.lattice
        out = dict(self.coeffs)
        for c, v in other.coeffs.items():
            out[c] = out.get(c, Fraction(0)) + v
        return BurnsideElement(self.lattice, _prune(out))

    def scale(self, lam) -> "BurnsideElement":
        return BurnsideElement(self.lattice, _prune({c: lam * v for c, v in self.coeffs.items()}))

    def coefficient(self, c: int) -> Fraction:
        return self.coeffs.get(c, Fraction(0))

    def mark_vector(self, tom: TableOfMarks | None = None) -> list[Fraction]:
        tom = tom or table_of_marks(self.lattice)
        nc = len(self.lattice.class_reps)
        if not self.coeffs:
            return [Fraction(0)] * nc
        # common denominator, then one integer product
        den = math.lcm(*(v.denominator for v in self.coeffs.values()))
        ks = list(self.coeffs)
        nums = [v.numerator * (den // v.denominator) for v in self.coeffs.values()]
        cols = tom.array[:, ks]
        bound = sum(abs(a) for a in nums) * max(1, int(cols.max(initial=0)))
        if bound < 2 ** 62:
            sums = cols @ np.array(nums, dtype=np.int64)
        else:
            sums = cols.astype(object) @ np.array(nums, dtype=object)
        return [Fraction(int(t), den) for t in sums]

    def __eq__(self, other):
        return isinstance(other, BurnsideElement) and other.lattice is self.lattice \
            and _prune(self.coeffs) == _prune(other.coeffs)


def _prune(coeffs: dict) -> dict:
    return {c: v for c, v in sorted(coeffs.items()) if v != 0}


def basis_element(L: SubgroupLattice, c: int, coeff=1) -> BurnsideElement:
    return BurnsideElement(L, {c: Fraction(coeff)})


def table_of_marks(L: SubgroupLattice) -> TableOfMarks:
    cached = getattr(L, "_marks", None)
    if cached is not None:
        return cached
    G = L.group
    T = G.table
    reps = [Subgroup(L.masks[i]) for i in L.class_reps]
    # right transversal of each K: H fixes Kg iff g H g^-1 <= K
    transversals = []
    for K in reps:
        seen = np.zeros(G.order, dtype=bool)
        tr = []
        k_el = K.elements()
        for g in range(G.order):
            if not seen[g]:
                seen[T[k_el, g]] = True
                tr.append(g)
        transversals.append(tr)
    inv = G.inverse
    marks = []
    for H in reps:
        h_el = H.elements()
        conj_masks = {}
        row = []
        for K, tr in zip(reps, transversals):
            if H.order > K.order or K.order % H.order:
                row.append(0)
                continue
            count = 0
            for g in tr:
                cm = conj_masks.get(g)
                if cm is None:
                    member = np.zeros(G.order, dtype=bool)
                    member[G.conj[inv[g], h_el]] = True
                    cm = conj_masks[g] = mask_from_bool(member)
                if cm & K.mask == cm:
                    count += 1
            row.append(count)
        marks.append(row)
    tom = TableOfMarks(L, marks)
    L._marks = tom
    return tom


def idempotent_top(L: SubgroupLattice, M: MobiusTable | None = None) -> BurnsideElement:
    """e_G^G = (1/|G|) sum_X |X| mu(X, G) [G/X], certified by its marks."""
    cached = getattr(L, "_idempotent", None)
    if cached is not None:
        return cached
    M = M or mobius(L)
    G = L.group
    col = M.column(L.top)
    orders = L.orders
    coeffs: dict[int, Fraction] = {}
    for x in np.flatnonzero(col):
        c = L.class_of[x]
        coeffs[c] = coeffs.get(c, Fraction(0)) + Fraction(int(orders[x]) * int(col[x]), G.order)
    e = BurnsideElement(L, _prune(coeffs))
    top_class = L.class_of[L.top]
    expected = [Fraction(int(c == top_class)) for c in range(len(L.class_reps))]
    if e.mark_vector() != expected:
        raise MarkCheckFailed(f"mark vector of e_G^G for {G.name} is not the top indicator")
    L._idempotent = e
    return e


def _check_normal(L: SubgroupLattice, N: Subgroup):
    i = L.index.get(N.mask)
    if i is None or not L.is_normal[i]:
        raise NotNormal(f"subgroup of order {N.order} is not normal in {L.group.name}")


def deflate(G: Group, N: Subgroup, x: BurnsideElement) -> BurnsideElement:
    """Def^G_{G/N}: [G/H] -> [(G/N)/(HN/N)], extended linearly."""
    L = x.lattice
    assert L.group == G
    _check_normal(L, N)
    Q, proj = quotient(G, N)
    LQ = all_subgroups(Q)
    out: dict[int, Fraction] = {}
    for c, v in x.coeffs.items():
        H = Subgroup(L.masks[L.class_reps[c]])
        member = np.zeros(Q.order, dtype=bool)
        member[proj[H.elements()]] = True
        cq = LQ.class_of[LQ.index[mask_from_bool(member)]]
        out[cq] = out.get(cq, Fraction(0)) + v
    return BurnsideElement(LQ, _prune(out))


def m_gn(L: SubgroupLattice, M: MobiusTable | None, N: Subgroup) -> Fraction:
    """(1/|G|) sum over subgroups X with XN = G of |X| mu(X, G)."""
    _check_normal(L, N)
    M = M or mobius(L)
    n = L.group.order
    col = M.column(L.top)
    total = 0
    for x in np.flatnonzero(col):
        X = L.masks[x]
        ox = X.bit_count()
        # XN = G as a product set: |X||N| = |G||X ∩ N|
        if ox * N.order == n * (X & N.mask).bit_count():
            total += ox * int(col[x])
    return Fraction(total, n)


def m_gn_via_deflation(G: Group, N: Subgroup) -> Fraction:
    """The scalar lambda with Def e_G^G = lambda e_{G/N}^{G/N}."""
    L = all_subgroups(G)
    d = deflate(G, N, idempotent_top(L))
    Q, _ = quotient(G, N)
    LQ = all_subgroups(Q)
    eq = idempotent_top(LQ)
    top = LQ.class_of[LQ.top]
    lam = d.coefficient(top) / eq.coefficient(top)
    if d != eq.scale(lam):
        raise NotProportional(f"Def e_G^G is not a multiple of the top idempotent for {G.name}/N{N.order}")
    return lam
