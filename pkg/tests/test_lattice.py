import math

import numpy as np
import pytest

import oracles
from bgroups.catalogue import construct, sweep
from bgroups.errors import LatticeTooLarge
from bgroups.lattice import (
    all_subgroups,
    enumerate_subgroups,
    maximal_proper_normal_subgroups,
    minimal_normal_subgroups,
    mobius,
    normal_subgroups,
    rejoin_pass,
)
from bgroups.perm_core import Subgroup, center, conjugate

TINY = [G for G in sweep(24)]
SMALL = [G for G in sweep(48)]


def as_sets(G, L):
    return {frozenset(G.elements[i] for i in S.elements()) for S in L.subgroups}


def sub_by_order(G, order):
    return [S for S in all_subgroups(G).subgroups if S.order == order]


@pytest.mark.parametrize("G", TINY, ids=lambda G: G.name)
def test_lattice_matches_exhaustive_oracle(G):
    L = all_subgroups(G)
    assert as_sets(G, L) == oracles.all_subgroups(G.elements)
    normal = {S for S in oracles.all_subgroups(G.elements) if oracles.is_normal(S, G.elements)}
    for S, flag in zip(L.subgroups, L.is_normal):
        elems = frozenset(G.elements[i] for i in S.elements())
        assert flag == (elems in normal)


def test_lattice_examples():
    assert len(all_subgroups(construct("S3"))) == 6
    assert len(all_subgroups(construct("C12"))) == 6
    assert len(all_subgroups(construct("S5"))) == 156


@pytest.mark.parametrize("n", range(1, 101))
def test_cyclic_subgroup_count(n):
    assert len(all_subgroups(construct(f"C{n}"))) == len(oracles.divisors(n))


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_lattice_structure(G):
    L = all_subgroups(G)
    orders = L.orders
    assert L.masks[0] == G.trivial.mask and L.masks[L.top] == G.whole.mask
    # sorted by order then bitset
    assert list(zip(orders.tolist(), L.masks)) == sorted(zip(orders.tolist(), L.masks))
    assert all(G.order % int(o) == 0 for o in orders)
    # leq agrees with bitset containment
    for i in range(0, len(L), max(1, len(L) // 15)):
        for j in range(len(L)):
            assert bool(L.leq[i, j]) == (L.masks[i] & L.masks[j] == L.masks[i])
    # conjugation closure and class consistency
    for i, m in enumerate(L.masks):
        for g in G.gen_indices:
            c = conjugate(G, Subgroup(m), g)
            assert c.mask in L.index
            assert L.class_of[L.index[c.mask]] == L.class_of[i]
    sizes = np.bincount(L.class_of)
    for i in range(len(L)):
        assert L.is_normal[i] == (sizes[L.class_of[i]] == 1)
    assert rejoin_pass(L) == set()


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_mobius_recursion(G):
    L = all_subgroups(G)
    M = mobius(L)
    leq = L.leq.astype(bool)
    for y in range(len(L)):
        assert M(y, y) == 1
        col = M.column(y)
        below = np.flatnonzero(leq[:, y])
        for x in below:
            if x != y:
                between = [z for z in below if leq[x, z]]
                assert sum(int(col[z]) for z in between) == 0
        assert not col[~leq[:, y]].any()


@pytest.mark.parametrize("G", TINY, ids=lambda G: G.name)
def test_mobius_matches_oracle(G):
    L = all_subgroups(G)
    M = mobius(L)
    subs = oracles.all_subgroups(G.elements)
    mu = oracles.mobius_to_top(subs, frozenset(G.elements))
    for i, S in enumerate(L.subgroups):
        elems = frozenset(G.elements[k] for k in S.elements())
        assert M(i, L.top) == mu[elems]


def test_mobius_examples():
    S3 = construct("S3")
    L = all_subgroups(S3)
    M = mobius(L)
    by_order = {int(L.orders[i]): M(i, L.top) for i in range(len(L))}
    assert by_order == {1: 3, 2: -1, 3: -1, 6: 1}
    L = all_subgroups(construct("C4"))
    assert mobius(L)(0, L.top) == 0
    for spec, want in [("A5", -60), ("S4", -12), ("A6", 720)]:
        L = all_subgroups(construct(spec))
        assert mobius(L)(0, L.top) == want


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_weighted_mobius_sum(G):
    # sum |X| mu(X, G) is phi(n) for cyclic G of order n and 0 otherwise
    L = all_subgroups(G)
    col = mobius(L).column(L.top)
    total = int((L.orders * col).sum())
    n = G.order
    cyclic = any(oracles.element_order(g) == n for g in G.elements)
    phi = sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    assert total == (phi if cyclic else 0)


def test_normal_subgroup_examples():
    A5 = construct("A5")
    L = all_subgroups(A5)
    assert [S.order for S in normal_subgroups(L)] == [1, 60]
    assert minimal_normal_subgroups(L) == [A5.whole]
    D8 = construct("D8")
    assert minimal_normal_subgroups(all_subgroups(D8)) == [center(D8)]
    V4 = construct("V4")
    mins = minimal_normal_subgroups(all_subgroups(V4))
    assert sorted(S.order for S in mins) == [2, 2, 2]
    assert sorted(S.order for S in maximal_proper_normal_subgroups(all_subgroups(construct("S4")))) == [12]


def test_lattice_cap():
    with pytest.raises(LatticeTooLarge):
        enumerate_subgroups(construct("S5"), cap=100)
