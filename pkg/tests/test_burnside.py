from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bgroups.burnside import (
    BurnsideElement,
    basis_element,
    deflate,
    idempotent_top,
    m_gn,
    m_gn_via_deflation,
    table_of_marks,
)
from bgroups.catalogue import construct, sweep
from bgroups.errors import NotNormal
from bgroups.lattice import all_subgroups, mobius, normal_subgroups
from bgroups.perm_core import center, normalizer, quotient

F = Fraction
SMALL = sweep(48)
TINY = sweep(16)


def normal_by_order(G, order):
    return [N for N in normal_subgroups(all_subgroups(G)) if N.order == order]


# --- marks ---

def test_marks_examples():
    assert table_of_marks(all_subgroups(construct("C1"))).marks == [[1]]
    assert table_of_marks(all_subgroups(construct("C2"))).marks == [[2, 1], [0, 1]]
    L = all_subgroups(construct("S3"))
    tom = table_of_marks(L)
    c3 = L.class_of[[i for i in range(len(L)) if L.orders[i] == 3][0]]
    assert tom.mark(0, c3) == 2


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_marks_structure(G):
    L = all_subgroups(G)
    tom = table_of_marks(L)
    reps = [L.subgroups[i] for i in L.class_reps]
    for k, K in enumerate(reps):
        assert tom.mark(0, k) == G.order // K.order
        assert tom.mark(k, k) == normalizer(G, K).order // K.order
        for h in range(k + 1, len(reps)):
            assert tom.mark(h, k) == 0


@pytest.mark.parametrize("G", TINY, ids=lambda G: G.name)
def test_marks_match_coset_scan(G):
    L = all_subgroups(G)
    tom = table_of_marks(L)
    reps = [frozenset(G.elements[i] for i in L.subgroups[r].elements()) for r in L.class_reps]
    for h, H in enumerate(reps):
        for k, K in enumerate(reps):
            assert tom.mark(h, k) == oracles.fixed_cosets(H, K, G.elements)


# --- top idempotent ---

def test_idempotent_examples():
    e = idempotent_top(all_subgroups(construct("C1")))
    assert e.coeffs == {0: F(1)}
    e = idempotent_top(all_subgroups(construct("C2")))
    assert e.coeffs == {0: F(-1, 2), 1: F(1)}
    assert e.mark_vector() == [0, 1]
    e = idempotent_top(all_subgroups(construct("S3")))
    assert e.mark_vector() == [0, 0, 0, 1]


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_idempotent_marks_are_top_indicator(G):
    L = all_subgroups(G)
    e = idempotent_top(L, mobius(L))
    top = L.class_of[L.top]
    assert e.mark_vector() == [int(c == top) for c in range(len(L.class_reps))]


@settings(max_examples=30)
@given(st.sampled_from(SMALL), st.data())
def test_marks_are_linear(G, data):
    L = all_subgroups(G)
    nc = len(L.class_reps)
    a = {c: F(data.draw(st.integers(-5, 5)), data.draw(st.integers(1, 6))) for c in range(nc)}
    b = {c: F(data.draw(st.integers(-5, 5)), data.draw(st.integers(1, 6))) for c in range(nc)}
    x, y = BurnsideElement(L, a), BurnsideElement(L, b)
    lam = F(data.draw(st.integers(-3, 3)), 2)
    vx, vy, vs = x.mark_vector(), y.mark_vector(), (x + y.scale(lam)).mark_vector()
    assert vs == [p + lam * q for p, q in zip(vx, vy)]


# --- deflation ---

def test_deflate_examples():
    C2 = construct("C2")
    x = basis_element(all_subgroups(C2), 0)
    d = deflate(C2, C2.whole, x)
    assert d.coeffs == {0: F(1)} and d.lattice.group.order == 1

    S3 = construct("S3")
    A3 = normal_by_order(S3, 3)[0]
    d = deflate(S3, A3, basis_element(all_subgroups(S3), 0))
    assert d.lattice.group.order == 2
    assert d.coeffs == {0: F(1)}  # [S3/1] goes to [C2/1]

    L = all_subgroups(S3)
    d = deflate(S3, S3.trivial, idempotent_top(L))
    assert d.mark_vector() == [0, 0, 0, 1]

    with pytest.raises(NotNormal):
        deflate(S3, [S for S in L.subgroups if S.order == 2][0], basis_element(L, 0))


@pytest.mark.parametrize("G", [G for G in SMALL if G.order <= 24], ids=lambda G: G.name)
def test_deflation_respects_conjugacy(G):
    L = all_subgroups(G)
    for N in normal_subgroups(L):
        Q, proj = quotient(G, N)
        LQ = all_subgroups(Q)
        for cls in L.classes():
            images = set()
            for i in cls:
                d = deflate(G, N, BurnsideElement(L, {L.class_of[i]: F(1)}))
                images.add(tuple(d.coeffs))
            assert len(images) == 1


# --- m_{G,N} ---

def test_m_gn_examples():
    for spec in ["C1", "S3", "D8", "A5"]:
        G = construct(spec)
        L = all_subgroups(G)
        assert m_gn(L, mobius(L), G.trivial) == 1
        assert m_gn_via_deflation(G, G.trivial) == 1
    for p in (2, 3, 5, 7, 11, 13):
        G = construct(f"C{p}")
        L = all_subgroups(G)
        assert m_gn(L, None, G.whole) == F(p - 1, p)
    S3 = construct("S3")
    A3 = normal_by_order(S3, 3)[0]
    assert m_gn(all_subgroups(S3), None, A3) == 0
    assert m_gn_via_deflation(S3, A3) == 0
    V4 = construct("V4")
    for N in normal_by_order(V4, 2):
        assert m_gn(all_subgroups(V4), None, N) == 0
    D8 = construct("D8")
    assert m_gn(all_subgroups(D8), None, center(D8)) == 1
    C4 = construct("C4")
    C2 = normal_by_order(C4, 2)[0]
    assert m_gn(all_subgroups(C4), None, C2) == 1
    assert m_gn_via_deflation(C4, C2) == 1
    assert m_gn(all_subgroups(C4), None, C4.whole) == F(1, 2)


def test_m_gn_rejects_non_normal():
    S3 = construct("S3")
    L = all_subgroups(S3)
    H = [S for S in L.subgroups if S.order == 2][0]
    with pytest.raises(NotNormal):
        m_gn(L, None, H)
    with pytest.raises(NotNormal):
        m_gn_via_deflation(S3, H)


@pytest.mark.parametrize("G", TINY, ids=lambda G: G.name)
def test_m_gn_matches_product_set_oracle(G):
    for N in normal_subgroups(all_subgroups(G)):
        Nset = frozenset(G.elements[i] for i in N.elements())
        assert m_gn(all_subgroups(G), None, N) == oracles.m_value(G.elements, Nset)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_two_routes_agree(G):
    L = all_subgroups(G)
    M = mobius(L)
    for N in normal_subgroups(L):
        assert m_gn(L, M, N) == m_gn_via_deflation(G, N)
