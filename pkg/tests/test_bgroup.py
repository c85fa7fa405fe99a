from fractions import Fraction

import pytest

import oracles
from bgroups.bgroup import (
    beta,
    beta_choice_spread,
    beta_direct,
    is_b_group,
    m_value,
    theorem_2_6_check,
    theorem_4_1_instance,
    verify_baumann,
    verify_nilpotent_conjecture,
    verify_solvable_conjecture,
    well_definedness_check,
)
from bgroups.catalogue import construct, sweep
from bgroups.errors import HypothesisViolated, NotPrime
from bgroups.lattice import all_subgroups, normal_subgroups
from bgroups.perm_core import center, is_cyclic, is_isomorphic, quotient

SMALL = sweep(48)


def normals(G):
    return normal_subgroups(all_subgroups(G))


def test_b_group_examples():
    assert is_b_group(construct("A5"))
    assert is_b_group(construct("A6"))
    for p in (2, 3, 5, 7):
        assert not is_b_group(construct(f"C{p}"))
    assert is_b_group(construct("V4"))
    assert is_b_group(construct("S3"))
    assert not is_b_group(construct("D8"))


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_b_group_fast_path_matches_full_scan(G):
    fast = is_b_group(G, audit=True)
    assert fast == all(m_value(G, N) == 0 for N in normals(G) if N.order > 1)


def test_beta_examples():
    for n in (2, 4, 6, 12, 30):
        res = beta(construct(f"C{n}"))
        assert res.beta_group.order == 1
        assert res.kernel.order == n
    for spec in ("A5", "S3", "V4"):
        G = construct(spec)
        res = beta(G)
        assert is_isomorphic(res.beta_group, G)
        assert res.kernel.order == 1
    D8 = construct("D8")
    res = beta(D8)
    assert is_isomorphic(res.beta_group, construct("V4"))
    assert res.kernel == center(D8)
    B, kernel, _ = beta_direct(D8)
    assert is_isomorphic(B, construct("V4"))
    assert res.chain[0].m == 1


def test_beta_nonsolvable_examples():
    assert beta(construct("A5 x C2")).beta_group.order == 60
    assert beta(construct("S5")).beta_group.order == 120


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_beta_invariants(G):
    res = beta(G)
    assert m_value(G, res.kernel) != 0
    for N in normals(G):
        if res.kernel < N:
            assert m_value(G, N) == 0
    assert is_b_group(res.beta_group)
    assert is_isomorphic(res.beta_group, res.recursive_group)
    assert is_isomorphic(beta(res.beta_group).beta_group, res.beta_group)
    assert (res.beta_group.order == 1) == is_cyclic(G)
    assert well_definedness_check(G)
    for B in beta_choice_spread(G):
        assert is_isomorphic(B, res.beta_group)


def test_well_definedness_examples():
    for spec in ("C6", "V4", "A5", "S3"):
        assert well_definedness_check(construct(spec))


def test_theorem_2_6_examples():
    D8 = construct("D8")
    assert theorem_2_6_check(D8, D8.trivial)
    assert theorem_2_6_check(D8, center(D8))
    assert is_isomorphic(beta(quotient(D8, center(D8))[0]).beta_group, construct("V4"))
    S3 = construct("S3")
    A3 = [N for N in normals(S3) if N.order == 3][0]
    assert m_value(S3, A3) == 0
    assert beta(quotient(S3, A3)[0]).beta_group.order == 1
    assert theorem_2_6_check(S3, A3)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_theorem_2_6_on_catalogue(G):
    for N in normals(G):
        assert theorem_2_6_check(G, N)


@pytest.mark.parametrize("G", SMALL, ids=lambda G: G.name)
def test_multiplicative_on_normal_chains(G):
    for N in normals(G):
        Q, proj = quotient(G, N)
        for M in normals(G):
            if N <= M:
                image = [N2 for N2 in normals(Q) if set(N2.elements().tolist()) == set(proj[M.elements()].tolist())]
                assert len(image) == 1
                assert m_value(G, M) == m_value(G, N) * m_value(Q, image[0])


def test_conjecture_examples():
    assert verify_nilpotent_conjecture(construct("D8")) == (True, True)
    assert verify_nilpotent_conjecture(construct("S3")) == (False, False)
    assert verify_solvable_conjecture(construct("S5")) == (False, False)


def test_baumann_examples():
    assert verify_baumann(construct("D8"), 2) == (True, True)
    assert verify_baumann(construct("S3"), 3) == (True, True)
    for p in (2, 3, 5):
        assert verify_baumann(construct("A5"), p) == (False, False)
    with pytest.raises(NotPrime):
        verify_baumann(construct("S3"), 4)


@pytest.mark.parametrize("G", sweep(100), ids=lambda G: G.name)
def test_beta_preserves_group_properties(G):
    a, b = verify_nilpotent_conjecture(G)
    assert a == b
    a, b = verify_solvable_conjecture(G)
    assert a == b
    for p in {q for q in range(2, G.order + 1) if G.order % q == 0 and oracles.is_prime(q)}:
        a, b = verify_baumann(G, p)
        assert a == b


def test_single_simple_factor_reports():
    rep = theorem_4_1_instance(construct("S5"), "A5")
    assert not rep.beta_solvable
    top = [c for c in rep.cases if c.level == 0 and not c.abelian]
    assert [(c.normal_order, c.centralizer_order, c.case) for c in top] == [(60, 1, "Case 2")]
    assert top[0].embeds_in_aut

    rep = theorem_4_1_instance(construct("A5 x C2"), "A5")
    assert not rep.beta_solvable
    top = [c for c in rep.cases if c.level == 0 and not c.abelian]
    assert [(c.normal_order, c.centralizer_order, c.case) for c in top] == [(60, 2, "Case 1")]

    with pytest.raises(HypothesisViolated):
        theorem_4_1_instance(construct("A5 x A5", cap=3600), "A5")


def test_m_value_exact_type():
    assert m_value(construct("C4"), construct("C4").whole) == Fraction(1, 2)
    assert isinstance(m_value(construct("C6"), construct("C6").whole), Fraction)
