"""B-groups, the largest quotient B-group beta(G), and the verification harness."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .burnside import m_gn
from .errors import Disagreement, HypothesisViolated, NotPrime
from .lattice import all_subgroups, minimal_normal_subgroups, mobius, normal_subgroups
from .perm_core import (
    Group,
    Subgroup,
    centralizer,
    composition_factors,
    is_abelian,
    is_isomorphic,
    is_nilpotent,
    is_p_hypo_elementary,
    is_prime,
    is_solvable,
    prime_factors,
    quotient,
    subgroup_as_group,
)


def m_value(G: Group, N: Subgroup) -> Fraction:
    L = all_subgroups(G)
    return m_gn(L, mobius(L), N)


def _key(S: Subgroup):
    return (S.order, S.mask)


def is_b_group(G: Group, audit: bool = False) -> bool:
    L = all_subgroups(G)
    fast = all(m_value(G, N) == 0 for N in minimal_normal_subgroups(L))
    if audit:
        slow = all(m_value(G, N) == 0 for N in normal_subgroups(L) if N.order > 1)
        if slow != fast:
            raise Disagreement(f"minimal-normal and full B-group tests disagree on {G.name}")
    return fast


@dataclass
class BetaStep:
    group: Group
    kernel: Subgroup
    m: Fraction


@dataclass
class BetaResult:
    group: Group
    beta_group: Group
    kernel: Subgroup
    certificate: list[tuple[Subgroup, Fraction]]
    chain: list[BetaStep] = field(default_factory=list)
    recursive_group: Group | None = None


def nonzero_maximal(G: Group) -> tuple[list[Subgroup], list[tuple[Subgroup, Fraction]]]:
    """Normal subgroups maximal (by inclusion) among those with m_{G,N} != 0."""
    L = all_subgroups(G)
    cert = [(N, m_value(G, N)) for N in normal_subgroups(L)]
    nonzero = [N for N, m in cert if m != 0]
    maximal = [N for N in nonzero if not any(N < M for M in nonzero)]
    return maximal, cert


def beta_direct(G: Group) -> tuple[Group, Subgroup, list]:
    maximal, cert = nonzero_maximal(G)
    N = max(maximal, key=lambda S: (S.order, -S.mask))
    return quotient(G, N)[0], N, cert


def beta_recursive(G: Group, chain: list[BetaStep] | None = None, first_choice: Subgroup | None = None) -> Group:
    """Peel minimal normal subgroups with nonzero m until a B-group remains."""
    chain = [] if chain is None else chain
    H = G
    choice = first_choice
    while True:
        L = all_subgroups(H)
        if choice is not None:
            cands = [choice]
            choice = None
        else:
            cands = sorted(minimal_normal_subgroups(L), key=_key)
        for N in cands:
            m = m_value(H, N)
            if m != 0:
                chain.append(BetaStep(H, N, m))
                H = quotient(H, N)[0]
                break
        else:
            return H


@lru_cache(maxsize=2048)
def beta(G: Group) -> BetaResult:
    direct, kernel, cert = beta_direct(G)
    chain: list[BetaStep] = []
    rec = beta_recursive(G, chain)
    if not is_isomorphic(direct, rec):
        raise Disagreement(f"beta({G.name}): direct scan and recursion give different groups")
    return BetaResult(G, direct, kernel, cert, chain, rec)


def beta_choice_spread(G: Group) -> list[Group]:
    """beta via the recursion, once per admissible first minimal normal subgroup."""
    L = all_subgroups(G)
    out = []
    for N in sorted(minimal_normal_subgroups(L), key=_key):
        if m_value(G, N) != 0:
            out.append(beta_recursive(G, first_choice=N))
    return out or [G]


def well_definedness_check(G: Group) -> bool:
    maximal, _ = nonzero_maximal(G)
    quots = [quotient(G, N)[0] for N in maximal]
    return all(is_isomorphic(quots[0], Q) for Q in quots[1:])


def is_quotient_of(B: Group, Q: Group) -> bool:
    """Is B isomorphic to Q/K for some normal K of Q?"""
    if Q.order % B.order:
        return False
    LQ = all_subgroups(Q)
    for K in normal_subgroups(LQ):
        if K.order * B.order == Q.order and is_isomorphic(quotient(Q, K)[0], B):
            return True
    return False


def theorem_2_6_check(G: Group, N: Subgroup) -> bool:
    """(a) m != 0  <=>  (c) beta(G) ~ beta(G/N); and (a) => (b) beta(G) is a quotient of G/N."""
    m = m_value(G, N)
    Q = quotient(G, N)[0]
    bG = beta(G).beta_group
    bQ = beta(Q).beta_group
    if (m != 0) != is_isomorphic(bG, bQ):
        return False
    if m != 0 and not is_quotient_of(bG, Q):
        return False
    return True


def verify_nilpotent_conjecture(G: Group) -> tuple[bool, bool]:
    return is_nilpotent(G), is_nilpotent(beta(G).beta_group)


def verify_solvable_conjecture(G: Group) -> tuple[bool, bool]:
    return is_solvable(G), is_solvable(beta(G).beta_group)


def verify_baumann(G: Group, p: int) -> tuple[bool, bool]:
    if not is_prime(p):
        raise NotPrime(p)
    return is_p_hypo_elementary(G, p), is_p_hypo_elementary(beta(G).beta_group, p)


@dataclass
class CaseEntry:
    level: int
    group_order: int
    normal_order: int
    m: Fraction
    abelian: bool
    centralizer_order: int
    case: str  # "Case 1", "Case 2" or "abelian"
    embeds_in_aut: bool


@dataclass
class SingleFactorReport:
    group: Group
    label: str
    multiplicity: int
    factors: dict
    beta_group: Group
    beta_solvable: bool
    cases: list[CaseEntry]


def classify_minimal_normals(H: Group, level: int = 0) -> list[CaseEntry]:
    out = []
    for N in sorted(minimal_normal_subgroups(all_subgroups(H)), key=_key):
        C = centralizer(H, N)
        ab = is_abelian(subgroup_as_group(H, N))
        if ab:
            case = "abelian"
        else:
            case = "Case 1" if C.order > 1 else "Case 2"
        out.append(CaseEntry(level, H.order, N.order, m_value(H, N), ab, C.order, case,
                             not ab and C.order == 1))
    return out


def theorem_4_1_instance(G: Group, label: str) -> SingleFactorReport:
    factors = composition_factors(G)
    if factors[label] != 1:
        raise HypothesisViolated(f"{G.name} has {factors[label]} composition factors {label}")
    res = beta(G)
    cases = []
    levels = [step.group for step in res.chain] + [res.recursive_group]
    for level, H in enumerate(levels):
        cases.extend(classify_minimal_normals(H, level))
    return SingleFactorReport(G, label, 1, dict(factors), res.beta_group,
                           is_solvable(res.beta_group), cases)


def prime_divisors(n: int) -> list[int]:
    return sorted(set(prime_factors(n)))
