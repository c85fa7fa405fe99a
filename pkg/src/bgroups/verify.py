"""Property suites run over catalogue sweeps."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .bgroup import (
    beta,
    beta_choice_spread,
    is_b_group,
    m_value,
    prime_divisors,
    theorem_2_6_check,
    theorem_4_1_instance,
    verify_baumann,
    verify_nilpotent_conjecture,
    verify_solvable_conjecture,
    well_definedness_check,
)
from .burnside import deflate, idempotent_top, m_gn_via_deflation, table_of_marks
from .catalogue import construct, sweep
from .errors import Disagreement
from .lattice import all_subgroups, normal_subgroups
from .perm_core import (
    LIMITS,
    Group,
    Subgroup,
    composition_factors,
    is_abelian,
    is_cyclic,
    is_isomorphic,
    is_prime,
    is_solvable,
    mask_from_bool,
    quotient,
)

EXPLICIT_INSTANCES = ("A5", "S5", "A5 x C2", "A6")
SUITES = ("props2", "baumann", "nilpotent", "solvable", "thm41")


@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} ({self.checked} checked, {len(self.failures)} failed)"


def group_set(max_order: int) -> list[Group]:
    groups = sweep(max_order)
    for spec in EXPLICIT_INSTANCES:
        G = construct(spec)
        if G.order <= min(max_order, LIMITS.order_cap) and \
                not any(H.order == G.order and is_isomorphic(H, G) for H in groups):
            groups.append(G)
    return groups


def _run(name: str, groups: Iterable[Group], check: Callable[[Group], Iterable[tuple[bool, str]]]) -> PropertyResult:
    res = PropertyResult(name)
    for G in groups:
        for ok, what in check(G):
            res.checked += 1
            if not ok:
                res.failures.append(f"{G.name}: {what}")
    return res


def _image(G: Group, N: Subgroup, M: Subgroup) -> Subgroup:
    Q, proj = quotient(G, N)
    member = np.zeros(Q.order, dtype=bool)
    member[proj[M.elements()]] = True
    return Subgroup(mask_from_bool(member))


# --- the property checks, one generator per property ---

def check_m_trivial(G):
    m = m_value(G, G.trivial)
    yield m == 1, f"m(G,1) = {m}"


def check_m_top(G):
    m = m_value(G, G.whole)
    yield (m != 0) == is_cyclic(G), f"m(G,G) = {m}, cyclic = {is_cyclic(G)}"
    if is_prime(G.order):
        yield m == Fraction(G.order - 1, G.order), f"m(Cp,Cp) = {m}"


def check_multiplicative(G):
    L = all_subgroups(G)
    normals = normal_subgroups(L)
    for N in normals:
        Q, _ = quotient(G, N)
        mn = m_value(G, N)
        for M in normals:
            if N <= M:
                lhs = m_value(G, M)
                rhs = mn * m_value(Q, _image(G, N, M))
                yield lhs == rhs, f"N={N.order}, M={M.order}: {lhs} != {rhs}"


def check_deflation(G):
    L = all_subgroups(G)
    e = idempotent_top(L)
    for N in normal_subgroups(L):
        direct = m_value(G, N)
        via = m_gn_via_deflation(G, N)
        yield direct == via, f"N={N.order}: sum {direct} vs deflation {via}"
        d = deflate(G, N, e)
        LQ = d.lattice
        top = LQ.class_of[LQ.top]
        want = [via if c == top else Fraction(0) for c in range(len(LQ.class_reps))]
        yield d.mark_vector(table_of_marks(LQ)) == want, f"N={N.order}: marks of Def e"


def check_b_group_audit(G):
    try:
        is_b_group(G, audit=True)
    except Disagreement as exc:
        yield False, str(exc)
    else:
        yield True, ""


def check_simple_b_groups(G):
    L = all_subgroups(G)
    simple = G.order > 1 and len(normal_subgroups(L)) == 2
    if simple:
        yield is_b_group(G) == (not is_abelian(G)), "simple group B-group iff nonabelian"


def check_beta_consistency(G):
    res = beta(G)
    yield is_isomorphic(res.beta_group, res.recursive_group), "beta methods agree"
    yield is_b_group(res.beta_group), "beta(G) is a B-group"
    yield is_isomorphic(beta(res.beta_group).beta_group, res.beta_group), "beta idempotent"
    yield (res.beta_group.order == 1) == is_cyclic(G), "beta trivial iff cyclic"
    yield well_definedness_check(G), "maximal nonzero-m quotients isomorphic"
    for N in normal_subgroups(all_subgroups(G)):
        yield theorem_2_6_check(G, N), f"quotient B-group criterion N={N.order}"


def check_choice_independence(G):
    target = beta(G).beta_group
    for B in beta_choice_spread(G):
        yield is_isomorphic(B, target), "recursion choice changes beta"


def check_nilpotent(G):
    a, b = verify_nilpotent_conjecture(G)
    yield a == b, f"nilpotent G={a}, beta={b}"


def check_solvable(G):
    a, b = verify_solvable_conjecture(G)
    yield a == b, f"solvable G={a}, beta={b}"
    if a:
        yield b, "solvable G has non-solvable beta"


def check_baumann(G):
    for p in prime_divisors(G.order):
        a, b = verify_baumann(G, p)
        yield a == b, f"p={p}: hypo-elementary G={a}, beta={b}"


def single_simple_factor_candidates(groups: Iterable[Group]):
    for G in groups:
        if is_solvable(G):
            continue
        factors = composition_factors(G)
        for label, count in sorted(factors.items()):
            if count == 1 and not label.startswith("C"):
                yield G, label


def single_simple_factor_suite(groups: Iterable[Group]) -> PropertyResult:
    res = PropertyResult("one simple factor => beta not solvable")
    for G, label in single_simple_factor_candidates(groups):
        rep = theorem_4_1_instance(G, label)
        res.checked += 1
        if rep.beta_solvable:
            res.failures.append(f"{G.name}: beta({G.name}) is solvable")
        top = [c for c in rep.cases if c.level == 0 and not c.abelian]
        cases = ", ".join(f"|N|={c.normal_order} |C(N)|={c.centralizer_order} {c.case}" for c in top)
        res.notes.append(f"{G.name}: {label} x1, beta order {rep.beta_group.order}, "
                         f"solvable={rep.beta_solvable}; {cases or 'no nonabelian minimal normal'}")
    return res


def run_suite(which: str, max_order: int) -> list[PropertyResult]:
    groups = group_set(max_order)
    small = [G for G in groups if G.order <= min(max_order, 48)]
    out = []
    if which in ("props2", "all"):
        out += [
            _run("m(G,1) = 1", groups, check_m_trivial),
            _run("m(G,G) != 0 iff cyclic", groups, check_m_top),
            _run("m multiplicative along normal chains", small, check_multiplicative),
            _run("deflation identity", small, check_deflation),
            _run("minimal-normal B-group test agrees with full scan", groups, check_b_group_audit),
            _run("simple groups: B-group iff nonabelian", groups, check_simple_b_groups),
            _run("beta well defined, idempotent, methods agree", small, check_beta_consistency),
            _run("beta recursion choice-independent", small, check_choice_independence),
        ]
    if which in ("nilpotent", "all"):
        out.append(_run("nilpotent(G) iff nilpotent(beta G)", groups, check_nilpotent))
    if which in ("solvable", "all"):
        out.append(_run("solvable(G) iff solvable(beta G)", groups, check_solvable))
    if which in ("baumann", "all"):
        out.append(_run("p-hypo-elementary(G) iff same for beta G", groups, check_baumann))
    if which in ("thm41", "all"):
        out.append(single_simple_factor_suite(groups))
    return out
