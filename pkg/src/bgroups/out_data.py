"""
Outer automorphism data for finite simple groups and the "cyclic modulo r"
verdict for Out(S).

Lie-type rows carry the orders d (diagonal), f (field) and g (graph) of the
pieces of Out(S). An entry "2 if p=..." is 1 when the prime condition fails.
Type 8 has graph part Sym(3), stored as g_part = 6 with ``g_noncyclic`` set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import ConditionViolated
from .perm_core import is_hypo_elementary, prime_factors


@dataclass(frozen=True)
class OuterParams:
    family_type: int | str  # 1..20, "alternating" or "sporadic"
    name: str
    n: int | None
    q: int | None
    p: int | None
    f: int | None  # exponent in the field relation as tabulated (q, q^2 or q^3 = p^f)
    d: int
    f_part: int
    g_part: int
    g_noncyclic: bool = False


@dataclass(frozen=True)
class Verdict:
    verdict: str  # "yes" or "exception"
    case: str
    exception_item: int | None = None


@dataclass(frozen=True)
class _Row:
    label: str  # with {n} placeholder
    rank: Callable[[int], bool] | int  # fixed rank, or predicate on n
    field_power: int  # 1: q = p^f, 2: q^2 = p^f, 3: q^3 = p^f
    d: Callable[[int, int, int], int]  # (n, q, p) -> d
    g: Callable[[int, int], int]  # (n, p) -> g
    q_prime: int | None = None  # q must be a power of this prime
    f_odd: bool = False


def _gcd(a, b):
    return math.gcd(a, b)


ROWS: dict[int, _Row] = {
    1: _Row("A1", 1, 1, lambda n, q, p: _gcd(2, q - 1), lambda n, p: 1),
    2: _Row("A{n}", lambda n: n >= 2, 1, lambda n, q, p: _gcd(n + 1, q - 1), lambda n, p: 2),
    3: _Row("2A{n}", lambda n: n >= 2, 2, lambda n, q, p: _gcd(n + 1, q + 1), lambda n, p: 1),
    4: _Row("B2", 2, 1, lambda n, q, p: _gcd(2, q - 1), lambda n, p: 2 if p == 2 else 1),
    5: _Row("2B2", 2, 1, lambda n, q, p: 1, lambda n, p: 1, q_prime=2, f_odd=True),
    6: _Row("B{n}", lambda n: n >= 3, 1, lambda n, q, p: _gcd(2, q - 1), lambda n, p: 1),
    7: _Row("C{n}", lambda n: n >= 3, 1, lambda n, q, p: _gcd(2, q - 1), lambda n, p: 1),
    8: _Row("D4", 4, 1, lambda n, q, p: _gcd(2, q - 1) ** 2, lambda n, p: 6),
    9: _Row("3D4", 4, 3, lambda n, q, p: 1, lambda n, p: 1),
    10: _Row("D{n}", lambda n: n > 4 and n % 2 == 0, 1, lambda n, q, p: _gcd(2, q - 1) ** 2, lambda n, p: 2),
    11: _Row("D{n}", lambda n: n > 4 and n % 2 == 1, 1, lambda n, q, p: _gcd(4, q ** n - 1), lambda n, p: 2),
    12: _Row("2D{n}", lambda n: n >= 4, 2, lambda n, q, p: _gcd(4, q ** n + 1), lambda n, p: 1),
    13: _Row("G2", 2, 1, lambda n, q, p: 1, lambda n, p: 2 if p == 3 else 1),
    14: _Row("2G2", 2, 1, lambda n, q, p: 1, lambda n, p: 1, q_prime=3, f_odd=True),
    15: _Row("F4", 4, 1, lambda n, q, p: 1, lambda n, p: 2 if p == 2 else 1),
    16: _Row("2F4", 4, 1, lambda n, q, p: 1, lambda n, p: 1, q_prime=2, f_odd=True),
    17: _Row("E6", 6, 1, lambda n, q, p: _gcd(3, q - 1), lambda n, p: 2),
    18: _Row("2E6", 6, 2, lambda n, q, p: _gcd(3, q + 1), lambda n, p: 1),
    19: _Row("E7", 7, 1, lambda n, q, p: _gcd(2, q - 1), lambda n, p: 1),
    20: _Row("E8", 8, 1, lambda n, q, p: 1, lambda n, p: 1),
}

# |Out(S)| for the sporadic groups
SPORADIC_OUT = {
    "M11": 1, "M12": 2, "M22": 2, "M23": 1, "M24": 1,
    "J1": 1, "J2": 2, "J3": 2, "J4": 1,
    "Co1": 1, "Co2": 1, "Co3": 1, "Fi22": 2, "Fi23": 1, "Fi24'": 2,
    "HS": 2, "McL": 2, "He": 2, "Ru": 1, "Suz": 2, "O'N": 2,
    "HN": 2, "Ly": 1, "Th": 1, "B": 1, "M": 1,
}


def prime_power(q: int) -> tuple[int, int] | None:
    if q < 2:
        return None
    ps = prime_factors(q)
    if len(set(ps)) != 1:
        return None
    return ps[0], len(ps)


def fixed_rank(family_type: int) -> int | None:
    r = ROWS[family_type].rank
    return r if isinstance(r, int) else None


def rank_ok(family_type: int, n: int) -> bool:
    r = ROWS[family_type].rank
    return n == r if isinstance(r, int) else r(n)


def outer_params(family_type: int, n: int | None, q: int) -> OuterParams:
    if family_type not in ROWS:
        raise ConditionViolated(f"no table row of type {family_type}")
    row = ROWS[family_type]
    if n is None:
        n = fixed_rank(family_type)
        if n is None:
            raise ConditionViolated(f"type {family_type} needs a rank n")
    if not rank_ok(family_type, n):
        raise ConditionViolated(f"type {family_type} does not allow n={n}")
    pp = prime_power(q)
    if pp is None:
        raise ConditionViolated(f"q={q} is not a prime power")
    p, e = pp
    if row.q_prime is not None and p != row.q_prime:
        raise ConditionViolated(f"type {family_type} needs q a power of {row.q_prime}")
    if row.f_odd and e % 2 == 0:
        raise ConditionViolated(f"type {family_type} needs odd f, got q={p}^{e}")
    f = row.field_power * e
    return OuterParams(
        family_type=family_type,
        name=f"{row.label.format(n=n)}({q})",
        n=n, q=q, p=p, f=f,
        d=row.d(n, q, p),
        f_part=f,
        g_part=row.g(n, p),
        g_noncyclic=family_type == 8,
    )


def alternating_params(n: int) -> OuterParams:
    if n < 5:
        raise ConditionViolated("alternating groups are simple nonabelian only for n >= 5")
    return OuterParams("alternating", f"A{n}", n, None, None, None, 1, 1, 4 if n == 6 else 2)


def sporadic_params(name: str) -> OuterParams:
    if name not in SPORADIC_OUT:
        raise ConditionViolated(f"unknown sporadic group {name!r}")
    return OuterParams("sporadic", name, None, None, None, None, 1, 1, SPORADIC_OUT[name])


def cyclic_mod_r_verdict(params: OuterParams) -> Verdict:
    t = params.family_type
    if t == "alternating":
        # |Out| is 2 or 4, a 2-group
        return Verdict("yes", "alternating")
    if t == "sporadic":
        return Verdict("yes", "sporadic")
    if t in (5, 9, 14, 16, 20):
        return Verdict("yes", "Case 1")
    if t == 3:
        return Verdict("exception", "Case 2", 4)
    if t in (1, 6, 7, 12, 18, 19):
        return Verdict("yes", "Case 2")
    if t in (4, 13, 15):
        return Verdict("yes", "Case 3")
    if t in (10, 11):
        if params.p == 2:
            return Verdict("exception", "Case 4", 2)
        return Verdict("yes", "Case 4")
    if t == 8:
        return Verdict("exception", "Case 5", 2)
    if t == 17:
        return Verdict("exception", "Case 5", 3)
    if t == 2:
        return Verdict("exception", "Case 5", 1)
    raise ConditionViolated(f"no verdict for type {t}")


def explicit_out_spec(params: OuterParams) -> str | None:
    """Catalogue spec of Out(S) where its structure is given: D_{2(n+1,q-1)} x C_f for type 2."""
    if params.family_type != 2:
        return None
    return f"D{2 * params.d} x C{params.f_part}"


def explicit_out_group_crosscheck(params: OuterParams) -> bool | None:
    spec = explicit_out_spec(params)
    if spec is None:
        return None
    from .catalogue import construct

    return is_hypo_elementary(construct(spec))[0]


def table_rows(n_max: int = 8, q_max: int = 32, types=None, n_values=None, q_values=None) -> list[OuterParams]:
    out = []
    qs = [q for q in range(2, q_max + 1) if prime_power(q)] if q_values is None else list(q_values)
    for t in sorted(ROWS if types is None else types):
        fr = fixed_rank(t)
        if fr is not None:
            ns = [fr]
        else:
            ns = [n for n in (range(1, n_max + 1) if n_values is None else n_values) if rank_ok(t, n)]
        for n in ns:
            for q in qs:
                try:
                    out.append(outer_params(t, n, q))
                except ConditionViolated:
                    continue
    return out


TSV_COLUMNS = ("type", "name", "n", "q", "p", "f", "d", "g", "verdict", "case", "exception_item")


def tsv_row(params: OuterParams) -> str:
    v = cyclic_mod_r_verdict(params)
    g = "3!" if params.g_noncyclic else params.g_part
    cells = (params.family_type, params.name, params.n, params.q, params.p, params.f,
             params.d, g, v.verdict, v.case, f"({v.exception_item})" if v.exception_item else "")
    return "\t".join("-" if c is None else str(c) for c in cells)
