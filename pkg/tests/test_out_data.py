import math
import re

import pytest
from hypothesis import given, strategies as st

from bgroups.catalogue import construct
from bgroups.errors import ConditionViolated
from bgroups.out_data import (
    ROWS,
    SPORADIC_OUT,
    alternating_params,
    cyclic_mod_r_verdict,
    explicit_out_group_crosscheck,
    explicit_out_spec,
    outer_params,
    sporadic_params,
    table_rows,
    tsv_row,
)
from bgroups.perm_core import is_hypo_elementary


def listed_exception(params):
    """The excluded Lie-type groups, read off the group's name."""
    m = re.fullmatch(r"(\d?)([A-G])(\d+)\((\d+)\)", params.name)
    twist, letter, n = m.group(1), m.group(2), int(m.group(3))
    if not twist and letter == "A" and n + 1 > 2:
        return 1
    if not twist and letter == "D" and (n == 4 or params.p == 2):
        return 2
    if not twist and letter == "E" and n == 6:
        return 3
    if twist == "2" and letter == "A" and n > 1:
        return 4
    return None


def test_param_examples():
    p = outer_params(1, None, 9)
    assert (p.d, p.f_part, p.g_part) == (2, 2, 1)
    p = outer_params(2, 2, 4)
    assert (p.d, p.f_part, p.g_part) == (3, 2, 2)
    assert outer_params(13, None, 5).g_part == 1
    assert outer_params(13, None, 9).g_part == 2
    assert outer_params(4, None, 8).g_part == 2 and outer_params(4, None, 9).g_part == 1
    assert outer_params(15, None, 4).g_part == 2
    assert outer_params(12, 4, 3).d == math.gcd(4, 3 ** 4 + 1)
    assert outer_params(3, 2, 4).f_part == 4  # q^2 = p^f
    assert outer_params(9, None, 2).f_part == 3  # q^3 = p^f
    p = outer_params(8, None, 3)
    assert p.d == 4 and p.g_part == 6 and p.g_noncyclic


@pytest.mark.parametrize("args", [(5, None, 4), (14, None, 9), (16, None, 4), (5, None, 3),
                                  (10, 5, 3), (11, 6, 3), (2, 1, 4), (6, 2, 3), (1, None, 6),
                                  (21, None, 4), (2, None, 4)])
def test_condition_violations(args):
    with pytest.raises(ConditionViolated):
        outer_params(*args)


def test_verdict_examples():
    for q in (2, 3, 4, 5, 7, 8, 9):
        v = cyclic_mod_r_verdict(outer_params(20, None, q))
        assert (v.verdict, v.case) == ("yes", "Case 1")
    v = cyclic_mod_r_verdict(outer_params(2, 2, 4))
    assert (v.verdict, v.exception_item) == ("exception", 1)
    v = cyclic_mod_r_verdict(outer_params(10, 6, 8))
    assert (v.verdict, v.exception_item) == ("exception", 2)
    assert cyclic_mod_r_verdict(outer_params(10, 6, 9)).verdict == "yes"
    assert cyclic_mod_r_verdict(alternating_params(6)).verdict == "yes"
    assert alternating_params(6).g_part == 4
    for name in SPORADIC_OUT:
        assert SPORADIC_OUT[name] in (1, 2)
        assert cyclic_mod_r_verdict(sporadic_params(name)).verdict == "yes"
    assert len(SPORADIC_OUT) == 26


def test_exception_set_matches_listed_groups():
    rows = table_rows(n_max=8, q_max=32)
    assert len(rows) > 300
    for p in rows:
        v = cyclic_mod_r_verdict(p)
        item = listed_exception(p)
        assert (v.verdict == "exception") == (item is not None), p.name
        assert v.exception_item == item


@given(st.sampled_from(sorted(ROWS)), st.integers(1, 8), st.sampled_from([2, 3, 4, 5, 7, 8, 9, 16, 27, 32]))
def test_params_positive(t, n, q):
    try:
        p = outer_params(t, n if not isinstance(ROWS[t].rank, int) else None, q)
    except ConditionViolated:
        return
    assert p.d >= 1 and p.f_part >= 1 and p.g_part >= 1
    power = ROWS[t].field_power
    assert q ** power == p.p ** p.f


def test_explicit_crosscheck():
    p = outer_params(2, 2, 4)
    assert explicit_out_spec(p) == "D6 x C2"
    G = construct(explicit_out_spec(p))
    assert G.order == 12
    assert explicit_out_group_crosscheck(p) is False
    assert is_hypo_elementary(G) == (False, None)
    # degenerate parameters: the live group is hypo-elementary but the verdict stays "exception"
    assert explicit_out_group_crosscheck(outer_params(2, 2, 2)) is True
    assert explicit_out_group_crosscheck(outer_params(2, 3, 3)) is True
    assert cyclic_mod_r_verdict(outer_params(2, 2, 2)).verdict == "exception"
    assert explicit_out_group_crosscheck(outer_params(20, None, 4)) is None


def test_crosscheck_never_contradicts_yes():
    for p in table_rows(n_max=8, q_max=32, types=[2]):
        if 2 * p.d * p.f_part > 400:
            continue
        live = explicit_out_group_crosscheck(p)
        if cyclic_mod_r_verdict(p).verdict == "yes":
            assert live


def test_tsv_row():
    row = tsv_row(outer_params(2, 2, 4)).split("\t")
    assert row == ["2", "A2(4)", "2", "4", "2", "2", "3", "2", "exception", "Case 5", "(1)"]
    row = tsv_row(outer_params(8, None, 2)).split("\t")
    assert row[7] == "3!"
