from __future__ import annotations

import pytest
from _oracles import tmax_descending
from hypothesis import given, settings, strategies as st

from ltsieve.itypes import (PAPER, STRICT, TypeProfile, TypeSearchLimit, enumerate_types,
                            has_feasible_type, per_point_line_counts, strict_violations,
                            subset_sums, tmax)
from ltsieve.model import IntersectionType, ParameterSet

T = IntersectionType.parse


def types_of(p, profile=STRICT):
    return {str(line.itype) for line in enumerate_types(p, profile)}


def test_table1_case1_strict(case_params):
    assert types_of(case_params[(1, 1)]) == {"1,2^3,3", "1^4,3^2", "1^6,4"}


def test_table1_case8_strict(case_params):
    assert types_of(case_params[(1, 8)]) == {"1^24,2^3", "1^27,3"}


def test_table1_case2_strict_and_paper(case_params, cases):
    p = case_params[(1, 2)]
    assert types_of(p) == {"3^6,6^2", "1^3,4^3,5^3"}
    printed = {str(r.intersection_type()) for r in cases[(1, 2)]}
    assert len(printed) == 11
    assert printed <= types_of(p, PAPER)


def test_generated_types_satisfy_the_sums(case_params):
    for ident in ((1, 1), (1, 2), (1, 8), (2, 51)):
        p = case_params[ident]
        for line in enumerate_types(p, STRICT):
            assert line.itype.line_size == p.k
            assert line.itype.inner_pairs == p.x
            assert not strict_violations(p, line.itype)
            assert line.tmax >= 1


def test_output_order_is_by_d1_then_d2(case_params):
    lines = enumerate_types(case_params[(1, 2)], PAPER)
    keys = [line.itype.sort_key() for line in lines]
    assert keys == sorted(keys)


def test_has_feasible_type(case_params):
    assert has_feasible_type(case_params[(1, 1)])


def test_guard_raises(case_params):
    tiny = TypeProfile("paper", max_solutions=3)
    with pytest.raises(TypeSearchLimit) as info:
        enumerate_types(case_params[(1, 2)], tiny)
    assert info.value.kind == "solution"


@pytest.mark.parametrize("d,b,text,expected", [
    (7, 91, "1,2^3,3", 1),
    (7, 91, "1^6,4", 7),
    (8, 3752, "2,3^4,4", 3),
    (11, 2255, "1^2,2^4", 2),
])
def test_tmax_examples(d, b, text, expected):
    assert tmax(d, b, T(text)) == expected


@settings(max_examples=300, deadline=None)
@given(st.integers(2, 40), st.integers(1, 5000),
       st.dictionaries(st.integers(1, 9), st.integers(1, 12), min_size=1, max_size=4))
def test_tmax_matches_descending_scan(d, b, counts):
    t = IntersectionType.from_mapping(counts)
    assert tmax(d, b, t) == tmax_descending(d, b, counts)


def test_subset_sums():
    assert subset_sums(T("1^2,2^4")) == {2, 4, 6}


def test_per_point_line_counts(case_params):
    p6 = case_params[(1, 6)]
    assert per_point_line_counts(p6, T("1^14,2^7,3^14")) == [(1, 24), (2, 24), (3, 72)]
    p1 = case_params[(1, 1)]
    counts = per_point_line_counts(p1, T("1,2^3,3"))
    assert counts == [(1, 1), (2, 6), (3, 3)]
    assert sum(r for _, r in counts) == p1.r


def test_strict_violation_messages(case_params):
    msgs = strict_violations(case_params[(1, 2)], T("2^9,3,9"))
    assert any(m.startswith("class budget") for m in msgs)


def test_profile_validation():
    with pytest.raises(ValueError):
        TypeProfile("loose")
    with pytest.raises(ValueError):
        TypeProfile("strict", max_solutions=0)


def test_tmax_rejects_bad_input():
    with pytest.raises(ValueError):
        tmax(1, 5, T("1"))


def test_b_equals_v_gives_r_i_equal_i_d_i():
    p = ParameterSet.from_table(7, 13, 6, 3, 12, 6, 1, 10, 91, 1)
    for line in enumerate_types(p):
        assert [(i, r) for i, r in per_point_line_counts(p, line.itype)] == \
            [(i, i * di) for i, di in line.itype.entries]
