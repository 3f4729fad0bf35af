from __future__ import annotations

import dataclasses

import pytest
from hypothesis import given, settings, strategies as st

from ltsieve.model import (ALL_FIELDS, CaseRecord, FilterVerdict, IntersectionType,
                           InvalidParameterSet, Leg, LineRecord, Outcome, ParameterSet,
                           TypeStringError, canonical_type_string, case_sort_key,
                           parameter_violations, parse_type_string)
from ltsieve.tables.golden import load_golden

GOLDEN_SETS = sorted({r.parameter_set() for r in load_golden("all")}, key=case_sort_key)
CASE1 = ParameterSet.from_table(7, 13, 6, 3, 12, 6, 1, 10, 91, 1)


def test_case1_derived_fields():
    assert (CASE1.k, CASE1.v, CASE1.r, CASE1.b) == (10, 91, 10, 91)
    assert parameter_violations(CASE1.as_dict()) == []


@settings(max_examples=300)
@given(st.sampled_from(GOLDEN_SETS), st.sampled_from(ALL_FIELDS),
       st.integers(-50, 50).filter(bool))
def test_any_single_field_mutation_is_caught(p, name, delta):
    fields = p.as_dict()
    fields[name] += delta
    assert parameter_violations(fields)
    with pytest.raises(InvalidParameterSet):
        ParameterSet(**fields)


def test_violation_names_the_equation():
    fields = CASE1.as_dict()
    fields["br"] += 1
    bad = parameter_violations(fields)
    assert "gamma*br = c-1" in bad and "r = kr*br" in bad


def test_dual_of_case1_is_case4():
    assert CASE1.dual().key() == (13, 7, 3, 6, 6, 12, 1, 10, 91, 1)
    assert CASE1.dual().dual() == CASE1


def test_case_sort_key_examples():
    case2 = ParameterSet.from_table(9, 129, 48, 3, 32, 2, 3, 10, 387, 4)
    assert case_sort_key(CASE1) < case_sort_key(case2)
    assert case_sort_key(CASE1) == case_sort_key(ParameterSet(**CASE1.as_dict()))
    small = next(p for p in GOLDEN_SETS if p.key()[:4] == (441, 111, 9, 36))
    large = next(p for p in GOLDEN_SETS if p.key()[:4] == (1937, 243, 39, 312))
    assert case_sort_key(small) < case_sort_key(large)


@pytest.mark.parametrize("entries,text", [
    ({1: 14, 2: 7, 3: 14}, "1^14,2^7,3^14"),
    ({4: 1}, "4"),
    ({1: 6, 4: 1}, "1^6,4"),
])
def test_canonical_type_string(entries, text):
    assert canonical_type_string(IntersectionType.from_mapping(entries)) == text


@pytest.mark.parametrize("text,entries", [
    ("1^42,2^14", [(1, 42), (2, 14)]),
    ("3,6^2", [(3, 1), (6, 2)]),
    ("6^2,3", [(3, 1), (6, 2)]),
])
def test_parse_type_string(text, entries):
    assert sorted(parse_type_string(text)) == entries


@pytest.mark.parametrize("text,position", [
    ("2^", 2), ("", 0), ("1^0", 0), ("1^2,1^3", 4), ("1^2;3", 3), ("a", 0), ("1,,2", 2),
])
def test_parse_errors_carry_position(text, position):
    with pytest.raises(TypeStringError) as info:
        parse_type_string(text)
    assert info.value.position == position


@given(st.dictionaries(st.integers(1, 200), st.integers(1, 10**6), min_size=1, max_size=8))
def test_type_string_roundtrip(counts):
    t = IntersectionType.from_mapping(counts)
    assert IntersectionType.parse(str(t)) == t
    assert t.as_dict() == counts


def test_type_sums():
    t = IntersectionType.parse("1^14,2^7,3^14")
    assert (t.line_size, t.inner_pairs, t.classes_met) == (70, 49, 35)
    assert t.d0(49) == 14
    assert t.count(5) == 0


def test_type_violations_against_case():
    assert IntersectionType.parse("1,2^3,3").violations(CASE1) == []
    assert IntersectionType.parse("1^10").violations(CASE1)


def test_case_record_rejects_foreign_lines():
    other = CASE1.dual()
    line = LineRecord(other, IntersectionType.parse("1^4,2^3"), 1)
    with pytest.raises(ValueError):
        CaseRecord(CASE1, (line,))


def test_leg_replay_and_verdict_json():
    leg = Leg.check("p > k", 127, ">", 30)
    assert leg.holds and leg.replay()
    assert not Leg.check("7 divides 91", 7, "!|", 91).holds
    v = FilterVerdict("demo", {"p": 127}, Outcome.CONTRADICTION, (leg,))
    assert v.replayable()
    doc = v.as_json()
    assert doc["outcome"] == "Contradiction" and doc["trace"][0]["holds"] is True
    forged = dataclasses.replace(leg, holds=False)
    assert not dataclasses.replace(v, trace=(forged,)).replayable()
