from __future__ import annotations

import pytest
from _oracles import brute_force_cases

from ltsieve.enumerator import (EnumerationResult, Rejection, SearchCell, build_parameter_set,
                                candidate_moduli, enumerate, enumerate_cases,
                                fundamental_equation_check, solve)
from ltsieve.model import ParameterSet, parameter_violations

KMAX = 60
KR_RANGE = range(2, 21)


def test_fundamental_equation_examples(case_params):
    assert fundamental_equation_check(case_params[(1, 1)])
    p9 = case_params[(1, 9)]
    assert (p9.gamma, p9.delta, p9.br, p9.k) == (4, 14, 12, 70)
    assert fundamental_equation_check(p9)


def test_fundamental_equation_fails_on_mutation(case_params):
    fields = case_params[(1, 1)].as_dict()
    fields["br"] += 1
    # bypass validation on purpose to exercise the check itself
    mutated = object.__new__(ParameterSet)
    for name, value in fields.items():
        object.__setattr__(mutated, name, value)
    assert not fundamental_equation_check(mutated)


def test_candidate_moduli_example():
    cell = SearchCell(1, 1, 9)
    assert (cell.A, cell.P, cell.N) == (11, 1, 1100)
    moduli = candidate_moduli(cell, 9)
    survivors = [m for m in moduli if build_parameter_set(9, 1, 1, m)]
    assert survivors == [2, 4, 10, 20, 50, 100]


def test_search_cell_bounds():
    with pytest.raises(ValueError):
        SearchCell(0, 1, 9)
    with pytest.raises(ValueError):
        SearchCell(9, 9, 9)


def test_build_parameter_set_examples():
    p = build_parameter_set(10, 12, 6, 1)
    assert isinstance(p, ParameterSet)
    assert (p.d, p.c, p.x, p.y, p.br, p.v, p.r, p.b) == (7, 13, 6, 3, 1, 91, 10, 91)
    p = build_parameter_set(9, 1, 1, 2)
    assert (p.d, p.c, p.x, p.y) == (152, 152, 1, 1)
    assert p.br == 151 and p.b == 11552 * 151


def test_build_parameter_set_rejection():
    rej = build_parameter_set(9, 1, 1, 6)
    assert isinstance(rej, Rejection) and not rej
    assert rej.constraint == "b integral"


def test_enumerate_10_contains_case1_and_dual(case_params):
    keys = {p.key() for p in enumerate(10)}
    assert (7, 13, 6, 3, 12, 6, 1, 10, 91, 1) in keys
    assert (13, 7, 3, 6, 6, 12, 1, 10, 91, 1) in keys
    table1 = {p.key() for (t, _), p in case_params.items() if t == 1}
    assert table1 <= keys


def test_enumerate_9_contains_table2(case_params):
    table2 = {p.key() for (t, _), p in case_params.items() if t == 2}
    assert len(table2) == 106
    assert table2 <= {p.key() for p in enumerate(9)}


def test_enumerate_is_sorted_and_sound():
    cases = enumerate(9)
    assert [p.key() for p in cases] == sorted(p.key() for p in cases)
    for p in cases:
        assert not parameter_violations(p.as_dict())
        assert fundamental_equation_check(p)


def test_dropped_cases_have_no_type():
    res = enumerate_cases(9)
    assert isinstance(res, EnumerationResult)
    assert not res.unresolved
    assert len(res.cases) + len(res.dropped) == len(solve(9))


def test_r_at_least_k():
    assert all(p.r >= p.k for p in solve(2))


def test_kr_must_be_at_least_2():
    with pytest.raises(ValueError):
        solve(1)


@pytest.fixture(scope="module")
def brute():
    return brute_force_cases(KMAX)


def test_bruteforce_equivalence(brute):
    for kr in KR_RANGE:
        expected = {t for t in brute if t[7] == kr}
        got = {p.key() for p in solve(kr) if p.k <= KMAX}
        assert got == expected, kr


def test_bruteforce_covers_duality(brute):
    # the model is symmetric under (d,c,x,y,gamma,delta) <-> (c,d,y,x,delta,gamma)
    for t in brute:
        d, c, x, y, g, e, *rest = t
        assert (c, d, y, x, e, g, *rest) in brute


def test_duality_in_enumeration():
    keys = {p.key() for p in solve(10)}
    for p in solve(10):
        assert p.dual().key() in keys
