import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from permcount.errors import (
    BadPermutation,
    DimacsSyntaxError,
    HeaderMismatch,
    NotPnPlanarInput,
    TautologicalClause,
    TooManyVariables,
    VarOutOfRange,
)
from permcount.formulas import (
    FIGURE7_FORMULA,
    CnfFormula,
    check_pn_faces,
    count_sat_brute,
    find_model_brute,
    incidence_graph,
    is_forest_formula,
    parse_dimacs,
    pn_incidence_graph,
    random_3cnf,
    random_forest_formula,
    random_unsat_forest_formula,
    substitute,
    substitute_many,
    write_dimacs,
)
from permcount.planarity import is_planar


def _count_loop(f):
    free = f.free_vars()
    total = 0
    for bits in itertools.product([False, True], repeat=len(free)):
        a = [False] * f.var_count
        for v, b in f.fixed:
            a[v - 1] = b
        for v, b in zip(free, bits):
            a[v - 1] = b
        total += f.satisfied_by(a)
    return total


def test_parse_basic():
    f = parse_dimacs("c hello\np cnf 3 2\n1 -2 0\n2 3\n0\n%\n0\n")
    assert f.var_count == 3 and f.clauses == ((1, -2), (2, 3))
    assert parse_dimacs("p cnf 2 1\n1 1 2 0\n").clauses == ((1, 2),)
    assert parse_dimacs("p cnf 0 0\n").var_count == 0


def test_parse_errors_carry_position():
    with pytest.raises(DimacsSyntaxError) as exc:
        parse_dimacs("p cnf 2 1\n1 x 0\n")
    assert (exc.value.line, exc.value.column) == (2, 3)
    with pytest.raises(DimacsSyntaxError):
        parse_dimacs("1 2 0\n")
    with pytest.raises(DimacsSyntaxError):
        parse_dimacs("p dnf 2 1\n1 0\n")
    with pytest.raises(DimacsSyntaxError):
        parse_dimacs("")
    with pytest.raises(HeaderMismatch):
        parse_dimacs("p cnf 2 2\n1 0\n")
    with pytest.raises(HeaderMismatch):
        parse_dimacs("p cnf 2 1\n3 0\n")
    with pytest.raises(TautologicalClause):
        parse_dimacs("p cnf 2 1\n1 -1 0\n")


def test_write_round_trip():
    rng = random.Random(51)
    for _ in range(30):
        f = random_3cnf(rng, rng.randint(1, 8), rng.randint(0, 8))
        assert parse_dimacs(write_dimacs(f)) == f


def test_formula_validation():
    with pytest.raises(VarOutOfRange):
        CnfFormula.of(2, [(3,)])
    with pytest.raises(TautologicalClause):
        CnfFormula.of(2, [(1, -1)])
    with pytest.raises(ValueError):
        CnfFormula.of(-1, [])


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_count_matches_loop(seed):
    rng = random.Random(seed)
    f = random_3cnf(rng, rng.randint(1, 7), rng.randint(0, 9))
    assert count_sat_brute(f) == _count_loop(f)


def test_counts_known():
    assert count_sat_brute(CnfFormula.of(3, [(1, 2, 3)])) == 7
    assert count_sat_brute(CnfFormula.of(1, [(1,), (-1,)])) == 0
    assert count_sat_brute(CnfFormula.of(2, [])) == 4
    assert count_sat_brute(FIGURE7_FORMULA) == _count_loop(FIGURE7_FORMULA)
    with pytest.raises(TooManyVariables):
        count_sat_brute(CnfFormula.of(30, []))


def test_substitution():
    f = CnfFormula.of(3, [(1, 2), (-1, 3)])
    g = substitute(f, 1, True)
    assert g.clauses == ((3,),) and g.fixed == ((1, True),)
    assert g.free_vars() == [2, 3]
    assert count_sat_brute(g) == 2  # x3 forced, x2 free
    # fixing an already fixed variable the other way makes it unsatisfiable
    assert substitute(g, 1, False).has_empty_clause()
    assert substitute(g, 1, True) == g
    h = substitute_many(f, {1: False, 2: False})
    assert h.has_empty_clause() and count_sat_brute(h) == 0
    with pytest.raises(VarOutOfRange):
        substitute(f, 4, True)


def test_substitution_counts_split():
    rng = random.Random(52)
    for _ in range(40):
        f = random_3cnf(rng, rng.randint(1, 7), rng.randint(0, 8))
        v = rng.randint(1, f.var_count)
        assert count_sat_brute(substitute(f, v, True)) + count_sat_brute(substitute(f, v, False)) == count_sat_brute(f)


def test_find_model():
    f = CnfFormula.of(2, [(1,), (2,)])
    assert find_model_brute(f).v_line() == "v 1 2 0"
    assert find_model_brute(CnfFormula.of(1, [(1,), (-1,)])) is None


def test_incidence_and_forest():
    f = CnfFormula.of(3, [(1, 2), (2, 3)])
    g = incidence_graph(f)
    assert g.node_count == 5 and set(g.edges) == {(0, 3), (1, 3), (1, 4), (2, 4)}
    assert is_forest_formula(f)
    assert not is_forest_formula(CnfFormula.of(2, [(1, 2), (-1, -2)]))
    assert not is_forest_formula(FIGURE7_FORMULA)


def test_random_generators():
    rng = random.Random(53)
    for _ in range(50):
        n = rng.randint(1, 12)
        f = random_forest_formula(rng, n)
        assert is_forest_formula(f) and f.is_3cnf()
        assert f.occurring_vars() == list(range(1, n + 1))
        u = random_unsat_forest_formula(rng, n)
        assert is_forest_formula(u) and count_sat_brute(u) == 0


def test_pn_structure():
    f = FIGURE7_FORMULA
    assert is_planar(pn_incidence_graph(f, [1, 2, 3, 4, 5, 6]))
    with pytest.raises(BadPermutation):
        pn_incidence_graph(f, [1, 2, 3])
    check_pn_faces(f, {0: 1, 1: 1, 2: 2, 3: 1})
    with pytest.raises(NotPnPlanarInput):
        check_pn_faces(f, {0: 1, 1: 1, 2: 1, 3: 1})  # x1 positive and negative on face 1
    with pytest.raises(NotPnPlanarInput):
        check_pn_faces(f, {0: 1})
