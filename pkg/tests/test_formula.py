import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satchoice.formula import (
    DimacsError,
    Evaluation,
    Formula,
    as_assignment,
    emit_dimacs,
    evaluate,
    is_satisfying,
    model_line,
    parse_dimacs,
    positive_count,
)


def test_positive_count():
    assert positive_count((1, -2, 3)) == 2
    assert positive_count((-1, -2)) == 0


def test_formula_basics():
    f = Formula.from_clauses(4, [(1, -2, 3), (-1, 4)])
    assert f.m == 2
    assert f.density == 0.5
    assert f.clauses == [(1, -2, 3), (-1, 4)]
    assert f.widths.tolist() == [3, 2]
    assert f.positive_counts().tolist() == [2, 1]
    with pytest.raises(ValueError):
        f.lits[0] = 5


@pytest.mark.parametrize("clauses", [[(1, 1, 2)], [(1, -1)], [(0, 1)], [(5,)]])
def test_formula_rejects_bad_clauses(clauses):
    with pytest.raises(ValueError):
        Formula.from_clauses(4, clauses)


def test_evaluate_three_states():
    f = Formula.from_clauses(3, [(1, 2), (-1, 3)])
    assert evaluate(f, {1: True, 3: True}) is Evaluation.SATISFIED
    assert evaluate(f, {1: True}) is Evaluation.UNDETERMINED
    assert evaluate(f, {1: False, 2: False}) is Evaluation.UNSATISFIED
    # one clause false while another is still open is already unsatisfied
    assert evaluate(f, {1: True, 3: False}) is Evaluation.UNSATISFIED


def test_assignment_forms_agree():
    f = Formula.from_clauses(3, [(1, -2), (2, 3)])
    d = {1: True, 2: False, 3: True}
    arr = as_assignment(d, 3)
    assert arr.tolist() == [-1, 1, 0, 1]
    assert is_satisfying(f, d) and is_satisfying(f, arr)


def test_empty_formula_satisfied():
    f = Formula.from_clauses(3, [])
    assert evaluate(f, {}) is Evaluation.SATISFIED


def test_dimacs_round_trip():
    f = Formula.from_clauses(5, [(1, -2, 3), (-4, 5, -1)])
    g = parse_dimacs(emit_dimacs(f, ["hello"]))
    assert g.n == 5 and g.clauses == f.clauses


def test_dimacs_multiline_clause_and_comments():
    g = parse_dimacs("c x\np cnf 3 2\n1 -2\n3 0 -1 2 0\n")
    assert g.clauses == [(1, -2, 3), (-1, 2)]


def test_dimacs_percent_terminator():
    g = parse_dimacs("p cnf 2 1\n1 2 0\n%\n0\n")
    assert g.clauses == [(1, 2)]


@pytest.mark.parametrize("text, line", [
    ("1 2 0\n", 1),
    ("p cnf 2 1\np cnf 2 1\n1 2 0\n", 2),
    ("p cnf 2 1\n1 3 0\n", 2),
    ("p cnf 2 1\n1 1 0\n", 2),
    ("p cnf 2 2\n1 0\n0\n", 3),
    ("p cnf 2 1\n1 2\n", 2),
    ("p cnf 2 2\n1 2 0\n", None),
    ("p cnf 2 1\n1 x 0\n", 2),
])
def test_dimacs_errors_carry_line(text, line):
    with pytest.raises(DimacsError) as e:
        parse_dimacs(text)
    assert e.value.lineno == line


def test_model_line():
    assert model_line({1: True, 2: False}, 3) == "v 1 -2 -3 0"


@st.composite
def formulas(draw):
    n = draw(st.integers(2, 8))
    m = draw(st.integers(0, 10))
    clauses = []
    for _ in range(m):
        w = draw(st.integers(1, min(3, n)))
        vs = draw(st.lists(st.integers(1, n), min_size=w, max_size=w, unique=True))
        clauses.append(tuple(v if draw(st.booleans()) else -v for v in vs))
    return Formula.from_clauses(n, clauses)


@settings(max_examples=100, deadline=None)
@given(formulas(), st.randoms())
def test_evaluate_matches_clause_by_clause(f, rnd):
    vals = {v: rnd.choice([True, False, None]) for v in range(1, f.n + 1)}
    vals = {v: b for v, b in vals.items() if b is not None}

    def lit(x):
        b = vals.get(abs(x))
        return None if b is None else (b if x > 0 else not b)

    states = [[lit(x) for x in c] for c in f.clauses]
    if all(any(s is True for s in c) for c in states):
        expect = Evaluation.SATISFIED
    elif any(all(s is False for s in c) for c in states):
        expect = Evaluation.UNSATISFIED
    else:
        expect = Evaluation.UNDETERMINED
    assert evaluate(f, vals) is expect


@settings(max_examples=50, deadline=None)
@given(formulas())
def test_dimacs_round_trip_property(f):
    g = parse_dimacs(emit_dimacs(f))
    assert g.n == f.n and g.clauses == f.clauses
