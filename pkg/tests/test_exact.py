import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from satchoice.choice import GenConfig, generate
from satchoice.exact import ImplicationGraph, Status, dpll_sat, two_sat_scc
from satchoice.formula import Formula, is_satisfying


def brute_force_sat(f: Formula) -> bool:
    clauses = f.clauses
    for bits in itertools.product((False, True), repeat=f.n):
        if all(any(bits[abs(x) - 1] == (x > 0) for x in c) for c in clauses):
            return True
    return False


def reachability_components(g: ImplicationGraph) -> list[int]:
    """SCC labels by mutual reachability (transitive closure)."""
    N = g.num_nodes
    R = np.eye(N, dtype=bool)
    for u, v in g.edges():
        R[u, v] = True
    for k in range(N):
        R |= R[:, [k]] & R[[k], :]
    same = R & R.T
    return [int(np.argmax(same[u])) for u in range(N)]


@st.composite
def cnf(draw, max_n=8, max_w=3, max_m=30):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(0, max_m))
    clauses = []
    for _ in range(m):
        w = draw(st.integers(1, min(max_w, n)))
        vs = draw(st.lists(st.integers(1, n), min_size=w, max_size=w, unique=True))
        clauses.append(tuple(v if draw(st.booleans()) else -v for v in vs))
    return Formula.from_clauses(n, clauses)


def test_dpll_small_cases():
    assert dpll_sat(Formula.from_clauses(2, [])).sat
    assert dpll_sat(Formula.from_clauses(1, [(1,), (-1,)])).status is Status.UNSAT
    # all 8 sign patterns over 3 variables: unsatisfiable
    f = Formula.from_clauses(3, [tuple(s * v for s, v in zip(signs, (1, 2, 3)))
                                 for signs in itertools.product((1, -1), repeat=3)])
    assert dpll_sat(f).status is Status.UNSAT
    r = dpll_sat(Formula.from_clauses(3, [(1, 2), (-1, 3), (-3, -2)]))
    assert r.sat and is_satisfying(Formula.from_clauses(3, [(1, 2), (-1, 3), (-3, -2)]), r.assignment)


def test_dpll_budget():
    f = generate(GenConfig(n=60, k=3, t=1, seed=3, alpha=4.3))
    r = dpll_sat(f, max_nodes=1)
    assert r.status in (Status.BUDGET_EXHAUSTED, Status.SAT, Status.UNSAT)
    full = dpll_sat(f)
    assert full.status is not Status.BUDGET_EXHAUSTED
    if r.status is Status.BUDGET_EXHAUSTED:
        assert r.assignment is None and r.nodes == 1


@settings(max_examples=300, deadline=None)
@given(cnf())
def test_dpll_matches_brute_force(f):
    r = dpll_sat(f)
    assert r.sat == brute_force_sat(f)
    if r.sat:
        assert is_satisfying(f, r.assignment)


@settings(max_examples=300, deadline=None)
@given(cnf(max_n=7, max_w=2, max_m=20))
def test_two_sat_matches_brute_force(f):
    r = two_sat_scc(f)
    assert r.sat == brute_force_sat(f)
    if r.sat:
        assert is_satisfying(f, r.assignment)


@settings(max_examples=100, deadline=None)
@given(cnf(max_n=6, max_w=2, max_m=14))
def test_scc_matches_reachability(f):
    g = ImplicationGraph.from_formula(f)
    assert g.is_skew_symmetric()
    comp, ncomp = g.components()
    ref = reachability_components(g)
    # same partition
    for u, v in itertools.combinations(range(g.num_nodes), 2):
        assert (comp[u] == comp[v]) == (ref[u] == ref[v])
    assert ncomp == len(set(ref))
    # reverse topological labels: every edge goes to an equal or smaller label
    for u, v in g.edges():
        assert comp[v] <= comp[u]


def test_implication_graph_layout():
    g = ImplicationGraph.from_formula(Formula.from_clauses(2, [(1, -2), (2,)]))
    assert ImplicationGraph.node(1) == 0 and ImplicationGraph.node(-1) == 1
    assert ImplicationGraph.literal(3) == -2
    # (1 or -2): -1 -> -2 and 2 -> 1 ; (2): -2 -> 2 twice
    assert sorted(g.edges()) == [(1, 3), (2, 0), (3, 2), (3, 2)]


def test_two_sat_rejects_wide_clauses():
    with pytest.raises(ValueError):
        two_sat_scc(Formula.from_clauses(3, [(1, 2, 3)]))


def test_two_sat_large_instance_is_fast():
    f = generate(GenConfig(n=50_000, k=2, t=1, seed=1, alpha=0.8))
    r = two_sat_scc(f)
    assert r.sat and is_satisfying(f, r.assignment)
    g = generate(GenConfig(n=50_000, k=2, t=1, seed=1, alpha=1.5))
    assert two_sat_scc(g).status is Status.UNSAT
