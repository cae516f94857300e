import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from satchoice.analysis import positive_profile
from satchoice.choice import (
    CHUNK,
    ChoiceRule,
    GenConfig,
    choose,
    generate,
    random_clause,
    random_clauses,
    reduce_formula,
    reduce_most_positive,
    subformula_in_U,
)
from satchoice.formula import Formula
from satchoice.sweep import profile_check


def test_rule_parse_and_str():
    assert ChoiceRule.parse("most-positive") == ChoiceRule.most_positive()
    assert ChoiceRule.parse("uniform") == ChoiceRule.uniform()
    r = ChoiceRule.parse("subcube:0.9")
    assert r == ChoiceRule.subcube(0.9) and ChoiceRule.parse(str(r)) == r
    assert r.subcube_size(100) == 90
    for bad in ("subcube:0", "subcube:1.5", "subcube:x", "best"):
        with pytest.raises(ValueError):
            ChoiceRule.parse(bad)


def test_genconfig_round_trip_and_validation():
    cfg = GenConfig(n=50, k=3, t=2, rule="subcube:0.5", seed=9, alpha=2.5)
    assert GenConfig.from_json(cfg.to_json()) == cfg
    assert cfg.num_clauses == 125
    assert set(cfg.to_dict()) == {"n", "k", "t", "rule", "seed", "m", "alpha"}
    with pytest.raises(ValueError):
        GenConfig(n=5, k=3, m=3, alpha=1.0)
    with pytest.raises(ValueError):
        GenConfig(n=2, k=3, m=3)
    with pytest.raises(ValueError):
        GenConfig.from_dict({"n": 5, "k": 3, "m": 2, "extra": 1})


def test_random_clauses_distinct_and_uniform():
    rng = np.random.default_rng(1)
    n, k = 7, 3
    arr = random_clauses(n, k, 60_000, rng)
    v = np.abs(arr)
    assert np.all((v >= 1) & (v <= n))
    assert np.all(np.sort(v, axis=1)[:, 1:] != np.sort(v, axis=1)[:, :-1])
    # every unordered variable set is equally likely
    sets = Counter(map(tuple, np.sort(v, axis=1).tolist()))
    assert len(sets) == math.comb(n, k)
    assert stats.chisquare(list(sets.values())).pvalue > 1e-3
    assert abs((arr > 0).mean() - 0.5) < 0.01
    # each position is uniform over variables
    for i in range(k):
        assert stats.chisquare(np.bincount(v[:, i], minlength=n + 1)[1:]).pvalue > 1e-3


def test_random_clause_k_equals_n():
    c = random_clause(4, 4, np.random.default_rng(0))
    assert sorted(map(abs, c)) == [1, 2, 3, 4]


def test_choose_most_positive_and_ties():
    rng = np.random.default_rng(2)
    cands = [(1, -2, -3), (1, 2, -3), (-1, 2, 3), (-1, -2, -3)]
    picks = Counter(choose(cands, ChoiceRule.most_positive(), rng) for _ in range(4000))
    assert set(picks) == {(1, 2, -3), (-1, 2, 3)}
    assert stats.chisquare(list(picks.values())).pvalue > 1e-3


def test_choose_uniform_takes_first():
    rng = np.random.default_rng(3)
    assert choose([(-1, -2), (1, 2)], ChoiceRule.uniform(), rng) == (-1, -2)


def test_choose_subcube():
    rng = np.random.default_rng(4)
    rule = ChoiceRule.subcube(0.5)
    assert choose([(9, 10), (1, -2), (3, 10)], rule, rng, n=10) == (1, -2)
    with pytest.raises(ValueError):
        choose([(1, 2)], rule, rng)
    with pytest.raises(ValueError):
        choose([], rule, rng, n=10)


def test_generate_deterministic_across_chunks():
    cfg = GenConfig(n=1000, k=3, t=2, seed=11, m=CHUNK + 500)
    f, g = generate(cfg), generate(cfg)
    assert f.m == CHUNK + 500 and np.array_equal(f.lits, g.lits)
    h = generate(GenConfig(n=1000, k=3, t=2, seed=12, m=CHUNK + 500))
    assert not np.array_equal(f.lits, h.lits)
    # whole blocks are unchanged by generating more clauses
    short = generate(GenConfig(n=1000, k=3, t=2, seed=11, m=CHUNK + 10))
    assert np.array_equal(short.lits[: 3 * CHUNK], f.lits[: 3 * CHUNK])


@pytest.mark.parametrize("k,t", [(3, 1), (3, 2), (4, 2), (3, 3), (5, 4)])
def test_generated_profile_matches(k, t):
    f = generate(GenConfig(n=2000, k=k, t=t, seed=5, m=100_000))
    _, p = profile_check(f.positive_counts(), positive_profile(k, t))
    assert p > 1e-3


def test_uniform_rule_is_unbiased():
    f = generate(GenConfig(n=500, k=3, t=4, rule="uniform", seed=6, m=50_000))
    binom = [math.comb(3, j) / 8 for j in range(4)]
    assert profile_check(f.positive_counts(), binom)[1] > 1e-3


def test_subcube_rule_rate():
    n, k, t, a = 200, 3, 2, 0.5
    f = generate(GenConfig(n=n, k=k, t=t, rule=ChoiceRule.subcube(a), seed=7, m=40_000))
    inside = np.all(np.abs(f.as_array()) <= 100, axis=1).mean()
    q1 = math.comb(100, k) / math.comb(n, k)
    expect = 1 - (1 - q1) ** t
    assert abs(inside - expect) < 4 * math.sqrt(expect * (1 - expect) / f.m)
    sub = subformula_in_U(f, a)
    assert sub.n == 100 and sub.m == round(inside * f.m)


def test_reduce_keeps_positives_and_order():
    rng = np.random.default_rng(8)
    assert reduce_most_positive((-4, 1, -2, 3), 2, rng) == (1, 3)
    counts = Counter(reduce_most_positive((1, -2, -3, -4), 2, rng) for _ in range(6000))
    assert set(counts) == {(1, -2), (1, -3), (1, -4)}
    assert stats.chisquare(list(counts.values())).pvalue > 1e-3
    counts = Counter(reduce_most_positive((5, 6, 7), 2, rng) for _ in range(6000))
    assert set(counts) == {(5, 6), (5, 7), (6, 7)}
    assert stats.chisquare(list(counts.values())).pvalue > 1e-3


def test_reduce_formula_matches_capped_profile():
    f = generate(GenConfig(n=3000, k=3, t=3, seed=9, m=100_000))
    g = reduce_formula(f, 2, np.random.default_rng(10))
    assert g.widths.max() == 2
    assert profile_check(g.positive_counts(), positive_profile(3, 3, 2))[1] > 1e-3
    # every reduced clause is a sub-clause of its source
    a, b = f.as_array(), g.as_array()
    assert all(set(b[i]) <= set(a[i]) for i in range(0, f.m, 997))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 20), min_size=1, max_size=6, unique=True), st.data())
def test_reduce_property(vars_, data):
    clause = tuple(v if data.draw(st.booleans()) else -v for v in vars_)
    ell = data.draw(st.integers(1, len(clause)))
    out = reduce_most_positive(clause, ell, np.random.default_rng(data.draw(st.integers(0, 999))))
    assert len(out) == ell
    assert [x for x in clause if x in out] == list(out)
    assert sum(x > 0 for x in out) == min(ell, sum(x > 0 for x in clause))


def test_reduce_rejects_bad_ell():
    with pytest.raises(ValueError):
        reduce_most_positive((1, 2), 3, np.random.default_rng())
    with pytest.raises(ValueError):
        reduce_formula(Formula.from_clauses(3, [(1, 2, 3)]), 0, np.random.default_rng())
