import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cantortopo.closed import (
    BudgetExceeded,
    SafetyAutomaton,
    brute_words,
    cb_derivative,
    member,
    perfect_kernel,
    thin_states,
)
from cantortopo.samples import random_closed
from cantortopo.words import ClopenSet, Point, all_words

seeds = st.integers(0, 10**6)

# two ones at most, in any positions: Cantor-Bendixson rank 3
TWO_ONES = SafetyAutomaton.from_edges(0, {(0, "0"): 0, (0, "1"): 1, (1, "0"): 1, (1, "1"): 2, (2, "0"): 2})


def test_constructors_are_canonical():
    assert SafetyAutomaton.full().trans == ((0, 0),)
    assert SafetyAutomaton.empty().trans == ()
    # unreachable and dead states vanish; state names do not matter
    a = SafetyAutomaton.from_edges("x", {("x", "0"): "y", ("y", "0"): "y", ("x", "1"): "dead"})
    assert a.trans == ((0, None),)
    assert a == SafetyAutomaton.singleton(Point.parse("(0)"))


def test_membership_on_corpus(model):
    comb = model.closed["comb"]
    assert member(Point.parse("0001(0)"), comb)
    assert member(Point.parse("(0)"), comb)
    assert not member(Point.parse("1(1)"), comb)
    assert member(Point.parse("(01)"), model.closed["no11"])
    assert not member(Point.parse("0(110)"), model.closed["no11"])


def test_cylinder_and_clopen():
    c = SafetyAutomaton.from_clopen(ClopenSet(["0", "11"]))
    assert c.words_at(2) == {"00", "01", "11"}
    assert SafetyAutomaton.cylinder("").is_full()


@pytest.mark.parametrize(
    "name,rank,countable",
    [("full", 0, False), ("empty", 0, True), ("no11", 0, False), ("point0", 1, True), ("comb", 2, True)],
)
def test_kernel_on_corpus(model, name, rank, countable):
    _, r, c = perfect_kernel(model.closed[name])
    assert (r, c) == (rank, countable)


def test_kernel_frozen_values():
    kernel, rank, countable = perfect_kernel(TWO_ONES)
    assert (kernel.is_empty(), rank, countable) == (True, 3, True)
    mixed = TWO_ONES.union(SafetyAutomaton.cylinder("11"))
    kernel, rank, countable = perfect_kernel(mixed)
    assert kernel == SafetyAutomaton.cylinder("11")
    assert (rank, countable) == (3, False)


def test_kernel_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        perfect_kernel(TWO_ONES, budget=1)


def test_thin_states():
    comb = SafetyAutomaton.from_edges(0, {(0, "0"): 0, (0, "1"): 1, (1, "0"): 1})
    assert thin_states(comb) == {1}


@settings(max_examples=60, deadline=None)
@given(seeds, seeds)
def test_boolean_ops_match_prefix_sets(s1, s2):
    f = random_closed(random.Random(s1), 3)
    g = random_closed(random.Random(s2), 3)
    for k in range(6):
        assert f.intersect(g).words_at(k) <= brute_words(f, k) & brute_words(g, k)
        assert f.union(g).words_at(k) == brute_words(f, k) | brute_words(g, k)
    # a common word longer than the product size extends to a common point
    deep = 4 + 3 * 3 + 1
    common = {w[:4] for w in f.words_at(deep) & g.words_at(deep)}
    assert f.intersect(g).words_at(4) == common


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_derivative_removes_exactly_isolated_points(seed):
    f = random_closed(random.Random(seed), 5)
    d = cb_derivative(f)
    assert d.subset_of(f)
    n = f.num_states
    for k in range(5):
        for u in f.words_at(k):
            around = f.restrict(u)
            if d.has_prefix(u):
                # a non-isolated point has a second point within n more letters
                assert len(around.words_at(k + n + 1)) >= 2
            else:
                assert perfect_kernel(around)[2]


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_words_at_is_prefix_closed(seed):
    f = random_closed(random.Random(seed), 6)
    for k in range(1, 7):
        assert {w[:-1] for w in f.words_at(k)} == f.words_at(k - 1) or f.is_empty()


def test_text_round_trip_preserves_equality(model):
    from cantortopo.spec_format import parse_spec

    for name, f in model.closed.items():
        assert parse_spec(f.to_text(name)).closed[name] == f


def test_all_words_count():
    assert len(list(all_words(5))) == 32
