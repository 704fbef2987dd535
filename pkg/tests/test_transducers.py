import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cantortopo.closed import SafetyAutomaton, member
from cantortopo.oracle import image_words, rel_open_words
from cantortopo.samples import random_closed, random_transducer
from cantortopo.transducers import (
    DomainViolation,
    NonProductive,
    NowhereStatus,
    OpenStatus,
    Transducer,
    bad_set,
    check_nowhere_open,
    check_open,
    eval_point,
    image_closed,
    is_injective,
    preimage_closed,
    preimage_point,
)
from cantortopo.words import Point

seeds = st.integers(0, 10**6)
lassos = st.builds(
    Point, st.text(alphabet="01", max_size=4), st.text(alphabet="01", min_size=1, max_size=3)
)


def test_evaluation(model):
    t = model.transducers
    assert eval_point(t["shift"], Point.parse("1(0)")) == Point.parse("(0)")
    assert eval_point(t["latch"], Point.parse("(10)")) == Point.parse("(1)")
    assert eval_point(t["latch"], Point.parse("001(0)")) == Point.parse("00(1)")
    assert eval_point(t["embedshift"], Point.parse("101(0)")) == Point.parse("01(0)")
    with pytest.raises(DomainViolation):
        eval_point(t["embedshift"], Point.parse("01(0)"))


def test_images_and_preimages(model):
    t = model.transducers
    assert image_closed(t["shift"], SafetyAutomaton.cylinder("11")) == SafetyAutomaton.cylinder("1")
    assert image_closed(t["latch"]).trans == ((0, 1), (None, 1))
    assert image_closed(t["embinj"]) == SafetyAutomaton.singleton(Point.parse("(0)")).union(SafetyAutomaton.cylinder("1"))
    pre = preimage_closed(t["shift"], model.closed["point0"])
    assert pre.trans == ((1, 1), (1, None))
    assert preimage_point(t["shift"], Point.parse("(0)")) == pre


def test_silent_cycles_are_rejected():
    with pytest.raises(NonProductive):
        Transducer((((0, ""), (0, "1")),), SafetyAutomaton.full())
    # a silent letter is fine when the domain forbids repeating it forever
    no00 = SafetyAutomaton.from_edges("a", {("a", "1"): "a", ("a", "0"): "b", ("b", "1"): "a"})
    Transducer((((0, ""), (0, "1")),), no00)


@pytest.mark.parametrize(
    "name,injective,witness",
    [
        ("identity", True, None),
        ("embinj", True, None),
        ("latch", False, ("1(0)", "11(0)")),
        ("shift", False, ("(0)", "1(0)")),
        ("embedshift", False, ("(0)", "1(0)")),
    ],
)
def test_injectivity(model, name, injective, witness):
    t = model.transducers[name]
    v = is_injective(t)
    assert v.injective == injective
    if witness is None:
        assert v.witness is None
    else:
        p, q = v.witness
        assert (str(p), str(q)) == witness
        assert eval_point(t, p) == eval_point(t, q)


@pytest.mark.parametrize(
    "name,status,witness",
    [
        ("identity", OpenStatus.OPEN, None),
        ("latch", OpenStatus.OPEN, None),
        ("shift", OpenStatus.OPEN, None),
        ("embinj", OpenStatus.OPEN, None),
        ("embedshift", OpenStatus.NOT_OPEN, "0"),
    ],
)
def test_openness(model, name, status, witness):
    v = check_open(model.transducers[name])
    assert (v.status, v.witness) == (status, witness)


def test_openness_witness_is_confirmed_by_word_oracle(model):
    t = model.transducers["embedshift"]
    y = image_closed(t)
    i = image_closed(t, t.domain.restrict("0"))
    assert rel_open_words(y.words_at(16), i.words_at(16), 8, 12) == {"0" * 8}
    assert bad_set(y, i).words_at(8) == {"0" * 8}


def test_nowhere_open(model):
    t = model.transducers["embedshift"]
    v = check_nowhere_open(t, t.domain)
    assert (v.status, v.witness) == (NowhereStatus.NOT_NOWHERE_OPEN, "0")
    ident = model.transducers["identity"]
    v = check_nowhere_open(ident, ident.domain)
    assert (v.status, v.witness) == (NowhereStatus.NOT_NOWHERE_OPEN, "")
    v = check_nowhere_open(ident, SafetyAutomaton.empty())
    assert v.status == NowhereStatus.NOWHERE_OPEN_UP_TO_DEPTH and v.saturated


@settings(max_examples=60, deadline=None)
@given(seeds, lassos)
def test_evaluation_matches_letterwise_output(seed, p):
    t = random_transducer(random.Random(seed))
    assume(member(p, t.domain))
    n = 12
    _, out = t.output(p.prefix(n))
    assert eval_point(t, p).prefix(len(out)) == out


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_image_matches_output_enumeration(seed):
    t = random_transducer(random.Random(seed))
    assert image_closed(t).words_at(6) == image_words(t.step, t.domain, 6, 4)


@settings(max_examples=60, deadline=None)
@given(seeds, lassos)
def test_preimage_membership(seed, p):
    rng = random.Random(seed)
    t = random_transducer(rng)
    g = random_closed(rng, 3)
    assume(member(p, t.domain))
    assert member(p, preimage_closed(t, g)) == member(eval_point(t, p), g)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_injectivity_witnesses_collide(seed):
    t = random_transducer(random.Random(seed))
    v = is_injective(t)
    if not v.injective:
        p, q = v.witness
        assert p != q and eval_point(t, p) == eval_point(t, q)
