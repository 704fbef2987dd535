import pytest

from cantortopo.closed import SafetyAutomaton
from cantortopo.decomposition import DecompositionStatus, kernel_decompose
from cantortopo.transducers import Transducer, check_open, OpenStatus


def test_identity_is_one_piece(model):
    r = kernel_decompose(model.transducers["identity"])
    assert r.status == DecompositionStatus.FULLY_DECOMPOSED
    assert [stem for stem, _ in r.pieces] == [""]
    assert r.piecewise_homeomorphism


def test_embed_shift_splits_in_two(model):
    t = model.transducers["embedshift"]
    r = kernel_decompose(t)
    assert r.status == DecompositionStatus.FULLY_DECOMPOSED
    assert [stem for stem, _ in r.pieces] == ["0", "1"]
    assert r.pieces[0][1] == SafetyAutomaton.from_edges(0, {(0, "0"): 0})
    assert r.pieces[1][1] == SafetyAutomaton.cylinder("1")
    assert r.residual.is_empty() and r.pieces_open == [True, True]
    assert r.injective is False and not r.piecewise_homeomorphism
    # the pieces partition the domain
    union = r.pieces[0][1].union(r.pieces[1][1])
    assert union == t.domain


def test_injective_variant_gets_the_certificate(model):
    r = kernel_decompose(model.transducers["embinj"])
    assert r.injective and r.piecewise_homeomorphism
    assert r.status == DecompositionStatus.FULLY_DECOMPOSED


def test_nowhere_open_table_keeps_everything(model):
    m = model.tables["nowhere"]
    r = kernel_decompose(m)
    assert r.pieces == []
    assert r.residual == m.domain
    assert r.status == DecompositionStatus.RESIDUAL_REMAINS
    assert (r.nowhere.status.value, r.nowhere.depth) == ("NowhereOpenUpToDepth", 3)


def test_round_budget_caps(model):
    # a tiny scan depth can only remove whole cylinders of length 0
    r = kernel_decompose(model.transducers["embedshift"], budget_depth=0)
    assert r.status == DecompositionStatus.DEPTH_CAPPED


def test_pieces_are_open_after_the_fact(model):
    t = model.transducers["latch"]
    r = kernel_decompose(t)
    for _, piece in r.pieces:
        assert check_open(t.with_domain(piece)).status == OpenStatus.OPEN


def test_rejects_unknown_backends():
    with pytest.raises(TypeError):
        kernel_decompose(object())


def test_a_transducer_can_be_nowhere_open(model):
    # every clopen piece of the domain has a non-open image, so nothing is stripped
    t = model.transducers["scramble"]
    r = kernel_decompose(t)
    assert r.pieces == [] and r.residual == t.domain
    assert r.status == DecompositionStatus.RESIDUAL_REMAINS
    assert r.nowhere.saturated


def test_rounds_observed_on_random_maps():
    import random

    from cantortopo.samples import random_transducer

    rng = random.Random(5)
    rounds = [len(kernel_decompose(random_transducer(rng), budget_depth=6, depth_cap=8).trace) for _ in range(30)]
    # no finite example is known to need more than one round; record what we see
    assert max(rounds) == 1
