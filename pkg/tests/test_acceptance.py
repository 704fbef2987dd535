"""Acceptance criteria 1-10, one PASS/FAIL line each in the terminal summary.

Run on its own with ``pytest tests/test_acceptance.py -v``.
"""

import os
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest
from conftest import record

from cantortopo.closed import SafetyAutomaton
from cantortopo.corpus import battery
from cantortopo.decomposition import DecompositionStatus, kernel_decompose
from cantortopo.hset import ConstructionObstructed, check_h_conditions, construct_d, generate_h, verify_d
from cantortopo.omega import RegSet
from cantortopo.oracle import compare_all_depths, oracle_eval
from cantortopo.resolvability import Status, check_resolvable, derivative
from cantortopo.samples import (
    random_clopen,
    random_closed,
    random_nonempty_closed,
    random_regset,
    random_transducer,
)
from cantortopo.transducers import NowhereStatus, OpenStatus, check_open, image_closed, is_injective

SEED = 20240601
START = time.perf_counter()


def test_criterion_01_closed_and_clopen_sets_are_resolvable():
    rng = random.Random(SEED + 1)
    closed_ok = 0
    for _ in range(100):
        v = check_resolvable(RegSet.from_closed(random_closed(rng, 6)), budget=50)
        closed_ok += v.status == Status.RESOLVABLE
    clopen_ok = 0
    for _ in range(100):
        v = check_resolvable(RegSet.from_clopen(random_clopen(rng, 8)), budget=50)
        clopen_ok += v.status == Status.RESOLVABLE and v.steps == 1
    ok = closed_ok == 100 and clopen_ok == 100
    record(1, ok, f"closed resolvable {closed_ok}/100, clopen resolvable in one step {clopen_ok}/100")
    assert ok


def test_criterion_02_finitely_many_ones_is_not_resolvable(model):
    e = model.regsets["Efin1"]
    v = check_resolvable(e)
    full = SafetyAutomaton.full()
    ok = v.status == Status.NOT_RESOLVABLE and v.steps == 1 and v.witness == full and derivative(e, full, full) == full
    record(2, ok, f"status={v.status.value} steps={v.steps} witness_is_C={v.witness == full}")
    assert ok


def test_criterion_03_complement_symmetry():
    rng = random.Random(SEED + 3)
    same = 0
    for _ in range(50):
        e = random_regset(rng, 8)
        a, b = check_resolvable(e), check_resolvable(e.complement())
        same += (a.status, a.steps) == (b.status, b.steps)
    record(3, same == 50, f"identical verdicts for E and its complement {same}/50")
    assert same == 50


def _oracle_bad_words(t, stem):
    y = image_closed(t)
    piece = image_closed(t, t.domain.restrict(stem))
    return oracle_eval("rel_open", 8, y=y, i=piece)


def test_criterion_04_openness_verdicts(model):
    t = model.transducers
    got = {name: check_open(t[name]) for name in ("identity", "latch", "embedshift")}
    verdicts_ok = (
        got["identity"].status == OpenStatus.OPEN
        and got["latch"].status == OpenStatus.OPEN
        and (got["embedshift"].status, got["embedshift"].witness) == (OpenStatus.NOT_OPEN, "0")
    )
    # the oracle sees no bad prefix for any piece of an open map, and one for the witness
    confirmed = True
    for name in ("identity", "latch"):
        for stem in sorted(t[name].domain.words_at(3) | t[name].domain.words_at(2) | {""}):
            if _oracle_bad_words(t[name], stem):
                confirmed = False
    confirmed = confirmed and bool(_oracle_bad_words(t["embedshift"], "0"))
    ok = verdicts_ok and confirmed
    detail = ", ".join(f"{n}={v.status.value}" + (f"@{v.witness}" if v.witness is not None else "") for n, v in got.items())
    record(4, ok, f"{detail}; depth-8 oracle confirms={confirmed}")
    assert ok


def test_criterion_05_decomposition(model):
    emb = kernel_decompose(model.transducers["embedshift"])
    ident = kernel_decompose(model.transducers["identity"])
    table = model.tables["nowhere"]
    tab = kernel_decompose(table)
    ok = (
        len(emb.pieces) == 2
        and emb.residual.is_empty()
        and emb.pieces_open == [True, True]
        and len(ident.pieces) == 1
        and tab.pieces == []
        and tab.residual == table.domain
        and tab.nowhere.status == NowhereStatus.NOWHERE_OPEN_UP_TO_DEPTH
        and tab.nowhere.depth == 3
    )
    record(
        5,
        ok,
        f"embed-shift pieces={len(emb.pieces)} residual_empty={emb.residual.is_empty()}; identity pieces={len(ident.pieces)}; "
        f"table pieces={len(tab.pieces)} residual={len(tab.residual)}/{len(table.domain)} {tab.nowhere.status.value}({tab.nowhere.depth})",
    )
    assert ok


def test_criterion_06_piecewise_homeomorphism(model):
    t = model.transducers["embinj"]
    inj = is_injective(t)
    r = kernel_decompose(t)
    ok = inj.status == "Injective" and r.piecewise_homeomorphism and r.status == DecompositionStatus.FULLY_DECOMPOSED
    record(6, ok, f"injectivity={inj.status} certificate={r.piecewise_homeomorphism}")
    assert ok


def test_criterion_07_h_family():
    h = generate_h(4, 6)
    r = check_h_conditions(h)
    exact = all(isinstance(h.base(i, i[0]).diameter(), Fraction) for i in h.indices() if i)
    ok = r.a and r.b and r.c and r.no_isolated and r.points == 1554 and exact
    record(7, ok, f"points={r.points} a'={r.a} b={r.b} c={r.c} no_isolated={r.no_isolated} exact_rationals={exact}")
    assert ok


def test_criterion_08_finite_stage_construction(model):
    table = model.tables["nowhere"]
    c = construct_d(table, N=2, d=3)
    r = verify_d(c, table)
    try:
        construct_d(model.transducers["identity"], N=2, d=3)
        obstructed = False
    except ConstructionObstructed:
        obstructed = True
    ok = r.discrete and r.dense and r.codense and obstructed
    record(8, ok, f"D points={len(c.d_points)} discrete={r.discrete} dense={r.dense} codense={r.codense}; identity obstructed={obstructed}")
    assert ok


def _random_oracle_jobs(rng, per_kind=40):
    jobs = []
    for n in range(per_kind):
        jobs.append(("closure", {"e": random_regset(rng, 6)}))
    for n in range(per_kind):
        jobs.append(("empty", {"e": random_regset(rng, 8)} if n % 2 else {"f": random_closed(rng, 6)}))
    for n in range(per_kind):
        jobs.append(("image", {"t": random_transducer(rng)}))
    for n in range(per_kind):
        f = random_nonempty_closed(rng, 2)
        jobs.append(("derivative", {"e": random_regset(rng, 2), "f": f, "ambient": f}))
    for n in range(per_kind):
        y = random_nonempty_closed(rng, 2)
        jobs.append(("rel_open", {"y": y, "i": y.intersect(random_closed(rng, 2))}))
    return jobs


def test_criterion_09_oracle_equivalence(model):
    jobs = [(kind, inputs) for _, kind, inputs in battery(model)]
    corpus = len(jobs)
    jobs += _random_oracle_jobs(random.Random(SEED + 9))
    failures = []
    for kind, inputs in jobs:
        for report in compare_all_depths(kind, 8, **inputs):
            if not report.agree:
                failures.append(report.line())
    ok = not failures
    record(9, ok, f"{corpus} corpus + {len(jobs) - corpus} random queries, depths 0..8, disagreements={len(failures)}")
    assert ok, failures[:5]


CLI_RUNS = [
    ["resolvable", "--set", "regset:Efin1"],
    ["closure", "--set", "set:fin1_in_11", "--emit"],
    ["cbderiv", "--closed", "comb"],
    ["kernel", "--closed", "comb"],
    ["image", "--map", "latch", "--emit"],
    ["preimage", "--map", "shift", "--closed", "point0"],
    ["injective", "--map", "latch"],
    ["open-check", "--map", "embedshift"],
    ["nowhere-open", "--map", "nowhere"],
    ["decompose", "--map", "embedshift"],
    ["gen-h", "--k", "3", "--i", "4"],
    ["check-h"],
    ["d-construct", "--map", "nowhere"],
    ["verify-d", "--map", "nowhere"],
    ["oracle-check"],
]


def _cli(args, stdin, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    res = subprocess.run([sys.executable, "-m", "cantortopo", *args], input=stdin, capture_output=True, env=env, check=False)
    return res.returncode, res.stdout


def test_criterion_10_cli_determinism():
    h_text = _cli(["gen-h", "--k", "3", "--i", "4"], b"", 0)[1]
    d_text = _cli(["d-construct", "--map", "nowhere"], b"", 0)[1]
    stdin = {"check-h": h_text, "verify-d": d_text}
    differing = []
    for args in CLI_RUNS:
        first = _cli(args, stdin.get(args[0], b""), 1)
        second = _cli(args, stdin.get(args[0], b""), 2)
        if first != second or not first[1]:
            differing.append(args[0])
    ok = not differing
    elapsed = time.perf_counter() - START
    record(10, ok, f"{len(CLI_RUNS)} commands run twice, differing={differing or 'none'} (suite {elapsed:.1f}s)")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
