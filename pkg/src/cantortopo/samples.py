"""Seeded random instances for property tests, the acceptance suite and the survey scripts."""

from __future__ import annotations

import random

from .closed import SafetyAutomaton
from .omega import FALSE, TRUE, RegSet, inf
from .transducers import NonProductive, Transducer
from .words import ClopenSet


def random_closed(rng: random.Random, max_states: int = 6, p_missing: float = 0.3) -> SafetyAutomaton:
    n = rng.randint(1, max_states)
    edges = {}
    for q in range(n):
        for a in "01":
            if rng.random() >= p_missing:
                edges[q, a] = rng.randrange(n)
    return SafetyAutomaton.from_edges(0, edges)


def random_nonempty_closed(rng: random.Random, max_states: int = 6) -> SafetyAutomaton:
    while True:
        f = random_closed(rng, max_states)
        if not f.is_empty():
            return f


def random_clopen(rng: random.Random, max_stems: int = 8, max_len: int = 5) -> ClopenSet:
    stems = []
    for _ in range(rng.randint(0, max_stems)):
        n = rng.randint(0, max_len)
        stems.append("".join(rng.choice("01") for _ in range(n)))
    return ClopenSet(stems)


def random_formula(rng: random.Random, n: int, depth: int = 2):
    if depth == 0 or rng.random() < 0.3:
        r = rng.random()
        if r < 0.05:
            return TRUE
        if r < 0.1:
            return FALSE
        return inf(rng.randrange(n))
    op = rng.choice(["and", "or", "not"])
    if op == "not":
        return ("not", random_formula(rng, n, depth - 1))
    return (op, random_formula(rng, n, depth - 1), random_formula(rng, n, depth - 1))


def random_regset(rng: random.Random, max_states: int = 8) -> RegSet:
    n = rng.randint(1, max_states)
    trans = tuple((rng.randrange(n), rng.randrange(n)) for _ in range(n))
    return RegSet(trans, random_formula(rng, n))


def random_transducer(rng: random.Random, max_states: int = 3, max_out: int = 2, max_domain: int = 3) -> Transducer:
    """Output never lags input by more than one letter.

    Only edges leaving the initial state may be silent, and when there is more
    than one state the initial state is never re-entered.
    """
    while True:
        n = rng.randint(1, max_states)
        step = []
        for q in range(n):
            row = []
            for _ in "01":
                lo = 0 if q == 0 and n > 1 else 1
                out = "".join(rng.choice("01") for _ in range(rng.randint(lo, max_out)))
                row.append((rng.randrange(1, n) if n > 1 else 0, out))
            step.append(tuple(row))
        dom = random_nonempty_closed(rng, max_domain)
        try:
            return Transducer(tuple(step), dom)
        except NonProductive:
            continue
