"""Brute-force truncation oracle used to cross-check the automaton engine.

Every answer is a set of length-``k`` words. Nothing here touches the engine's
SCC search, closures, products or subset constructions: regular sets are
handled by enumerating candidate Inf-sets outright, and closed-set combinations
are evaluated on explicit word sets with a finite lookahead below depth ``k``.
For the lookahead to be exact it must exceed the number of states of the
automata involved (a longer common path must revisit a state and therefore
extends forever); callers choose it accordingly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .closed import SafetyAutomaton
from .omega import RegSet, evaluate, SizeLimitError
from .words import Point, all_words

MAX_DEPTH = 12
MAX_LOOKAHEAD_DEPTH = 20
MAX_SUBSET_STATES = 14


class DepthTooLarge(ValueError):
    pass


def _check_depth(k: int, deep: int | None = None) -> None:
    if k > MAX_DEPTH:
        raise DepthTooLarge(f"oracle depth {k} exceeds {MAX_DEPTH}")
    if deep is not None and deep > MAX_LOOKAHEAD_DEPTH:
        raise DepthTooLarge(f"lookahead depth {deep} exceeds {MAX_LOOKAHEAD_DEPTH}")


def truncate(words: Iterable[str], k: int) -> set[str]:
    return {w[:k] for w in words}


def closed_words(f: SafetyAutomaton, depth: int) -> set[str]:
    return f.words_at(depth)


def _live_pairs(e: RegSet, f: SafetyAutomaton | None, negate: bool):
    """Run-graph of F x E and the set of its nodes from which an accepted run starts.

    Accepting Inf-sets are found by trying every subset of the reachable nodes.
    """
    if f is not None and f.is_empty():
        return None, set()
    start = (0, 0)

    def succ(node):
        s, q = node
        out = []
        for i in range(2):
            s2 = s if f is None else f.trans[s][i]
            if s2 is None:
                continue
            out.append((s2, e.trans[q][i]))
        return out

    nodes = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in succ(v):
            if w not in nodes:
                nodes.add(w)
                stack.append(w)
    nodes = sorted(nodes)
    if len(nodes) > MAX_SUBSET_STATES:
        raise SizeLimitError(f"oracle subset enumeration limited to {MAX_SUBSET_STATES} states")
    succs = {v: set(succ(v)) for v in nodes}

    def reach(src, allowed):
        seen = set()
        stack = [src]
        while stack:
            v = stack.pop()
            for w in succs[v]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    good = set()
    for r in range(1, len(nodes) + 1):
        for subset in itertools.combinations(nodes, r):
            t = set(subset)
            # strongly connected with a cycle: every node reaches every node inside t
            if all(t <= reach(v, t) for v in t):
                ok = evaluate(e.accept, {q for _, q in t})
                if ok != negate:
                    good |= t
    live = {v for v in nodes if v in good or reach(v, set(nodes)) & good}
    return start, live


def regset_words(e: RegSet, depth: int, within: SafetyAutomaton | None = None, negate: bool = False) -> set[str]:
    """Length-``depth`` words ``u`` such that ``[u]`` meets ``E`` (or ``F & E``)."""
    start, live = _live_pairs(e, within, negate)
    out = set()
    if start is None or start not in live:
        return out
    stack = [("", start)]
    while stack:
        w, (s, q) = stack.pop()
        if len(w) == depth:
            out.add(w)
            continue
        for i, a in enumerate("01"):
            s2 = s if within is None else within.trans[s][i]
            if s2 is None:
                continue
            nxt = (s2, e.trans[q][i])
            if nxt in live:
                stack.append((w + a, nxt))
    return out


def image_words(step, dom: SafetyAutomaton, depth: int, lookahead: int) -> set[str]:
    """Output prefixes of length ``depth`` over all domain words of length depth+lookahead."""
    out = set()
    for v in dom.words_at(depth + lookahead):
        q = 0
        produced = []
        for a in v:
            q, w = step[q][int(a)]
            produced.append(w)
        text = "".join(produced)
        if len(text) >= depth:
            out.add(text[:depth])
    return out


def rel_open_words(y_deep: set[str], i_deep: set[str], k: int, mid: int) -> set[str]:
    """Depth-k words of ``cl(Y - I) & I`` from deep truncations of Y and I.

    ``y_deep``/``i_deep`` have a common length ``K2 > mid``; ``cl(Y - I)`` is
    read off at depth ``mid`` as prefixes of words in Y that are not in I.
    """
    cl_rest = truncate(y_deep - i_deep, mid)
    return truncate(cl_rest & truncate(i_deep, mid), k)


def rel_open_points(y: set[Point], i: set[Point], k: int) -> set[str]:
    """Finite point sets at resolution ``k``: common depth-k words of ``Y - I`` and ``I``."""
    rest = {p.prefix(k) for p in y - i}
    return rest & {p.prefix(k) for p in i}


def derivative_words(e: RegSet, f: SafetyAutomaton, ambient: SafetyAutomaton, k: int, lookahead: int) -> set[str]:
    deep = k + lookahead
    a = regset_words(e, deep, f)
    b = regset_words(e, deep, f, negate=True)
    x = closed_words(ambient, deep)
    return truncate(a & b & x, k)


def oracle_eval(kind: str, depth: int, lookahead: int = 4, **inputs) -> set[str]:
    _check_depth(depth)
    if kind == "closure":
        return regset_words(inputs["e"], depth)
    if kind == "empty":
        if "e" in inputs:
            return regset_words(inputs["e"], depth)
        return closed_words(inputs["f"], depth)
    if kind == "image":
        _check_depth(depth, depth + lookahead)
        t = inputs["t"]
        return image_words(t.step, inputs.get("f") or t.domain, depth, lookahead)
    if kind == "derivative":
        _check_depth(depth, depth + lookahead)
        return derivative_words(inputs["e"], inputs["f"], inputs.get("ambient") or inputs["f"], depth, lookahead)
    if kind == "rel_open":
        mid = depth + lookahead
        deep = mid + lookahead
        _check_depth(depth, deep)
        y, i = inputs["y"], inputs["i"]
        return rel_open_words(y.words_at(deep), i.words_at(deep), depth, mid)
    raise ValueError(f"unknown oracle query {kind!r}")


@dataclass
class OracleReport:
    kind: str
    depth: int
    engine: frozenset[str]
    oracle: frozenset[str]

    @property
    def agree(self) -> bool:
        return self.engine == self.oracle

    def line(self, label: str = "") -> str:
        tag = f"{label} " if label else ""
        return f"{tag}{self.kind} depth={self.depth} engine={len(self.engine)} oracle={len(self.oracle)} agree={str(self.agree).lower()}"


def engine_answer(kind: str, depth: int, **inputs) -> set[str]:
    from .omega import closure, is_empty_omega
    from .resolvability import derivative
    from .transducers import bad_set, image_closed

    if kind == "closure":
        return closure(inputs["e"]).words_at(depth)
    if kind == "empty":
        if "e" in inputs:
            return {w for w in all_words(depth) if not is_empty_omega(inputs["e"], w)}
        return {w for w in all_words(depth) if not inputs["f"].restrict(w).is_empty()}
    if kind == "image":
        return image_closed(inputs["t"], inputs.get("f")).words_at(depth)
    if kind == "derivative":
        f = inputs["f"]
        return derivative(inputs["e"], f, inputs.get("ambient") or f).words_at(depth)
    if kind == "rel_open":
        return bad_set(inputs["y"], inputs["i"]).words_at(depth)
    raise ValueError(f"unknown query {kind!r}")


def compare_with_engine(kind: str, depth: int, lookahead: int = 4, **inputs) -> OracleReport:
    engine = engine_answer(kind, depth, **inputs)
    oracle = oracle_eval(kind, depth, lookahead, **inputs)
    return OracleReport(kind, depth, frozenset(engine), frozenset(oracle))


def compare_all_depths(kind: str, max_depth: int = 8, lookahead: int = 4, **inputs) -> list[OracleReport]:
    """Reports for every depth ``0..max_depth``.

    The oracle runs once at ``max_depth``; shallower answers are its truncations,
    which is exact because each answer is the prefix set of a closed set.
    """
    deep = oracle_eval(kind, max_depth, lookahead, **inputs)
    reports = []
    for k in range(max_depth + 1):
        engine = engine_answer(kind, k, **inputs)
        reports.append(OracleReport(kind, k, frozenset(engine), frozenset(truncate(deep, k))))
    return reports
