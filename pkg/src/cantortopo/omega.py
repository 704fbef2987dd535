"""General regular point-sets: deterministic automata with acceptance on Inf(run).

Acceptance formulas are nested tuples::

    ("inf", q)  ("not", f)  ("and", f, g, ...)  ("or", f, g, ...)  ("true",)  ("false",)

where ``("inf", q)`` holds when state ``q`` is visited infinitely often.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .closed import SafetyAutomaton
from .words import ClopenSet, Point

Formula = tuple

TRUE: Formula = ("true",)
FALSE: Formula = ("false",)

#: guard against the exponential corner of the emptiness search
MAX_STATES = 4096
MAX_BRANCHES = 200_000


class SizeLimitError(RuntimeError):
    pass


def inf(q: int) -> Formula:
    return ("inf", q)


def evaluate(phi: Formula, infset) -> bool:
    op = phi[0]
    if op == "inf":
        return phi[1] in infset
    if op == "fin":
        return phi[1] not in infset
    if op == "not":
        return not evaluate(phi[1], infset)
    if op == "and":
        return all(evaluate(g, infset) for g in phi[1:])
    if op == "or":
        return any(evaluate(g, infset) for g in phi[1:])
    if op == "true":
        return True
    if op == "false":
        return False
    raise ValueError(f"bad formula node {phi!r}")


def map_atoms(phi: Formula, fn: Callable[[int], Formula]) -> Formula:
    op = phi[0]
    if op == "inf":
        return fn(phi[1])
    if op in ("true", "false"):
        return phi
    return (op,) + tuple(map_atoms(g, fn) for g in phi[1:])


def format_formula(phi: Formula, names=None) -> str:
    name = (lambda q: f"q{q}") if names is None else names.__getitem__
    op = phi[0]
    if op == "inf":
        return f"inf({name(phi[1])})"
    if op in ("true", "false"):
        return op
    if op == "not":
        return f"not {format_formula(phi[1], names)}" if phi[1][0] in ("inf", "true", "false", "not") else f"not ({format_formula(phi[1], names)})"
    inner = [format_formula(g, names) for g in phi[1:]]
    if not inner:
        return "true" if op == "and" else "false"
    return "(" + f" {op} ".join(inner) + ")"


_TOKEN = re.compile(r"\s*(\(|\)|and\b|or\b|not\b|true\b|false\b|inf\s*\(\s*[^)\s]+\s*\))")


def parse_formula(text: str, resolve: Callable[[str], int]) -> Formula:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse acceptance formula near {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    tokens.append(None)
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        i += 1
        return tokens[i - 1]

    def expr():
        parts = [conj()]
        while peek() == "or":
            take()
            parts.append(conj())
        return parts[0] if len(parts) == 1 else ("or", *parts)

    def conj():
        parts = [unary()]
        while peek() == "and":
            take()
            parts.append(unary())
        return parts[0] if len(parts) == 1 else ("and", *parts)

    def unary():
        t = take()
        if t == "not":
            return ("not", unary())
        if t == "(":
            e = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses in acceptance formula")
            return e
        if t in ("true", "false"):
            return (t,)
        if t and t.startswith("inf"):
            return ("inf", resolve(t[t.index("(") + 1 : -1].strip()))
        raise ValueError(f"unexpected token {t!r} in acceptance formula")

    phi = expr()
    if peek() is not None:
        raise ValueError(f"trailing tokens in acceptance formula: {tokens[i:-1]}")
    return phi


# -- normal forms used by the emptiness search ---------------------------------


def nnf(phi: Formula, neg: bool = False) -> Formula:
    """Negation normal form over literals ``("inf", q)`` and ``("fin", q)``."""
    op = phi[0]
    if op == "inf":
        return ("fin", phi[1]) if neg else phi
    if op == "fin":
        return ("inf", phi[1]) if neg else phi
    if op == "true":
        return FALSE if neg else TRUE
    if op == "false":
        return TRUE if neg else FALSE
    if op == "not":
        return nnf(phi[1], not neg)
    flip = {"and": "or", "or": "and"}
    new_op = flip[op] if neg else op
    return simplify((new_op,) + tuple(nnf(g, neg) for g in phi[1:]))


def simplify(phi: Formula) -> Formula:
    op = phi[0]
    if op not in ("and", "or"):
        return phi
    unit, zero = (TRUE, FALSE) if op == "and" else (FALSE, TRUE)
    parts = []
    seen = set()
    for g in phi[1:]:
        g = simplify(g)
        if g == zero:
            return zero
        if g == unit:
            continue
        for h in (g[1:] if g[0] == op else (g,)):
            if h not in seen:
                seen.add(h)
                parts.append(h)
    if not parts:
        return unit
    if len(parts) == 1:
        return parts[0]
    return (op, *parts)


def _substitute(phi: Formula, q: int, present: bool) -> Formula:
    def sub(g):
        op = g[0]
        if op == "inf" and g[1] == q:
            return TRUE if present else FALSE
        if op == "fin" and g[1] == q:
            return FALSE if present else TRUE
        if op in ("and", "or"):
            return (op,) + tuple(sub(h) for h in g[1:])
        return g

    return simplify(sub(phi))


def _restrict(phi: Formula, states) -> Formula:
    """Resolve literals on states outside ``states`` (they cannot recur)."""

    def sub(g):
        op = g[0]
        if op == "inf":
            return g if g[1] in states else FALSE
        if op == "fin":
            return g if g[1] in states else TRUE
        if op in ("and", "or"):
            return (op,) + tuple(sub(h) for h in g[1:])
        return g

    return simplify(sub(phi))


def _fin_atoms(phi: Formula) -> list[int]:
    out = []

    def walk(g):
        if g[0] == "fin":
            out.append(g[1])
        elif g[0] in ("and", "or"):
            for h in g[1:]:
                walk(h)

    walk(phi)
    return sorted(set(out))


def sccs(states: Iterable[int], succ: Callable[[int], Iterable[int]]) -> list[frozenset[int]]:
    """Nontrivial strongly connected components of the subgraph on ``states``."""
    states = set(states)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    out: list[frozenset[int]] = []
    counter = 0
    for root in sorted(states):
        if root in index:
            continue
        work = [(root, iter([s for s in succ(root) if s in states]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter([s for s in succ(w) if s in states])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                if len(comp) > 1 or v in succ(v):
                    out.append(frozenset(comp))
    return out


class _Search:
    """Find a strongly connected state set T with accept(T), inside given states."""

    def __init__(self, succ):
        self.succ = succ
        self.branches = 0

    def _tick(self):
        self.branches += 1
        if self.branches > MAX_BRANCHES:
            raise SizeLimitError("emptiness search exceeded its branch budget")

    def exists(self, states, phi: Formula, required=frozenset()) -> bool:
        for comp in sccs(states, self.succ):
            if required <= comp and self.solve(comp, phi, required):
                return True
        return False

    def solve(self, comp: frozenset[int], phi: Formula, required) -> bool:
        self._tick()
        phi = _restrict(phi, comp)
        if phi == TRUE:
            return True
        if phi == FALSE:
            return False
        if evaluate(phi, comp):
            return True
        fins = _fin_atoms(phi)
        if not fins:
            # monotone in the Inf-set: the whole component is the best candidate
            return False
        if phi[0] == "or":
            return any(self.solve(comp, g, required) for g in phi[1:])
        forced = [g[1] for g in (phi[1:] if phi[0] == "and" else (phi,)) if g[0] == "fin"]
        if forced:
            if required & set(forced):
                return False
            rest = phi
            for q in forced:
                rest = _substitute(rest, q, False)
            return self.exists(comp - set(forced), rest, required)
        q = fins[0]
        if self.solve(comp, _substitute(phi, q, True), required | {q}):
            return True
        if q in required:
            return False
        return self.exists(comp - {q}, _substitute(phi, q, False), required)


@dataclass(frozen=True)
class RegSet:
    """Deterministic complete automaton over {0,1}; state 0 is initial."""

    trans: tuple[tuple[int, int], ...]
    accept: Formula
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.trans)
        if n == 0:
            raise ValueError("RegSet needs at least one state")
        for row in self.trans:
            if len(row) != 2 or not all(isinstance(r, int) and 0 <= r < n for r in row):
                raise ValueError("RegSet transitions must be total over {0,1}")

    # -- constructors ----------------------------------------------------------

    @classmethod
    def explore(cls, init, step, accept_of: Callable[[dict], Formula], name: str = "") -> "RegSet":
        """Build the reachable part of an implicit complete automaton.

        ``accept_of`` receives the mapping from original states to new indices
        and returns the acceptance formula over new indices.
        """
        index = {init: 0}
        order = [init]
        rows = []
        i = 0
        while i < len(order):
            q = order[i]
            row = []
            for a in "01":
                r = step(q, a)
                if r not in index:
                    if len(index) >= MAX_STATES:
                        raise SizeLimitError(f"automaton exceeds {MAX_STATES} states")
                    index[r] = len(order)
                    order.append(r)
                row.append(index[r])
            rows.append(tuple(row))
            i += 1
        return cls(tuple(rows), accept_of(index), name)

    @classmethod
    def full(cls) -> "RegSet":
        return cls(((0, 0),), TRUE, "full")

    @classmethod
    def empty(cls) -> "RegSet":
        return cls(((0, 0),), FALSE, "empty")

    @classmethod
    def from_closed(cls, f: SafetyAutomaton) -> "RegSet":
        if f.is_empty():
            return cls.empty()
        sink = f.num_states
        rows = tuple(tuple(sink if r is None else r for r in row) for row in f.trans)
        return cls(rows + ((sink, sink),), ("not", inf(sink)), f.name)

    @classmethod
    def from_clopen(cls, u: ClopenSet) -> "RegSet":
        # trie nodes, then an accepting sink "in" and a rejecting sink "out"
        def step(w, a):
            if w in ("in", "out"):
                return w
            v = w + a
            if v in u.stems:
                return "in"
            return v if any(s.startswith(v) for s in u.stems) else "out"

        init = "in" if u.is_full() else ("out" if u.is_empty() else "")
        return cls.explore(init, step, lambda idx: inf(idx["in"]) if "in" in idx else FALSE)

    # -- queries ----------------------------------------------------------------

    @property
    def num_states(self) -> int:
        return len(self.trans)

    def run(self, word: str, start: int = 0) -> int:
        q = start
        for a in word:
            q = self.trans[q][int(a)]
        return q

    def inf_set(self, p: Point) -> frozenset[int]:
        q = self.run(p.head)
        seen: dict[int, int] = {}
        starts = []
        while q not in seen:
            seen[q] = len(starts)
            starts.append(q)
            q = self.run(p.cycle, q)
        loop = starts[seen[q] :]
        out = set()
        for s in loop:
            for a in p.cycle:
                out.add(s)
                s = self.trans[s][int(a)]
        return frozenset(out)

    def __contains__(self, p: Point) -> bool:
        return member_lasso(p, self)

    def successors(self, q: int) -> tuple[int, int]:
        return self.trans[q]

    def reachable(self, start: int = 0) -> set[int]:
        seen = {start}
        queue = deque([start])
        while queue:
            q = queue.popleft()
            for r in self.trans[q]:
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        return seen

    def good_components(self) -> list[frozenset[int]]:
        """SCCs of the whole graph that contain an accepting cycle-closed subset."""
        search = _Search(self.successors)
        phi = nnf(self.accept)
        out = []
        for comp in sccs(range(self.num_states), self.successors):
            if search.solve(comp, phi, frozenset()):
                out.append(comp)
        return out

    def live_states(self) -> set[int]:
        """States from which some accepted run starts."""
        good = set().union(*self.good_components()) if self.num_states else set()
        pred: dict[int, set[int]] = {q: set() for q in range(self.num_states)}
        for q, row in enumerate(self.trans):
            for r in row:
                pred[r].add(q)
        live = set(good)
        queue = deque(good)
        while queue:
            q = queue.popleft()
            for p in pred[q]:
                if p not in live:
                    live.add(p)
                    queue.append(p)
        return live

    # -- algebra ------------------------------------------------------------------

    def complement(self) -> "RegSet":
        return combine("complement", self)

    def union(self, other: "RegSet") -> "RegSet":
        return combine("union", self, other)

    def intersect(self, other: "RegSet") -> "RegSet":
        return combine("intersect", self, other)

    def difference(self, other: "RegSet") -> "RegSet":
        return combine("difference", self, other)

    def to_text(self, name: str | None = None) -> str:
        lines = [f"regset {name or self.name or 'anon'}"]
        for q in range(self.num_states):
            lines.append(f"state q{q}" + (" init" if q == 0 else ""))
        for q, row in enumerate(self.trans):
            for a, r in zip("01", row):
                lines.append(f"edge q{q} {a} q{r}")
        lines.append(f"accept {format_formula(self.accept)}")
        return "\n".join(lines)


def member_lasso(p: Point, e: RegSet) -> bool:
    return evaluate(e.accept, e.inf_set(p))


def is_empty_omega(e: RegSet, within: str = "") -> bool:
    start = e.run(within)
    search = _Search(e.successors)
    return not search.exists(e.reachable(start), nnf(e.accept))


def closure(e: RegSet) -> SafetyAutomaton:
    live = e.live_states()
    if 0 not in live:
        return SafetyAutomaton.empty()
    edges = {(q, a): r for q in live for a, r in zip("01", e.trans[q]) if r in live}
    return SafetyAutomaton.from_edges(0, edges)


def _product(e: RegSet, g: RegSet, op: str) -> RegSet:
    def step(pair, a):
        i = int(a)
        return (e.trans[pair[0]][i], g.trans[pair[1]][i])

    def accept_of(index):
        def lift(side):
            def fn(q):
                hits = [inf(j) for pair, j in index.items() if pair[side] == q]
                return ("or", *hits) if hits else FALSE

            return fn

        left = map_atoms(e.accept, lift(0))
        right = map_atoms(g.accept, lift(1))
        if op == "difference":
            right = ("not", right)
            op_ = "and"
        else:
            op_ = "and" if op == "intersect" else "or"
        return simplify((op_, left, right))

    return RegSet.explore((0, 0), step, accept_of)


def combine(kind: str, e: RegSet, g: RegSet | None = None) -> RegSet:
    if kind == "complement":
        if g is not None:
            raise ValueError("complement takes one operand")
        phi = e.accept[1] if e.accept[0] == "not" else ("not", e.accept)
        return RegSet(e.trans, phi, e.name)
    if kind not in ("union", "intersect", "difference"):
        raise ValueError(f"unknown combination {kind!r}")
    if g is None:
        raise ValueError(f"{kind} takes two operands")
    return _product(e, g, kind)


def from_closed(f: SafetyAutomaton) -> RegSet:
    return RegSet.from_closed(f)


def from_clopen(u: ClopenSet) -> RegSet:
    return RegSet.from_clopen(u)
