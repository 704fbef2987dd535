"""Closed regular subsets of Cantor space as pruned deterministic safety automata.

A :class:`SafetyAutomaton` is kept in a canonical form: pruned (every state lies
on an infinite path), minimized and renumbered breadth-first from the initial
state. Two automata are therefore equal as Python values iff they denote the
same closed set.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .words import ClopenSet, Point, all_words

Trans = tuple[tuple[int | None, int | None], ...]


class BudgetExceeded(RuntimeError):
    """An iteration did not stabilize within its budget."""


class AmbientViolation(ValueError):
    """A set was required to lie inside an ambient/domain set and does not."""


def default_budget(fallback: int) -> int:
    value = os.environ.get("ENGINE_BUDGET")
    return int(value) if value else fallback


@dataclass(frozen=True)
class SafetyAutomaton:
    """Canonical pruned safety automaton; state 0 is initial; no states means empty."""

    trans: Trans
    name: str = field(default="", compare=False)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        init: Hashable,
        edges: Mapping[tuple[Hashable, str], Hashable],
        name: str = "",
    ) -> "SafetyAutomaton":
        """Prune, minimize and canonicalize an arbitrary deterministic automaton."""
        return cls(_canonical(init, edges), name)

    @classmethod
    def explore(cls, init, step, name: str = "") -> "SafetyAutomaton":
        """Build from an implicit automaton; ``step(state, letter)`` returns a state or None."""
        edges = {}
        seen = {init}
        queue = deque([init])
        while queue:
            q = queue.popleft()
            for a in "01":
                r = step(q, a)
                if r is None:
                    continue
                edges[q, a] = r
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        return cls.from_edges(init, edges, name)

    @classmethod
    def full(cls) -> "SafetyAutomaton":
        return cls(((0, 0),), "full")

    @classmethod
    def empty(cls) -> "SafetyAutomaton":
        return cls((), "empty")

    @classmethod
    def from_clopen(cls, u: ClopenSet) -> "SafetyAutomaton":
        def step(w, a):
            if w is True:
                return True
            v = w + a
            if v in u.stems:
                return True
            return v if any(s.startswith(v) for s in u.stems) else None

        if u.is_full():
            return cls.full()
        return cls.explore("", step)

    @classmethod
    def cylinder(cls, stem: str) -> "SafetyAutomaton":
        return cls.from_clopen(ClopenSet([stem]))

    @classmethod
    def singleton(cls, p: Point) -> "SafetyAutomaton":
        word = p.head + p.cycle
        loop = len(p.head)

        def step(i, a):
            if word[i] != a:
                return None
            return i + 1 if i + 1 < len(word) else loop

        return cls.explore(0, step)

    # -- basic queries --------------------------------------------------------

    @property
    def num_states(self) -> int:
        return len(self.trans)

    def is_empty(self) -> bool:
        return not self.trans

    def is_full(self) -> bool:
        return self.trans == ((0, 0),)

    def run(self, word: str, start: int = 0) -> int | None:
        if not self.trans:
            return None
        q: int | None = start
        for a in word:
            q = self.trans[q][int(a)]
            if q is None:
                return None
        return q

    def has_prefix(self, word: str) -> bool:
        """True iff the cylinder of ``word`` meets the set."""
        return self.run(word) is not None

    def words_at(self, k: int) -> set[str]:
        """Length-``k`` prefixes of points of the set."""
        out: set[str] = set()
        if not self.trans:
            return out
        stack = [("", 0)]
        while stack:
            w, q = stack.pop()
            if len(w) == k:
                out.add(w)
                continue
            for a in "01":
                r = self.trans[q][int(a)]
                if r is not None:
                    stack.append((w + a, r))
        return out

    def __contains__(self, p: Point) -> bool:
        return member(p, self)

    def least_point(self, start: int = 0) -> Point:
        """Lexicographically least point (follow 0 whenever possible)."""
        if not self.trans:
            raise ValueError("empty set has no points")
        seen: dict[int, int] = {}
        word = []
        q = start
        while q not in seen:
            seen[q] = len(word)
            a = 0 if self.trans[q][0] is not None else 1
            word.append(str(a))
            q = self.trans[q][a]
        i = seen[q]
        return Point("".join(word[:i]), "".join(word[i:]))

    def least_point_in(self, stem: str) -> Point | None:
        q = self.run(stem)
        if q is None:
            return None
        p = self.least_point(q)
        return Point(stem + p.head, p.cycle)

    # -- algebra --------------------------------------------------------------

    def intersect(self, other: "SafetyAutomaton") -> "SafetyAutomaton":
        return boolean_op("intersect", self, other)

    def union(self, other: "SafetyAutomaton") -> "SafetyAutomaton":
        return boolean_op("union", self, other)

    def minus_clopen(self, u: ClopenSet) -> "SafetyAutomaton":
        """``F \\ U`` for clopen ``U`` (closed again)."""
        return self.intersect(SafetyAutomaton.from_clopen(u.complement()))

    def restrict(self, stem: str) -> "SafetyAutomaton":
        return self.intersect(SafetyAutomaton.cylinder(stem))

    def subset_of(self, other: "SafetyAutomaton") -> bool:
        return self.intersect(other) == self

    # -- text format ----------------------------------------------------------

    def to_text(self, name: str | None = None) -> str:
        lines = [f"safety {name or self.name or 'anon'}"]
        # the empty set still needs an initial state to be parseable
        for q in range(max(self.num_states, 1)):
            lines.append(f"state q{q}" + (" init" if q == 0 else ""))
        for q, row in enumerate(self.trans):
            for a, r in zip("01", row):
                if r is not None:
                    lines.append(f"edge q{q} {a} q{r}")
        return "\n".join(lines)


def _canonical(init, edges) -> Trans:
    states = {init} | {q for q, _ in edges} | set(edges.values())
    succ = {q: [edges.get((q, "0")), edges.get((q, "1"))] for q in states}
    # greatest fixpoint: states with an infinite path
    live = set(states)
    changed = True
    while changed:
        changed = False
        for q in list(live):
            if not any(r in live for r in succ[q] if r is not None):
                live.discard(q)
                changed = True
    if init not in live:
        return ()
    succ = {q: [r if r in live else None for r in succ[q]] for q in live}
    reach = {init}
    queue = deque([init])
    while queue:
        q = queue.popleft()
        for r in succ[q]:
            if r is not None and r not in reach:
                reach.add(r)
                queue.append(r)
    # Moore partition refinement; every state is accepting
    block = {q: 0 for q in reach}
    while True:
        sigs = {q: (block[q],) + tuple(None if r is None else block[r] for r in succ[q]) for q in reach}
        ids: dict = {}
        new = {q: ids.setdefault(sigs[q], len(ids)) for q in sorted(reach, key=repr)}
        if len(ids) == len(set(block.values())):
            break
        block = new
    # renumber blocks breadth-first from init
    order = {block[init]: 0}
    rep = {}
    for q in reach:
        rep.setdefault(block[q], q)
    queue = deque([block[init]])
    rows: list[tuple[int | None, int | None]] = []
    while queue:
        b = queue.popleft()
        row = []
        for r in succ[rep[b]]:
            if r is None:
                row.append(None)
                continue
            rb = block[r]
            if rb not in order:
                order[rb] = len(order)
                queue.append(rb)
            row.append(order[rb])
        rows.append((row[0], row[1]))
    return tuple(rows)


def prune(init, edges, name: str = "") -> SafetyAutomaton:
    return SafetyAutomaton.from_edges(init, edges, name)


def is_empty(f: SafetyAutomaton) -> bool:
    return f.is_empty()


def equals(f: SafetyAutomaton, g: SafetyAutomaton) -> bool:
    return f.trans == g.trans


def member(p: Point, f: SafetyAutomaton) -> bool:
    q = f.run(p.head)
    if q is None:
        return False
    seen = set()
    while q not in seen:
        seen.add(q)
        q = f.run(p.cycle, q)
        if q is None:
            return False
    return True


def boolean_op(kind: str, f: SafetyAutomaton, g: SafetyAutomaton) -> SafetyAutomaton:
    if kind == "intersect":
        if f.is_empty() or g.is_empty():
            return SafetyAutomaton.empty()

        def step(pair, a):
            p, q = pair
            i = int(a)
            r, s = f.trans[p][i], g.trans[q][i]
            return None if r is None or s is None else (r, s)

    elif kind == "union":
        # None plays the role of the rejecting sink of a totalized component
        def step(pair, a):
            p, q = pair
            i = int(a)
            r = None if p is None else f.trans[p][i]
            s = None if q is None else g.trans[q][i]
            return None if r is None and s is None else (r, s)

        if f.is_empty():
            return g
        if g.is_empty():
            return f
    else:
        raise ValueError(f"unknown boolean op {kind!r}")
    return SafetyAutomaton.explore((0, 0), step)


def thin_states(f: SafetyAutomaton) -> set[int]:
    """States whose subtree carries exactly one infinite path."""
    branching = {q for q, row in enumerate(f.trans) if None not in row}
    # a state is thick iff it can reach a branching state
    thick = set(branching)
    changed = True
    while changed:
        changed = False
        for q, row in enumerate(f.trans):
            if q not in thick and any(r in thick for r in row if r is not None):
                thick.add(q)
                changed = True
    return set(range(f.num_states)) - thick


def cb_derivative(f: SafetyAutomaton) -> SafetyAutomaton:
    """Remove the isolated points: exactly those whose run enters a thin state."""
    thin = thin_states(f)
    if not thin:
        return f
    edges = {
        (q, a): r
        for q, row in enumerate(f.trans)
        if q not in thin
        for a, r in zip("01", row)
        if r is not None and r not in thin
    }
    if 0 in thin:
        return SafetyAutomaton.empty()
    return SafetyAutomaton.from_edges(0, edges)


def perfect_kernel(f: SafetyAutomaton, budget: int | None = None) -> tuple[SafetyAutomaton, int, bool]:
    """Iterate the derivative to its fixpoint: ``(kernel, rank, countable)``."""
    budget = default_budget(64) if budget is None else budget
    rank = 0
    while True:
        g = cb_derivative(f)
        if equals(g, f):
            return f, rank, f.is_empty()
        rank += 1
        if rank > budget:
            raise BudgetExceeded(f"derivative chain not stable after {budget} steps")
        f = g


def brute_words(f: SafetyAutomaton, k: int) -> set[str]:
    """Depth-k words of the set, by testing every word (used as a check)."""
    return {w for w in all_words(k) if f.has_prefix(w)}
