"""Continuous maps on closed regular domains as deterministic prefix transducers.

Each input letter emits a (possibly empty) output word; productivity (no silent
cycle inside the live domain product) guarantees infinite output, so every
transducer denotes a continuous total map ``X -> C``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

from .closed import AmbientViolation, SafetyAutomaton, member
from .omega import RegSet, closure, sccs
from .words import ClopenSet, Point

Step = tuple[tuple[tuple[int, str], tuple[int, str]], ...]


class DomainViolation(ValueError):
    pass


class NonProductive(ValueError):
    pass


@dataclass(frozen=True)
class Transducer:
    """State 0 is initial; ``step[q][a] = (next state, output word)``."""

    step: Step
    domain: SafetyAutomaton
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.step)
        for row in self.step:
            if len(row) != 2:
                raise ValueError("transducer steps must be total over {0,1}")
            for r, out in row:
                if not 0 <= r < n or set(out) - {"0", "1"}:
                    raise ValueError(f"bad transducer edge target/output {r!r}, {out!r}")
        silent = self.silent_cycle()
        if silent is not None:
            raise NonProductive(f"non-productive: silent cycle through product state {silent}")

    def product_edges(self, dom: SafetyAutomaton | None = None):
        """Reachable edges of the (transducer state, domain state) product."""
        dom = self.domain if dom is None else dom
        if dom.is_empty():
            return {}
        edges = {}
        seen = {(0, 0)}
        queue = deque([(0, 0)])
        while queue:
            q, s = queue.popleft()
            for i, a in enumerate("01"):
                s2 = dom.trans[s][i]
                if s2 is None:
                    continue
                q2, out = self.step[q][i]
                edges[(q, s), a] = ((q2, s2), out)
                if (q2, s2) not in seen:
                    seen.add((q2, s2))
                    queue.append((q2, s2))
        return edges

    def silent_cycle(self):
        edges = self.product_edges()
        succ: dict = {}
        for (src, _), (dst, out) in edges.items():
            if not out:
                succ.setdefault(src, []).append(dst)
        nodes = sorted(set(succ) | {d for ds in succ.values() for d in ds})
        ids = {v: i for i, v in enumerate(nodes)}
        comps = sccs(range(len(nodes)), lambda i: [ids[d] for d in succ.get(nodes[i], [])])
        return nodes[min(comps[0])] if comps else None

    def restrict(self, f: SafetyAutomaton) -> "Transducer":
        return Transducer(self.step, self.domain.intersect(f), self.name)

    def with_domain(self, f: SafetyAutomaton) -> "Transducer":
        if not f.subset_of(self.domain):
            raise AmbientViolation("new domain is not inside the transducer domain")
        return Transducer(self.step, f, self.name)

    def output(self, word: str, start: int = 0) -> tuple[int, str]:
        q = start
        out = []
        for a in word:
            q, w = self.step[q][int(a)]
            out.append(w)
        return q, "".join(out)

    def __call__(self, p: Point) -> Point:
        return eval_point(self, p)

    def to_text(self, name: str | None = None, domain_name: str | None = None) -> str:
        lines = [f"transducer {name or self.name or 'anon'}"]
        for q in range(len(self.step)):
            lines.append(f"state t{q}" + (" init" if q == 0 else ""))
        for q, row in enumerate(self.step):
            for a, (r, out) in zip("01", row):
                lines.append(f"edge t{q} {a} t{r} {out or 'eps'}")
        lines.append(f"domain {domain_name or self.domain.name or 'anon'}")
        return "\n".join(lines)


def identity_on(domain: SafetyAutomaton, name: str = "identity") -> Transducer:
    return Transducer((((0, "0"), (0, "1")),), domain, name)


def eval_point(t: Transducer, p: Point) -> Point:
    if not member(p, t.domain):
        raise DomainViolation(f"{p} is outside the domain")
    q, head_out = t.output(p.head)
    seen: dict[int, int] = {}
    outs = []
    while q not in seen:
        seen[q] = len(outs)
        q, w = t.output(p.cycle, q)
        outs.append(w)
    i = seen[q]
    return Point(head_out + "".join(outs[:i]), "".join(outs[i:]))


def image_closed(t: Transducer, f: SafetyAutomaton | None = None) -> SafetyAutomaton:
    """Image of a closed subset of the domain, via subset construction on outputs."""
    if f is None:
        f = t.domain
    elif not f.subset_of(t.domain):
        raise AmbientViolation("set is not inside the transducer domain")
    if f.is_empty():
        return SafetyAutomaton.empty()
    edges = t.product_edges(f)
    # NFA over output letters: product nodes plus one node per pending output letter
    letter_edges: dict = {}
    eps: dict = {}
    for (src, a), (dst, out) in edges.items():
        if not out:
            eps.setdefault(src, set()).add(dst)
            continue
        prev = src
        for i, b in enumerate(out):
            nxt = dst if i == len(out) - 1 else ("mid", src, a, i)
            letter_edges.setdefault((prev, b), set()).add(nxt)
            prev = nxt

    def eclose(nodes):
        stack = list(nodes)
        seen = set(nodes)
        while stack:
            v = stack.pop()
            for w in eps.get(v, ()):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(seen)

    def step(subset, b):
        moved = set()
        for v in subset:
            moved |= letter_edges.get((v, b), set())
        return eclose(moved) if moved else None

    return SafetyAutomaton.explore(eclose({(0, 0)}), step)


def preimage_closed(t: Transducer, g: SafetyAutomaton) -> SafetyAutomaton:
    """``{x in X : f(x) in G}`` for a closed output set ``G``."""
    if g.is_empty() or t.domain.is_empty():
        return SafetyAutomaton.empty()

    def step(state, a):
        q, s, y = state
        i = int(a)
        s2 = t.domain.trans[s][i]
        if s2 is None:
            return None
        q2, out = t.step[q][i]
        y2 = g.run(out, y)
        return None if y2 is None else (q2, s2, y2)

    return SafetyAutomaton.explore((0, 0, 0), step)


def preimage_clopen(t: Transducer, u: ClopenSet) -> SafetyAutomaton:
    return preimage_closed(t, SafetyAutomaton.from_clopen(u))


def preimage_point(t: Transducer, p: Point) -> SafetyAutomaton:
    return preimage_closed(t, SafetyAutomaton.singleton(p))


# -- injectivity ---------------------------------------------------------------


@dataclass
class InjectivityVerdict:
    injective: bool
    depth: int
    witness: tuple[Point, Point] | None = None

    @property
    def status(self) -> str:
        return "Injective" if self.injective else "NotInjective"


def is_injective(t: Transducer, budget: int = 16) -> InjectivityVerdict:
    """Search pairs of runs on distinct inputs whose outputs never disagree.

    A node carries both machine states, both domain states, the unmatched output
    of the run that is ahead (at most ``budget`` letters) and whether the inputs
    have already differed. A cycle through a diverged node is a collision.
    """
    dom = t.domain
    if dom.is_empty():
        return InjectivityVerdict(True, budget)
    start = (0, 0, 0, 0, 0, "", False)
    pairs = [(a, b) for a in "01" for b in "01"]
    succ: dict = {}
    parent: dict = {start: None}
    order = [start]
    queue = deque([start])
    while queue:
        node = queue.popleft()
        q1, s1, q2, s2, lead, buf, div = node
        out_edges = []
        for a, b in pairs:
            d1, d2 = dom.trans[s1][int(a)], dom.trans[s2][int(b)]
            if d1 is None or d2 is None:
                continue
            r1, o1 = t.step[q1][int(a)]
            r2, o2 = t.step[q2][int(b)]
            p1 = (buf if lead == 0 else "") + o1
            p2 = (buf if lead == 1 else "") + o2
            c = min(len(p1), len(p2))
            if p1[:c] != p2[:c]:
                continue
            rest, new_lead = (p1[c:], 0) if len(p1) > c else (p2[c:], 1)
            if len(rest) > budget:
                continue
            nxt = (r1, d1, r2, d2, new_lead if rest else 0, rest, div or a != b)
            out_edges.append(((a, b), nxt))
            if nxt not in parent:
                parent[nxt] = (node, (a, b))
                order.append(nxt)
                queue.append(nxt)
        succ[node] = out_edges
    ids = {v: i for i, v in enumerate(order)}
    comps = sccs(range(len(order)), lambda i: [ids[n] for _, n in succ[order[i]]])
    cyclic = set().union(*comps) if comps else set()
    target = next((v for v in order if v[6] and ids[v] in cyclic), None)
    if target is None:
        return InjectivityVerdict(True, budget)
    path = []
    v = target
    while parent[v] is not None:
        v, lab = parent[v]
        path.append(lab)
    path.reverse()
    # shortest cycle from target back to itself
    back: dict = {}
    queue = deque([target])
    found = None
    while queue and found is None:
        v = queue.popleft()
        for lab, w in succ[v]:
            if w == target:
                found = (v, lab)
                break
            if w not in back:
                back[w] = (v, lab)
                queue.append(w)
    v, lab = found
    cycle = [lab]
    while v != target:
        v, lab = back[v]
        cycle.append(lab)
    cycle.reverse()
    x = Point("".join(a for a, _ in path), "".join(a for a, _ in cycle))
    y = Point("".join(b for _, b in path), "".join(b for _, b in cycle))
    assert x != y and eval_point(t, x) == eval_point(t, y)
    return InjectivityVerdict(False, budget, (x, y))


# -- openness ---------------------------------------------------------------------


class OpenStatus(str, enum.Enum):
    OPEN = "Open"
    NOT_OPEN = "NotOpen"
    OPEN_UP_TO_DEPTH = "OpenUpToDepth"

    def __str__(self) -> str:
        return self.value


@dataclass
class OpennessVerdict:
    status: OpenStatus
    witness: str | None
    depth: int


class NowhereStatus(str, enum.Enum):
    NOWHERE_OPEN_UP_TO_DEPTH = "NowhereOpenUpToDepth"
    NOT_NOWHERE_OPEN = "NotNowhereOpen"

    def __str__(self) -> str:
        return self.value


@dataclass
class NowhereVerdict:
    status: NowhereStatus
    depth: int
    witness: str | None = None
    saturated: bool = False


def bad_set(y: SafetyAutomaton, i: SafetyAutomaton) -> SafetyAutomaton:
    """``cl(Y - I) & I``: empty iff ``I`` is relatively open in ``Y``."""
    rest = RegSet.from_closed(y).difference(RegSet.from_closed(i))
    return closure(rest).intersect(i)


def relatively_open(y: SafetyAutomaton, i: SafetyAutomaton) -> bool:
    return bad_set(y, i).is_empty()


def check_open(t: Transducer, depth_cap: int = 12) -> OpennessVerdict:
    dom = t.domain
    if dom.is_empty():
        return OpennessVerdict(OpenStatus.OPEN, None, 0)
    y = image_closed(t)
    seen = set()
    queue = deque([("", 0, 0, 0)])
    capped = False
    reached = 0
    while queue:
        w, q, s, ys = queue.popleft()
        sig = (q, s, ys)
        if sig in seen:
            continue
        if len(w) > depth_cap:
            capped = True
            continue
        seen.add(sig)
        reached = len(w)
        piece = image_closed(t, dom.restrict(w)) if w else y
        if not relatively_open(y, piece):
            return OpennessVerdict(OpenStatus.NOT_OPEN, w, len(w))
        for i, a in enumerate("01"):
            s2 = dom.trans[s][i]
            if s2 is None:
                continue
            q2, out = t.step[q][i]
            queue.append((w + a, q2, s2, y.run(out, ys)))
    if capped:
        return OpennessVerdict(OpenStatus.OPEN_UP_TO_DEPTH, None, depth_cap)
    return OpennessVerdict(OpenStatus.OPEN, None, reached)


def check_nowhere_open(t: Transducer, z: SafetyAutomaton, depth_cap: int = 12) -> NowhereVerdict:
    if not z.subset_of(t.domain):
        raise AmbientViolation("Z is not inside the transducer domain")
    if z.is_empty():
        return NowhereVerdict(NowhereStatus.NOWHERE_OPEN_UP_TO_DEPTH, 0, None, True)
    seen = set()
    queue = deque([("", 0, 0)])
    capped = False
    reached = 0
    while queue:
        w, q, s = queue.popleft()
        if (q, s) in seen:
            continue
        if len(w) > depth_cap:
            capped = True
            continue
        seen.add((q, s))
        reached = len(w)
        verdict = check_open(t.with_domain(z.restrict(w)), depth_cap)
        if verdict.status == OpenStatus.OPEN:
            return NowhereVerdict(NowhereStatus.NOT_NOWHERE_OPEN, len(w), w)
        for i, a in enumerate("01"):
            s2 = z.trans[s][i]
            if s2 is not None:
                queue.append((w + a, t.step[q][i][0], s2))
    if capped:
        return NowhereVerdict(NowhereStatus.NOWHERE_OPEN_UP_TO_DEPTH, depth_cap)
    return NowhereVerdict(NowhereStatus.NOWHERE_OPEN_UP_TO_DEPTH, reached, None, True)
