"""Line-oriented text format for closed sets, regular sets, transducers and tables.

::

    safety <name>            regset <name>            transducer <name>
    state <id> [init]        state <id> [init]        state <id> [init]
    edge <src> <a> <dst>     edge <src> <a> <dst>     edge <src> <a> <dst> <out|eps>
                             accept <formula>         domain <closed-set name>

    table <name>
    depth <k>
    resolution <r>
    stage <s>
    map <word> <out|eps>

    set <name> <expression>

Set expressions: ``cyl(w)``, ``closed:name``, ``regset:name``, ``set:name``,
``union(e1,e2)``, ``inter(e1,e2)``, ``diff(e1,e2)``, ``compl(e)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources

from .closed import SafetyAutomaton
from .finite_map import FiniteStageMap, TableError
from .omega import RegSet, parse_formula
from .transducers import NonProductive, Transducer
from .words import ClopenSet


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


class SemanticError(ValueError):
    pass


@dataclass
class _Block:
    kind: str
    name: str
    line: int
    states: list[str] = field(default_factory=list)
    init: str | None = None
    edges: list[tuple[int, list[str]]] = field(default_factory=list)
    accept: tuple[int, str] | None = None
    domain: str | None = None
    params: dict[str, int] = field(default_factory=dict)
    rows: dict[str, str] = field(default_factory=dict)


@dataclass
class Model:
    closed: dict[str, SafetyAutomaton] = field(default_factory=dict)
    regsets: dict[str, RegSet] = field(default_factory=dict)
    transducers: dict[str, Transducer] = field(default_factory=dict)
    tables: dict[str, FiniteStageMap] = field(default_factory=dict)
    sets: dict[str, str] = field(default_factory=dict)

    def merge(self, other: "Model") -> "Model":
        return Model(
            {**self.closed, **other.closed},
            {**self.regsets, **other.regsets},
            {**self.transducers, **other.transducers},
            {**self.tables, **other.tables},
            {**self.sets, **other.sets},
        )

    # -- lookups ------------------------------------------------------------------

    def closed_set(self, ref: str) -> SafetyAutomaton:
        name = ref.split(":", 1)[1] if ref.startswith("closed:") else ref
        if name in self.closed:
            return self.closed[name]
        if name == "full":
            return SafetyAutomaton.full()
        if name == "empty":
            return SafetyAutomaton.empty()
        raise SemanticError(f"undefined closed set {name!r}")

    def map(self, ref: str):
        kind, _, name = ref.partition(":")
        if not name:
            kind, name = ("table", kind) if kind in self.tables else ("transducer", kind)
        if kind == "transducer" and name in self.transducers:
            return self.transducers[name]
        if kind == "table" and name in self.tables:
            return self.tables[name]
        raise SemanticError(f"undefined map {ref!r}")

    def eval_set(self, expr: str) -> RegSet:
        return _SetExpr(expr, self).parse()

    # -- serialization -------------------------------------------------------------

    def to_text(self) -> str:
        blocks = []
        for name, f in sorted(self.closed.items()):
            blocks.append(f.to_text(name))
        for name, e in sorted(self.regsets.items()):
            blocks.append(e.to_text(name))
        for name, t in sorted(self.transducers.items()):
            dom = next((n for n, f in sorted(self.closed.items()) if f == t.domain), None)
            if dom is None:
                raise SemanticError(f"domain of transducer {name!r} is not a named closed set")
            blocks.append(t.to_text(name, dom))
        for name, m in sorted(self.tables.items()):
            blocks.append(m.to_text(name))
        for name, expr in sorted(self.sets.items()):
            blocks.append(f"set {name} {expr}")
        return "\n\n".join(blocks) + "\n"


_HEADERS = ("safety", "regset", "transducer", "table")


def parse_spec(text: str) -> Model:
    blocks: list[_Block] = []
    sets: dict[str, str] = {}
    current: _Block | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        head = tok[0]
        if head in _HEADERS:
            if len(tok) != 2:
                raise ParseError(lineno, f"expected '{head} <name>'")
            current = _Block(head, tok[1], lineno)
            blocks.append(current)
            continue
        if head == "set":
            if len(tok) < 3:
                raise ParseError(lineno, "expected 'set <name> <expression>'")
            sets[tok[1]] = "".join(tok[2:])
            current = None
            continue
        if current is None:
            raise ParseError(lineno, f"{head!r} outside of a block")
        _block_line(current, tok, lineno, line)
    model = Model(sets=sets)
    for b in blocks:
        if b.kind == "safety":
            model.closed[b.name] = _build_safety(b)
        elif b.kind == "regset":
            model.regsets[b.name] = _build_regset(b)
        elif b.kind == "table":
            model.tables[b.name] = _build_table(b)
    for b in blocks:
        if b.kind == "transducer":
            model.transducers[b.name] = _build_transducer(b, model)
    for name, expr in sets.items():
        model.eval_set(expr)
    return model


def _block_line(b: _Block, tok: list[str], lineno: int, line: str) -> None:
    head = tok[0]
    if head == "state" and b.kind != "table":
        if len(tok) not in (2, 3) or (len(tok) == 3 and tok[2] != "init"):
            raise ParseError(lineno, "expected 'state <id> [init]'")
        if tok[1] in b.states:
            raise ParseError(lineno, f"duplicate state {tok[1]!r}")
        b.states.append(tok[1])
        if len(tok) == 3:
            if b.init is not None:
                raise ParseError(lineno, "second init state")
            b.init = tok[1]
    elif head == "edge" and b.kind != "table":
        want = 5 if b.kind == "transducer" else 4
        if len(tok) != want or tok[2] not in ("0", "1"):
            raise ParseError(lineno, f"malformed edge line in {b.kind} block")
        if b.kind == "transducer" and tok[4] != "eps" and not re.fullmatch(r"[01]+", tok[4]):
            raise ParseError(lineno, f"bad output word {tok[4]!r}")
        b.edges.append((lineno, tok[1:]))
    elif head == "accept" and b.kind == "regset":
        b.accept = (lineno, line[len("accept") :].strip())
    elif head == "domain" and b.kind == "transducer":
        if len(tok) != 2:
            raise ParseError(lineno, "expected 'domain <name>'")
        b.domain = tok[1]
    elif head in ("depth", "resolution", "stage") and b.kind == "table":
        if len(tok) != 2 or not tok[1].isdigit():
            raise ParseError(lineno, f"expected '{head} <integer>'")
        b.params[head] = int(tok[1])
    elif head == "map" and b.kind == "table":
        if len(tok) != 3 or not re.fullmatch(r"eps|[01]+", tok[1]) or not re.fullmatch(r"eps|[01]+", tok[2]):
            raise ParseError(lineno, "expected 'map <word> <out|eps>'")
        word = "" if tok[1] == "eps" else tok[1]
        if word in b.rows:
            raise ParseError(lineno, f"duplicate row {tok[1]!r}")
        b.rows[word] = "" if tok[2] == "eps" else tok[2]
    else:
        raise ParseError(lineno, f"unexpected {head!r} in {b.kind} block")


def _index(b: _Block) -> dict[str, int]:
    if b.init is None:
        raise SemanticError(f"{b.kind} {b.name!r} has no init state")
    order = [b.init] + [s for s in b.states if s != b.init]
    return {s: i for i, s in enumerate(order)}


def _edge_map(b: _Block, ids: dict[str, int]):
    edges = {}
    for lineno, (src, a, dst, *rest) in b.edges:
        for s in (src, dst):
            if s not in ids:
                raise ParseError(lineno, f"undeclared state {s!r}")
        key = (ids[src], a)
        if key in edges:
            raise ParseError(lineno, f"nondeterministic edge from {src!r} on {a}")
        out = rest[0] if rest else None
        edges[key] = (ids[dst], "" if out == "eps" else out)
    return edges


def _build_safety(b: _Block) -> SafetyAutomaton:
    ids = _index(b)
    edges = {k: v[0] for k, v in _edge_map(b, ids).items()}
    return SafetyAutomaton.from_edges(0, edges, b.name)


def _build_regset(b: _Block) -> RegSet:
    ids = _index(b)
    edges = _edge_map(b, ids)
    rows = []
    for q in range(len(ids)):
        row = []
        for a in "01":
            if (q, a) not in edges:
                raise SemanticError(f"regset {b.name!r}: non-total transitions (state {q}, letter {a})")
            row.append(edges[q, a][0])
        rows.append(tuple(row))
    if b.accept is None:
        raise SemanticError(f"regset {b.name!r} has no accept line")
    lineno, text = b.accept

    def resolve(s: str) -> int:
        if s not in ids:
            raise SemanticError(f"regset {b.name!r}: accept refers to unknown state {s!r}")
        return ids[s]

    try:
        phi = parse_formula(text, resolve)
    except ValueError as exc:
        if isinstance(exc, SemanticError):
            raise
        raise ParseError(lineno, str(exc)) from None
    return RegSet(tuple(rows), phi, b.name)


def _build_transducer(b: _Block, model: Model) -> Transducer:
    ids = _index(b)
    edges = _edge_map(b, ids)
    rows = []
    for q in range(len(ids)):
        row = []
        for a in "01":
            if (q, a) not in edges:
                raise SemanticError(f"transducer {b.name!r}: missing edge (state {q}, letter {a})")
            row.append(edges[q, a])
        rows.append(tuple(row))
    if b.domain is None:
        raise SemanticError(f"transducer {b.name!r} has no domain line")
    dom = model.closed_set(b.domain)
    try:
        return Transducer(tuple(rows), dom, b.name)
    except NonProductive as exc:
        raise SemanticError(f"transducer {b.name!r}: {exc}") from None


def _build_table(b: _Block) -> FiniteStageMap:
    for key in ("depth", "resolution", "stage"):
        if key not in b.params:
            raise SemanticError(f"table {b.name!r} lacks '{key}'")
    try:
        return FiniteStageMap.from_table(b.params["depth"], b.rows, b.params["resolution"], b.params["stage"], b.name)
    except TableError as exc:
        raise SemanticError(f"table {b.name!r}: {exc}") from None


class _SetExpr:
    _TOK = re.compile(r"\s*([A-Za-z_]+:[A-Za-z0-9_\-]+|[A-Za-z_]+|[01]+|eps|\(|\)|,)")

    def __init__(self, text: str, model: Model):
        self.model = model
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = self._TOK.match(text, pos)
            if not m:
                raise SemanticError(f"cannot parse set expression near {text[pos:]!r}")
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0
        self.text = text

    def take(self, expect: str | None = None) -> str:
        if self.i >= len(self.tokens):
            raise SemanticError(f"unexpected end of set expression {self.text!r}")
        t = self.tokens[self.i]
        self.i += 1
        if expect is not None and t != expect:
            raise SemanticError(f"expected {expect!r} in set expression, got {t!r}")
        return t

    def parse(self) -> RegSet:
        e = self.expr()
        if self.i != len(self.tokens):
            raise SemanticError(f"trailing tokens in set expression {self.text!r}")
        return e

    def expr(self) -> RegSet:
        t = self.take()
        if ":" in t:
            kind, name = t.split(":", 1)
            if kind == "closed":
                return RegSet.from_closed(self.model.closed_set(name))
            if kind == "regset":
                if name not in self.model.regsets:
                    raise SemanticError(f"undefined regset {name!r}")
                return self.model.regsets[name]
            if kind == "set":
                if name not in self.model.sets:
                    raise SemanticError(f"undefined set {name!r}")
                return self.model.eval_set(self.model.sets[name])
            raise SemanticError(f"unknown reference kind {kind!r}")
        if t == "cyl":
            self.take("(")
            w = self.take()
            self.take(")")
            if w == "eps":
                w = ""
            elif not re.fullmatch(r"[01]+", w):
                raise SemanticError(f"bad cylinder stem {w!r}")
            return RegSet.from_clopen(ClopenSet([w]))
        if t in ("union", "inter", "diff"):
            self.take("(")
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take(")")
            return {"union": a.union, "inter": a.intersect, "diff": a.difference}[t](b)
        if t == "compl":
            self.take("(")
            a = self.expr()
            self.take(")")
            return a.complement()
        raise SemanticError(f"unexpected token {t!r} in set expression")


def bundled_model() -> Model:
    """The shipped example corpus plus the finite-stage nowhere-open table."""
    data = resources.files("cantortopo") / "data"
    model = parse_spec((data / "corpus.txt").read_text())
    return model.merge(parse_spec((data / "nowhere_table.txt").read_text()))
