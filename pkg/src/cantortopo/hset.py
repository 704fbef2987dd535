"""The Hurewicz standard set H and the finite-stage construction of a discrete set D.

Points of H are coded as ``p_(i1..ik) = 0^(i1-1) 1 ... 0^(ik-1) 1 . 0^omega`` with
root ``p = 0^omega``; the neighbourhood base ``U^j(q)`` is the cylinder on
``code(q) . 0^(j-1)``.

``construct_d`` looks, inside a set ``Z`` on which the map is nowhere open, for
points ``x_idx`` with ``f(x_idx) = p_idx`` and pairwise disjoint isolating
cylinders ``U^1(x_idx)``; for odd-length indices the cylinder must avoid every
preimage of the children ``p_(idx, l)``. Odd-length indices form ``D``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .closed import SafetyAutomaton, member
from .finite_map import FiniteStageMap
from .omega import RegSet, is_empty_omega
from .transducers import Transducer, eval_point, image_closed, is_injective, preimage_point
from .words import ClopenSet, Cylinder, Point, comparable, eventually_zero

Index = tuple[int, ...]


def code_word(idx: Index) -> str:
    return "".join("0" * (i - 1) + "1" for i in idx)


def h_point(idx: Index) -> Point:
    return eventually_zero(code_word(idx))


def h_index(p: Point) -> Index | None:
    """Inverse of :func:`h_point` (``None`` for points outside H)."""
    if p.cycle != "0":
        return None
    out = []
    run = 0
    for a in p.head:
        run += 1
        if a == "1":
            out.append(run)
            run = 0
    return tuple(out)


def format_index(idx: Index) -> str:
    return "<" + ",".join(map(str, idx)) + ">"


def parse_index(text: str) -> Index:
    text = text.strip()
    if not (text.startswith("<") and text.endswith(">")):
        raise ValueError(f"bad index {text!r}")
    body = text[1:-1].strip()
    return tuple(int(t) for t in body.split(",")) if body else ()


def _word_text(w: str | None) -> str:
    if w is None:
        return "-"
    return w or "eps"


def _parse_word(t: str) -> str | None:
    if t == "-":
        return None
    return "" if t == "eps" else t


@dataclass(frozen=True)
class HFamily:
    k_max: int
    i_max: int
    codes: tuple[tuple[Index, str], ...]
    # (index, j) -> stem, replacing the default base U^j(q) = code(q) 0^(j-1)
    base_overrides: tuple[tuple[tuple[Index, int], str], ...] = ()

    @property
    def code(self) -> dict[Index, str]:
        return dict(self.codes)

    def indices(self) -> list[Index]:
        return [idx for idx, _ in self.codes]

    def point(self, idx: Index) -> Point:
        return eventually_zero(self.code[idx])

    def base(self, idx: Index, j: int) -> Cylinder:
        override = dict(self.base_overrides).get((idx, j))
        if override is not None:
            return Cylinder(override)
        return Cylinder(self.code[idx] + "0" * (j - 1))

    def children(self, idx: Index) -> list[Index]:
        if len(idx) >= self.k_max:
            return []
        code = self.code
        return [idx + (m,) for m in range(1, self.i_max + 1) if idx + (m,) in code]

    def to_text(self) -> str:
        lines = [f"hfamily k_max={self.k_max} i_max={self.i_max}"]
        for idx, w in self.codes:
            lines.append(f"{format_index(idx)} {_word_text(w)}")
        return "\n".join(lines)

    @classmethod
    def parse(cls, text: str) -> "HFamily":
        header = None
        codes = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("hfamily"):
                header = dict(tok.split("=") for tok in line.split()[1:])
                continue
            if line.startswith("<"):
                idx_text, word = line.rsplit(None, 1)
                codes.append((parse_index(idx_text), _parse_word(word)))
        if header is None:
            raise ValueError("missing 'hfamily' header")
        return cls(int(header["k_max"]), int(header["i_max"]), tuple(codes))


def _tuples(k_max: int, i_max: int) -> Iterator[Index]:
    for k in range(k_max + 1):
        yield from itertools.product(range(1, i_max + 1), repeat=k)


def generate_h(k_max: int, i_max: int) -> HFamily:
    if k_max < 1 or i_max < 1:
        raise ValueError("k_max and i_max must be positive")
    return HFamily(k_max, i_max, tuple((idx, code_word(idx)) for idx in _tuples(k_max, i_max)))


@dataclass
class HReport:
    a: bool
    b: bool
    c: bool
    no_isolated: bool
    a_printed: bool
    points: int

    @property
    def ok(self) -> bool:
        return self.a and self.b and self.c and self.no_isolated


def check_h_conditions(h: HFamily) -> HReport:
    code = h.code
    inner = [idx for idx in code if len(idx) < h.k_max]
    a = True
    a_printed = True
    b = True
    for idx in code:
        # base monotonicity U^(j+1) inside U^j
        for j in range(1, h.i_max + 1):
            if not h.base(idx, j + 1).stem.startswith(h.base(idx, j).stem):
                a = False
    for idx in inner:
        parent_u1 = h.base(idx, 1).stem
        kids = h.children(idx)
        for child in kids:
            child_u1 = h.base(child, 1).stem
            if not child_u1.startswith(parent_u1):
                a = False
            if idx and not child_u1.startswith(h.base(idx, idx[-1]).stem):
                a_printed = False
        for c1, c2 in itertools.combinations(kids, 2):
            if comparable(h.base(c1, 1).stem, h.base(c2, 1).stem):
                b = False
    c = all(
        h.base(idx, idx[0]).diameter() < Fraction(1, sum(idx))
        for idx in code
        if idx
    )
    no_isolated = True
    for idx in inner:
        q = h.point(idx)
        n = len(code[idx])
        dists = []
        for child in h.children(idx):
            p = h.point(child)
            if p == q or p not in h.base(idx, 1):
                no_isolated = False
                break
            dists.append(p.distance(q))
        if not no_isolated or len(dists) != h.i_max:
            no_isolated = False
            break
        if any(d2 >= d1 for d1, d2 in zip(dists, dists[1:])):
            no_isolated = False
            break
        # some generated point within 2^-m for every m up to |code| + i_max - 1
        if dists[-1] > Fraction(1, 2 ** (n + h.i_max - 1)):
            no_isolated = False
            break
    if len(set(code.values())) != len(code):
        b = False
    return HReport(a, b, c, no_isolated, a_printed, sum(1 for idx in code if idx))


# -- the discrete set D -----------------------------------------------------------


class ConstructionObstructed(RuntimeError):
    def __init__(self, index: Index, reason: str):
        super().__init__(f"construction obstructed at {format_index(index)}: {reason}")
        self.index = index
        self.reason = reason


def children_set(idx: Index) -> RegSet:
    """The points ``p_(idx, l)`` for all ``l >= 1`` as a regular set."""
    word = code_word(idx)

    def step(q, a):
        if isinstance(q, int):
            if q < len(word):
                return q + 1 if word[q] == a else "dead"
            return "zeros" if a == "0" else "tail"
        if q == "zeros":
            return "zeros" if a == "0" else "tail"
        if q == "tail":
            return "tail" if a == "0" else "dead"
        return "dead"

    return RegSet.explore(0, step, lambda ix: ("inf", ix["tail"]) if "tail" in ix else ("false",))


class _TransducerBackend:
    kind = "transducer"

    def __init__(self, t: Transducer, z: SafetyAutomaton, max_stem: int):
        self.t = t
        self.z = z
        self.max_stem = max_stem

    def empty(self) -> bool:
        return self.z.is_empty()

    def point(self, x: Point) -> Point:
        return x

    def image(self, x: Point) -> Point:
        return eval_point(self.t, x)

    def find(self, target: Point, inside: str, avoid: list[str]) -> Point | None:
        region = preimage_point(self.t, target).intersect(self.z).restrict(inside)
        if avoid:
            region = region.minus_clopen(ClopenSet(avoid))
        return None if region.is_empty() else region.least_point()

    def misses(self, stem: str, idx: Index, n: int) -> bool:
        piece = image_closed(self.t, self.z.restrict(stem))
        return is_empty_omega(RegSet.from_closed(piece).intersect(children_set(idx)))

    def injective(self) -> bool:
        return is_injective(self.t).injective


class _TableBackend:
    kind = "table"

    def __init__(self, m: FiniteStageMap, z: frozenset[str]):
        self.m = m
        self.z = z
        self.max_stem = m.depth

    def empty(self) -> bool:
        return not self.z

    def point(self, x: str) -> Point:
        return eventually_zero(x)

    def image(self, x: str) -> Point:
        return self.m.image(x)

    def find(self, target: Point, inside: str, avoid: list[str]) -> str | None:
        for v in sorted(self.z):
            if v.startswith(inside) and not any(v.startswith(s) for s in avoid) and self.m.image(v) == target:
                return v
        return None

    def misses(self, stem: str, idx: Index, n: int) -> bool:
        targets = {h_point(idx + (l,)) for l in range(1, n + 1)}
        return not any(self.m.image(v) in targets for v in self.z if v.startswith(stem))

    def injective(self) -> bool:
        return self.m.is_injective()


@dataclass
class DEntry:
    index: Index
    point: Point
    stem: str | None
    image_index: Index | None

    @property
    def in_d(self) -> bool:
        return len(self.index) % 2 == 1


@dataclass
class DConstruction:
    N: int
    d: int
    entries: list[DEntry]
    map_name: str = ""
    backend: str = ""
    flags: list[str] = field(default_factory=list)

    @property
    def d_points(self) -> list[DEntry]:
        return [e for e in self.entries if e.in_d]

    def to_text(self) -> str:
        lines = [f"dconstruction map={self.map_name or 'anon'} backend={self.backend} N={self.N} d={self.d}"]
        for e in self.entries:
            image = "-" if e.image_index is None else format_index(e.image_index)
            lines.append(f"{format_index(e.index)} {e.point} {_word_text(e.stem)} {image}")
        return "\n".join(lines)

    @classmethod
    def parse(cls, text: str) -> "DConstruction":
        header = None
        entries = []
        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if line.startswith("dconstruction"):
                header = dict(tok.split("=", 1) for tok in line.split()[1:])
                continue
            if line.startswith("<"):
                idx, point, stem, image = line.split()
                entries.append(
                    DEntry(parse_index(idx), Point.parse(point), _parse_word(stem), None if image == "-" else parse_index(image))
                )
        if header is None:
            raise ValueError("missing 'dconstruction' header")
        return cls(int(header["N"]), int(header["d"]), entries, header.get("map", ""), header.get("backend", ""))


def _backend(f, z, max_stem: int):
    if isinstance(f, Transducer):
        z = f.domain if z is None else z
        if not z.subset_of(f.domain):
            raise ValueError("Z is not inside the map domain")
        return _TransducerBackend(f, z, max_stem)
    if isinstance(f, FiniteStageMap):
        return _TableBackend(f, f.domain if z is None else frozenset(z))
    raise TypeError(f"unsupported map backend {type(f).__name__}")


def construct_d(f, z=None, N: int = 2, d: int = 3, max_stem: int = 16) -> DConstruction:
    """Greedy finite-stage construction; every choice is the least admissible one."""
    be = _backend(f, z, max_stem)
    if be.empty():
        raise ConstructionObstructed((), "Z is empty")
    root = be.find(h_point(()), "", [])
    if root is None:
        raise ConstructionObstructed((), "no point of Z maps to the root of H")
    entries = [DEntry((), be.point(root), None, ())]
    used: list[str] = []

    def choose_stem(x, inside: str, chain: list[str], anchor, miss: Index | None) -> str | None:
        others = [s for s in used if s not in chain]
        for length in range(len(inside) + 1, be.max_stem + 1):
            s = be.point(x).prefix(length)
            if any(comparable(s, u) for u in others):
                continue
            if anchor is not None and be.point(anchor).prefix(length) == s:
                continue
            if miss is not None and not be.misses(s, miss, N):
                continue
            return s
        return None

    def place(idx: Index, inside: str, chain: list[str], anchor, miss: bool):
        avoid = [s for s in used if s not in chain]
        x = be.find(h_point(idx), inside, avoid)
        if x is None:
            raise ConstructionObstructed(idx, "no free point of Z maps to this H-point")
        stem = choose_stem(x, inside, chain, anchor, idx if miss else None)
        if stem is None:
            why = "every small neighbourhood meets preimages of the children" if miss else "no free isolating cylinder"
            raise ConstructionObstructed(idx, why)
        used.append(stem)
        entries.append(DEntry(idx, be.point(x), stem, h_index(be.image(x))))
        return x, stem

    def grow(idx: Index, inside: str, chain: list[str], anchor) -> None:
        if len(idx) + 1 > d:
            return
        kids = []
        for k in range(1, N + 1):
            kids.append(place(idx + (k,), inside, chain, anchor, miss=True))
        if len(idx) + 2 > d:
            return
        for k, (xk, _) in enumerate(kids, start=1):
            for l in range(1, N + 1):
                gx, gstem = place(idx + (k, l), inside, chain, anchor, miss=False)
                grow(idx + (k, l), gstem, chain + [gstem], gx)

    grow((), "", [], root)
    out = DConstruction(N, d, entries, getattr(f, "name", ""), be.kind)
    out.flags.append("first-step neighbourhoods are cylinders intersected with Z")
    return out


@dataclass
class DReport:
    discrete: bool
    dense: bool
    codense: bool
    image_match: bool | None
    images_ok: bool | None = None

    @property
    def ok(self) -> bool:
        return self.discrete and self.dense and self.codense and self.image_match is not False and self.images_ok is not False


def verify_d(c: DConstruction, f=None, z=None) -> DReport:
    dset = c.d_points
    discrete = all(e.stem is not None for e in dset)
    if discrete:
        for e1, e2 in itertools.combinations(dset, 2):
            if comparable(e1.stem, e2.stem):
                discrete = False
        for e in dset:
            inside = [o for o in dset if o.point.prefix(len(e.stem)) == e.stem]
            if inside != [e]:
                discrete = False
    stage = generate_h(c.d, c.N)
    images = {h_point(e.image_index) for e in dset if e.image_index is not None}
    dense = True
    codense = True
    for idx in stage.indices():
        if len(idx) >= c.d:
            continue
        u = stage.base(idx, 1)
        if not any(p in u for p in images):
            dense = False
        if not any(len(j) % 2 == 0 and stage.point(j) in u and stage.point(j) not in images for j in stage.indices()):
            codense = False
    images_ok = None
    image_match = None
    if f is not None:
        be = _backend(f, z, 16)
        images_ok = True
        for e in c.entries:
            x = e.point.prefix(be.m.depth) if be.kind == "table" else e.point
            try:
                got = h_index(be.image(x))
            except (KeyError, ValueError):
                got = None
            if got != e.image_index:
                images_ok = False
        if be.injective():
            h_stage = {stage.point(j) for j in stage.indices()}
            stems = [e.stem for e in dset if e.stem is not None]
            if be.kind == "table":
                hit = {be.image(v) for v in be.z if any(v.startswith(s) for s in stems)}
            else:
                region = be.z.intersect(SafetyAutomaton.from_clopen(ClopenSet(stems)))
                img = image_closed(be.t, region)
                hit = {p for p in h_stage if member(p, img)}
            image_match = (hit & h_stage) == (images & h_stage)
    return DReport(discrete, dense, codense, image_match, images_ok)


def hset_lines(h: HFamily) -> list[str]:
    return [f"{format_index(idx)} {_word_text(w)}" for idx, w in sorted(h.codes, key=lambda t: (len(t[0]), t[0]))]

