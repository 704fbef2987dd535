"""Binary words, ultimately periodic points, cylinders and clopen sets.

Words are plain ``str`` objects over ``'0'``/``'1'``; the empty word is ``""``.
The metric on Cantor space is fixed as ``d(x, y) = 2**-n`` with ``n`` the
length of the longest common prefix.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

LETTERS = "01"
_WORD_RE = re.compile(r"^[01]*$")


def check_word(w: str) -> str:
    if not _WORD_RE.match(w):
        raise ValueError(f"not a binary word: {w!r}")
    return w


def all_words(length: int) -> Iterator[str]:
    """All binary words of exactly ``length`` letters, in lexicographic order."""
    for bits in itertools.product(LETTERS, repeat=length):
        yield "".join(bits)


def shortlex(words: Iterable[str]) -> list[str]:
    return sorted(words, key=lambda w: (len(w), w))


def _primitive_root(v: str) -> str:
    n = len(v)
    for d in range(1, n + 1):
        if n % d == 0 and v[:d] * (n // d) == v:
            return v[:d]
    return v


@dataclass(frozen=True, order=True)
class Point:
    """The ultimately periodic sequence ``head . cycle^omega``, kept canonical."""

    head: str
    cycle: str

    def __post_init__(self):
        check_word(self.head)
        check_word(self.cycle)
        if not self.cycle:
            raise ValueError("point cycle must be nonempty")
        head, cycle = self.head, _primitive_root(self.cycle)
        while head and head[-1] == cycle[-1]:
            head = head[:-1]
            cycle = cycle[-1] + cycle[:-1]
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "cycle", cycle)

    @classmethod
    def parse(cls, text: str) -> "Point":
        m = re.fullmatch(r"\s*([01]*)\(([01]+)\)\s*", text)
        if not m:
            raise ValueError(f"bad point syntax: {text!r}")
        return cls(m.group(1), m.group(2))

    def __str__(self) -> str:
        return f"{self.head}({self.cycle})"

    def letter(self, i: int) -> str:
        if i < len(self.head):
            return self.head[i]
        return self.cycle[(i - len(self.head)) % len(self.cycle)]

    def prefix(self, n: int) -> str:
        return "".join(self.letter(i) for i in range(n))

    def shift(self, n: int) -> "Point":
        """Drop the first ``n`` letters."""
        if n <= len(self.head):
            return Point(self.head[n:], self.cycle)
        k = (n - len(self.head)) % len(self.cycle)
        return Point("", self.cycle[k:] + self.cycle[:k])

    def common_prefix_length(self, other: "Point") -> int | None:
        """Length of the longest common prefix, or ``None`` when equal."""
        if self == other:
            return None
        bound = max(len(self.head), len(other.head)) + len(self.cycle) * len(other.cycle)
        for i in range(bound + 1):
            if self.letter(i) != other.letter(i):
                return i
        raise AssertionError("unequal canonical points agree past the lasso bound")

    def distance(self, other: "Point") -> Fraction:
        n = self.common_prefix_length(other)
        return Fraction(0) if n is None else Fraction(1, 2**n)


def eventually_zero(w: str) -> Point:
    return Point(w, "0")


@dataclass(frozen=True)
class Cylinder:
    stem: str

    def __post_init__(self):
        check_word(self.stem)

    def diameter(self) -> Fraction:
        return Fraction(1, 2 ** len(self.stem))

    def __contains__(self, p: Point) -> bool:
        return p.prefix(len(self.stem)) == self.stem


def cylinder_diameter(c: Cylinder) -> Fraction:
    return c.diameter()


def comparable(u: str, v: str) -> bool:
    """True when one word is a prefix of the other (the cylinders intersect)."""
    return u.startswith(v) or v.startswith(u)


def normalize(stems: Iterable[str]) -> frozenset[str]:
    """Canonical antichain with no sibling pair, denoting the same open set."""
    current = {check_word(w) for w in stems}
    while True:
        # absorb stems that have a proper prefix in the set
        current = {w for w in current if not any(w[:i] in current for i in range(len(w)))}
        merged = {w[:-1] for w in current if w and w[-1] == "0" and w[:-1] + "1" in current}
        if not merged:
            return frozenset(current)
        current |= merged


@dataclass(frozen=True)
class ClopenSet:
    """A finite union of cylinders, stored as a normalized antichain of stems."""

    stems: frozenset[str]

    def __init__(self, stems: Iterable[str] = ()):
        object.__setattr__(self, "stems", normalize(stems))

    @classmethod
    def parse(cls, text: str) -> "ClopenSet":
        return cls("" if t == "eps" else t for t in text.split())

    def __str__(self) -> str:
        return " ".join("eps" if w == "" else w for w in shortlex(self.stems))

    def __iter__(self):
        return iter(shortlex(self.stems))

    def is_empty(self) -> bool:
        return not self.stems

    def is_full(self) -> bool:
        return self.stems == frozenset({""})

    def contains_word(self, w: str) -> bool:
        """True if every point extending ``w`` lies in the set."""
        return any(w.startswith(s) for s in self.stems)

    def meets_word(self, w: str) -> bool:
        return any(comparable(w, s) for s in self.stems)

    def words_at(self, k: int) -> set[str]:
        """Length-``k`` words whose cylinders meet the set."""
        out = set()
        for s in self.stems:
            if len(s) >= k:
                out.add(s[:k])
            else:
                out.update(s + t for t in all_words(k - len(s)))
        return out

    def __contains__(self, p: Point) -> bool:
        return point_in_clopen(p, self)

    def complement(self) -> "ClopenSet":
        return complement_clopen(self)

    def union(self, other: "ClopenSet") -> "ClopenSet":
        return ClopenSet(self.stems | other.stems)

    def intersect(self, other: "ClopenSet") -> "ClopenSet":
        out = []
        for u in self.stems:
            for v in other.stems:
                if comparable(u, v):
                    out.append(max(u, v, key=len))
        return ClopenSet(out)

    def max_length(self) -> int:
        return max((len(s) for s in self.stems), default=0)


def complement_clopen(u: ClopenSet) -> ClopenSet:
    out: list[str] = []

    def walk(w: str) -> None:
        if w in u.stems:
            return
        if not any(s.startswith(w) for s in u.stems):
            out.append(w)
            return
        walk(w + "0")
        walk(w + "1")

    walk("")
    return ClopenSet(out)


def point_in_clopen(p: Point, u: ClopenSet) -> bool:
    return any(p.prefix(len(s)) == s for s in u.stems)
