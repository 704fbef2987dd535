"""Finite-stage maps: a continuous map known only through a monotone table.

The table assigns output words to the input words of length ``depth`` (the
leaves); each leaf stands for the point ``output . 0^omega``. Inner words get
the longest common prefix of the outputs below them, which makes the table
monotone. Openness is judged at output resolution ``resolution``: an image
piece ``I`` is relatively open in ``Y`` when no point of ``Y - I`` shares its
first ``resolution`` letters with a point of ``I``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .oracle import rel_open_points
from .transducers import NowhereStatus, NowhereVerdict, OpennessVerdict, OpenStatus
from .words import Point, check_word, eventually_zero, shortlex


class TableError(ValueError):
    pass


def _lcp(words: Iterable[str]) -> str:
    return os.path.commonprefix(list(words))


@dataclass(frozen=True)
class FiniteStageMap:
    depth: int
    leaves: tuple[tuple[str, str], ...]
    resolution: int
    stage: int
    name: str = field(default="", compare=False)

    def __post_init__(self):
        seen = set()
        for v, out in self.leaves:
            check_word(v)
            check_word(out)
            if len(v) != self.depth:
                raise TableError(f"leaf {v!r} does not have length {self.depth}")
            if v in seen:
                raise TableError(f"duplicate leaf {v!r}")
            seen.add(v)
        if not seen:
            raise TableError("table has no leaves")
        if not 0 <= self.stage <= self.depth:
            raise TableError("stage must lie between 0 and the table depth")

    @classmethod
    def from_table(cls, depth: int, table: Mapping[str, str], resolution: int, stage: int, name: str = "") -> "FiniteStageMap":
        """Build from rows for any words; inner rows must be prefixes of the leaves below."""
        leaves = {v: out for v, out in table.items() if len(v) == depth}
        fm = cls(depth, tuple(sorted(leaves.items())), resolution, stage, name)
        for w, out in table.items():
            if len(w) > depth:
                raise TableError(f"row {w!r} is deeper than the table")
            if len(w) < depth:
                below = fm.leaves_under(w)
                if not below:
                    raise TableError(f"row {w!r} has no leaf below it")
                if not all(fm.table[v].startswith(out) for v in below):
                    raise TableError(f"non-monotone table at {w!r}")
        return fm

    @property
    def table(self) -> dict[str, str]:
        return dict(self.leaves)

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.leaves)

    def leaves_under(self, stem: str, within: Iterable[str] | None = None) -> list[str]:
        pool = self.domain if within is None else within
        return sorted(v for v in pool if v.startswith(stem))

    def output(self, w: str) -> str:
        return _lcp(self.table[v] for v in self.leaves_under(w))

    def image(self, v: str) -> Point:
        return eventually_zero(self.table[v])

    def images(self, leaves: Iterable[str]) -> set[Point]:
        return {self.image(v) for v in leaves}

    def stems(self, within: Iterable[str] | None = None, max_len: int | None = None) -> list[str]:
        pool = self.domain if within is None else frozenset(within)
        top = self.depth if max_len is None else max_len
        return shortlex({v[:i] for v in pool for i in range(min(top, self.depth) + 1)})

    def is_injective(self) -> bool:
        return len(self.images(self.domain)) == len(self.leaves)

    def to_text(self, name: str | None = None) -> str:
        lines = [f"table {name or self.name or 'anon'}", f"depth {self.depth}", f"resolution {self.resolution}", f"stage {self.stage}"]
        for v, out in self.leaves:
            lines.append(f"map {v} {out or 'eps'}")
        return "\n".join(lines)


def table_check_open(m: FiniteStageMap, within: Iterable[str] | None = None) -> OpennessVerdict:
    """Every sub-cylinder image must be relatively open in the image of ``within``."""
    pool = m.domain if within is None else frozenset(within)
    if not pool:
        return OpennessVerdict(OpenStatus.OPEN, None, m.depth)
    y = m.images(pool)
    for s in m.stems(pool):
        piece = m.images(m.leaves_under(s, pool))
        if rel_open_points(y, piece, m.resolution):
            return OpennessVerdict(OpenStatus.NOT_OPEN, s, len(s))
    return OpennessVerdict(OpenStatus.OPEN, None, m.depth)


def table_check_nowhere_open(m: FiniteStageMap, z: Iterable[str] | None = None, stage: int | None = None) -> NowhereVerdict:
    pool = m.domain if z is None else frozenset(z)
    if not pool <= m.domain:
        raise TableError("Z is not inside the table domain")
    stage = m.stage if stage is None else stage
    for w in m.stems(pool, stage):
        if table_check_open(m, m.leaves_under(w, pool)).status == OpenStatus.OPEN:
            return NowhereVerdict(NowhereStatus.NOT_NOWHERE_OPEN, len(w), w)
    return NowhereVerdict(NowhereStatus.NOWHERE_OPEN_UP_TO_DEPTH, stage)
