"""Strip clopen pieces on which the map is open until only a nowhere-open kernel is left.

Each round scans stems in shortlex order; a stem ``w`` whose piece
``[w] & X_a`` is nonempty and on which the restricted map is open is recorded
and removed, ``X_(a+1) = X_a - [w]``. A round that removes nothing ends the
chain; whatever remains is the residual kernel ``Z``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .closed import SafetyAutomaton
from .finite_map import FiniteStageMap, table_check_nowhere_open, table_check_open
from .transducers import (
    NowhereVerdict,
    OpenStatus,
    Transducer,
    check_nowhere_open,
    check_open,
    is_injective,
)
from .words import ClopenSet, shortlex


class DecompositionStatus(str, enum.Enum):
    FULLY_DECOMPOSED = "FullyDecomposed"
    RESIDUAL_REMAINS = "ResidualRemains"
    DEPTH_CAPPED = "DepthCapped"

    def __str__(self) -> str:
        return self.value


@dataclass
class DecompositionResult:
    pieces: list[tuple[str, object]]
    residual: object
    trace: list[tuple[int, list[str]]]
    status: DecompositionStatus
    chain: list[object] = field(default_factory=list)
    nowhere: NowhereVerdict | None = None
    pieces_open: list[bool] = field(default_factory=list)
    injective: bool | None = None
    piecewise_homeomorphism: bool = False


def _is_empty(x) -> bool:
    return x.is_empty() if isinstance(x, SafetyAutomaton) else not x


def _transducer_rounds(t: Transducer, budget_depth: int, budget_rounds: int, depth_cap: int):
    x = t.domain
    chain = [x]
    pieces = []
    trace = []
    for rnd in range(1, budget_rounds + 1):
        removed = []
        # openness of a restriction depends only on (machine state, X-state) after the stem
        closed_sigs: set = set()
        frontier = [("", 0, 0)]
        while frontier:
            nxt = []
            for w, q, s in frontier:
                if x.is_empty():
                    break
                s_now = x.run(w)
                if s_now is None:
                    continue
                if (q, s_now) not in closed_sigs:
                    piece = x.restrict(w)
                    if check_open(t.with_domain(piece), depth_cap).status == OpenStatus.OPEN:
                        pieces.append((w, piece))
                        removed.append(w)
                        x = x.minus_clopen(ClopenSet([w]))
                        chain.append(x)
                        closed_sigs.clear()
                        continue
                    closed_sigs.add((q, s_now))
                if len(w) < budget_depth:
                    for i, a in enumerate("01"):
                        nxt.append((w + a, t.step[q][i][0], None))
            frontier = nxt
        trace.append((rnd, removed))
        if not removed or x.is_empty():
            return x, pieces, trace, chain, False
    return x, pieces, trace, chain, True


def _table_rounds(m: FiniteStageMap, budget_depth: int, budget_rounds: int):
    x = m.domain
    chain = [x]
    pieces = []
    trace = []
    top = min(budget_depth, m.stage)
    for rnd in range(1, budget_rounds + 1):
        removed = []
        for w in shortlex({v[:i] for v in m.domain for i in range(top + 1)}):
            piece = frozenset(m.leaves_under(w, x))
            if not piece:
                continue
            if table_check_open(m, piece).status == OpenStatus.OPEN:
                pieces.append((w, piece))
                removed.append(w)
                x = x - piece
                chain.append(x)
        trace.append((rnd, removed))
        if not removed or not x:
            return x, pieces, trace, chain, False
    return x, pieces, trace, chain, True


def kernel_decompose(f, budget_depth: int = 10, budget_rounds: int = 32, depth_cap: int = 12) -> DecompositionResult:
    if isinstance(f, Transducer):
        if f.domain.is_empty():
            raise ValueError("transducer domain is empty")
        x, pieces, trace, chain, capped = _transducer_rounds(f, budget_depth, budget_rounds, depth_cap)
        nowhere = None if x.is_empty() else check_nowhere_open(f, x, depth_cap)
        pieces_open = [check_open(f.with_domain(p), depth_cap).status == OpenStatus.OPEN for _, p in pieces]
    elif isinstance(f, FiniteStageMap):
        x, pieces, trace, chain, capped = _table_rounds(f, budget_depth, budget_rounds)
        nowhere = None if not x else table_check_nowhere_open(f, x, min(budget_depth, f.stage))
        pieces_open = [table_check_open(f, p).status == OpenStatus.OPEN for _, p in pieces]
    else:
        raise TypeError(f"unsupported map backend {type(f).__name__}")

    if _is_empty(x):
        status = DecompositionStatus.FULLY_DECOMPOSED
    elif capped or (nowhere is not None and nowhere.status != "NowhereOpenUpToDepth"):
        # an open piece survives below the scan depth, or rounds ran out
        status = DecompositionStatus.DEPTH_CAPPED
    else:
        status = DecompositionStatus.RESIDUAL_REMAINS

    result = DecompositionResult(pieces, x, trace, status, chain, nowhere, pieces_open)
    if isinstance(f, Transducer):
        result.injective = is_injective(f).injective
    else:
        result.injective = f.is_injective()
    result.piecewise_homeomorphism = bool(
        result.injective and status == DecompositionStatus.FULLY_DECOMPOSED and all(pieces_open)
    )
    return result
