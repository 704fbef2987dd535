"""Decide resolvability of a regular set relative to a closed regular ambient space.

The derivative ``d(E, F) = cl_X(F & E) & cl_X(F - E)`` is monotone in ``F``,
so iterating it from ``F = X`` reaches the largest closed ``F`` with
``d(E, F) = F``. ``E`` is resolvable iff that fixpoint is empty.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .closed import AmbientViolation, SafetyAutomaton, default_budget
from .omega import RegSet, closure


class Status(str, enum.Enum):
    RESOLVABLE = "Resolvable"
    NOT_RESOLVABLE = "NotResolvable"
    UNKNOWN = "Unknown"

    def __str__(self) -> str:
        return self.value


@dataclass
class ResolvabilityVerdict:
    status: Status
    steps: int
    witness: SafetyAutomaton | None = None
    trace: list[SafetyAutomaton] = field(default_factory=list)


def derivative(e: RegSet, f: SafetyAutomaton, ambient: SafetyAutomaton) -> SafetyAutomaton:
    if not f.subset_of(ambient):
        raise AmbientViolation("closed set is not contained in the ambient space")
    if f.is_empty():
        return f
    inside = RegSet.from_closed(f)
    a = closure(inside.intersect(e))
    if a.is_empty():
        return a
    b = closure(inside.intersect(e.complement()))
    # X closed, so cl_X(A) = cl(A) & X
    return a.intersect(b).intersect(ambient)


def check_resolvable(e: RegSet, ambient: SafetyAutomaton | None = None, budget: int | None = None) -> ResolvabilityVerdict:
    ambient = SafetyAutomaton.full() if ambient is None else ambient
    budget = default_budget(50) if budget is None else budget
    if ambient.is_empty():
        raise ValueError("ambient space must be nonempty")
    f = ambient
    trace = [f]
    for step in range(1, budget + 1):
        g = derivative(e, f, ambient)
        trace.append(g)
        if g.is_empty():
            return ResolvabilityVerdict(Status.RESOLVABLE, step, None, trace)
        if g == f:
            return ResolvabilityVerdict(Status.NOT_RESOLVABLE, step, g, trace)
        f = g
    return ResolvabilityVerdict(Status.UNKNOWN, budget, None, trace)
