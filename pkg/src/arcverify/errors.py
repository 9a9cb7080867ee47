"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """One structural problem found while validating an input."""

    kind: str
    detail: str
    subject: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"kind": self.kind, "detail": self.detail, "subject": list(self.subject)}


class ArcVerifyError(Exception):
    """Base class for every error raised by arcverify."""


class TopologyError(ArcVerifyError, ValueError):
    """A topology failed validation. Carries every violation, not just the first."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        kinds = ", ".join(sorted({v.kind for v in self.violations}))
        super().__init__(f"invalid topology ({len(self.violations)} violation(s): {kinds})")


class UnknownNode(ArcVerifyError, KeyError):
    def __init__(self, node: str):
        self.node = node
        super().__init__(node)

    def __str__(self) -> str:
        return f"unknown node {self.node!r}"


class BudgetExceeded(ArcVerifyError):
    """Finite enumeration grew past the configured budget."""

    def __init__(self, budget: int, what: str = "paths"):
        self.budget = budget
        super().__init__(f"enumeration of {what} exceeded budget of {budget}")


class CyclicGraph(ArcVerifyError, ValueError):
    def __init__(self, cycle):
        self.cycle = tuple(cycle)
        super().__init__("graph has a cycle")


class InfiniteClosure(ArcVerifyError):
    """The arc closure of a path set is infinite.

    ``cycle`` is the closed vertex sequence of a cycle in the closure graph
    (arcs, first vertex repeated at the end).
    """

    def __init__(self, cycle, message: str = "arc closure is infinite"):
        self.cycle = tuple(cycle)
        super().__init__(message)


class NoFiniteSuperset(InfiniteClosure):
    def __init__(self, cycle):
        super().__init__(cycle, "no finite arc-closed superset exists")


class LoopDetected(InfiniteClosure):
    """A rule chain revisits a directed arc.

    ``walk`` is the node sequence of a shortest witness walk starting at a
    host; ``repeated_arc`` is the arc it traverses twice.
    """

    def __init__(self, walk, repeated_arc):
        self.walk = tuple(walk)
        self.repeated_arc = tuple(repeated_arc)
        arcs = list(zip(self.walk, self.walk[1:]))
        first = arcs.index(self.repeated_arc)
        last = len(arcs) - 1 - arcs[::-1].index(self.repeated_arc)
        super().__init__(arcs[first : last + 1], "forwarding loop detected")


class RepairImpossible(ArcVerifyError):
    """Rerouting could not make the path set arc closed."""

    def __init__(self, message: str, pair=None, arc=None, diagnostics=None):
        self.pair = tuple(pair) if pair is not None else None
        self.arc = tuple(arc) if arc is not None else None
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class EmptyUnusedSet(RepairImpossible):
    pass
