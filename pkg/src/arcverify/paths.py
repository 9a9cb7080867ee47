"""Requested data paths and their structural checks."""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from arcverify.errors import UnknownNode
from arcverify.topology import Topology

Path = tuple[str, ...]
Arc = tuple[str, str]


def path_arcs(p: Path) -> list[Arc]:
    return list(zip(p, p[1:]))


def path_from_arcs(arcs: Iterable[Arc]) -> Path:
    arcs = list(arcs)
    if not arcs:
        return ()
    for (_, b), (c, _) in zip(arcs, arcs[1:]):
        if b != c:
            raise ValueError(f"arcs do not chain: {b} != {c}")
    return (arcs[0][0],) + tuple(b for _, b in arcs)


def is_edge_simple(p: Path) -> bool:
    arcs = path_arcs(p)
    return len(set(arcs)) == len(arcs)


def is_node_simple(p: Path) -> bool:
    return len(set(p)) == len(p)


def is_complete(p: Path, t: Topology) -> bool:
    for n in p:
        if n not in t.hosts and n not in t.switches:
            raise UnknownNode(n)
    if len(p) < 2:
        return False
    return p[0] in t.hosts and p[-1] in t.hosts and all(n in t.switches for n in p[1:-1])


@dataclass(frozen=True)
class PathSet:
    """The requested paths for one traffic type.

    Paths keep their input order (rerouting repair depends on it) but
    duplicates collapse; ``duplicates`` counts how many were dropped.
    """

    paths: tuple[Path, ...]
    traffic_type: str = "default"
    duplicates: int = field(default=0, compare=False)
    _members: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seen: dict[Path, None] = {}
        for p in self.paths:
            seen.setdefault(tuple(p), None)
        uniq = tuple(seen)
        object.__setattr__(self, "duplicates", self.duplicates + len(self.paths) - len(uniq))
        object.__setattr__(self, "paths", uniq)
        object.__setattr__(self, "_members", frozenset(uniq))

    @classmethod
    def of(cls, paths: Iterable[Iterable[str]], traffic_type: str = "default") -> PathSet:
        return cls(tuple(tuple(p) for p in paths), traffic_type)

    def __iter__(self) -> Iterator[Path]:
        return iter(self.paths)

    def __len__(self) -> int:
        return len(self.paths)

    def __contains__(self, p) -> bool:
        return tuple(p) in self._members

    def as_set(self) -> frozenset[Path]:
        return self._members

    def sorted(self) -> PathSet:
        return PathSet(tuple(sorted(self.paths)), self.traffic_type)


@dataclass(frozen=True)
class PathIssue:
    path_index: int
    path: Path
    kind: str  # missing_link | unknown_node | incomplete | too_short | not_edge_simple | self_step
    detail: str

    def to_json(self) -> dict:
        return {"path_index": self.path_index, "path": list(self.path), "kind": self.kind, "detail": self.detail}


@dataclass
class ValidationReport:
    issues: list[PathIssue] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def to_json(self) -> dict:
        return {
            "valid": self.ok,
            "issues": [i.to_json() for i in self.issues],
            "warnings": list(self.warnings),
        }


def validate_path_set(P: PathSet, t: Topology, require_edge_simple: bool = True) -> ValidationReport:
    """Check every path against the topology; violations are returned, not raised."""
    report = ValidationReport()
    if P.duplicates:
        report.warnings.append(f"{P.duplicates} duplicate path(s) collapsed")
    nodes = t.nodes
    for i, p in enumerate(P):
        add = lambda kind, detail: report.issues.append(PathIssue(i, p, kind, detail))  # noqa: E731
        unknown = sorted({n for n in p if n not in nodes})
        for n in unknown:
            add("unknown_node", f"node {n} is not in the topology")
        if len(p) < 3:
            add("too_short", "a complete path needs at least host, switch, host")
        for a, b in path_arcs(p):
            if a == b:
                add("self_step", f"consecutive repeat of {a}")
            elif a in nodes and b in nodes and not t.has_link(a, b):
                add("missing_link", f"no link between {a} and {b}")
        if not unknown and len(p) >= 2 and not is_complete(p, t):
            add("incomplete", "head and tail must be hosts and every intermediate node a switch")
        if require_edge_simple and not is_edge_simple(p):
            repeated = sorted({a for a in path_arcs(p) if path_arcs(p).count(a) > 1})
            add("not_edge_simple", "repeated arc(s): " + ", ".join(f"({a},{b})" for a, b in repeated))
    return report
