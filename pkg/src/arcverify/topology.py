"""Resource network connectivity topology: hosts, switches and undirected links."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import TYPE_CHECKING

from arcverify.errors import TopologyError, UnknownNode, Violation

if TYPE_CHECKING:
    from arcverify.paths import PathSet

NodeId = str
Link = tuple[str, str]  # unordered pair, stored with the smaller name first


def link(a: str, b: str) -> Link:
    return (a, b) if a <= b else (b, a)


def _bad_name(name) -> bool:
    return not isinstance(name, str) or not name or any(c.isspace() for c in name)


def validate_topology(
    hosts: Iterable[str], switches: Iterable[str], links: Iterable[Iterable[str]]
) -> list[Violation]:
    """Return every violation of the topology rules; an empty list means valid."""
    hosts = list(hosts)
    switches = list(switches)
    violations: list[Violation] = []

    seen: set[str] = set()
    for name in hosts + switches:
        if _bad_name(name):
            violations.append(Violation("InvalidName", f"bad node name {name!r}", (str(name),)))
            continue
        if name in seen:
            violations.append(Violation("DuplicateNode", f"node {name} declared twice", (name,)))
        seen.add(name)
    host_set = {h for h in hosts if not _bad_name(h)}
    switch_set = {s for s in switches if not _bad_name(s)}
    nodes = host_set | switch_set

    adj: dict[str, set[str]] = {n: set() for n in nodes}
    seen_links: set[Link] = set()
    for raw in links:
        pair = list(raw)
        if len(pair) != 2:
            violations.append(Violation("MalformedLink", f"link {pair!r} is not a pair"))
            continue
        a, b = pair
        unknown = [x for x in (a, b) if x not in nodes]
        if unknown:
            for x in unknown:
                violations.append(
                    Violation("UnknownEndpoint", f"link {a}-{b} uses undeclared node {x}", (str(a), str(b)))
                )
            continue
        if a == b:
            violations.append(Violation("SelfLoop", f"self-loop at {a}", (a,)))
            continue
        key = link(a, b)
        if key in seen_links:
            violations.append(Violation("DuplicateLink", f"link {key[0]}-{key[1]} given twice", key))
            continue
        seen_links.add(key)
        adj[a].add(b)
        adj[b].add(a)

    for h in sorted(host_set):
        nbrs = adj[h]
        if len(nbrs) != 1:
            violations.append(
                Violation("HostDegreeViolation", f"host {h} has degree {len(nbrs)}, expected 1", (h,))
            )
        elif next(iter(nbrs)) not in switch_set:
            violations.append(
                Violation("HostDegreeViolation", f"host {h} is attached to non-switch {next(iter(nbrs))}", (h,))
            )

    if nodes:
        start = min(nodes)
        reached = {start}
        stack = [start]
        while stack:
            for n in adj[stack.pop()]:
                if n not in reached:
                    reached.add(n)
                    stack.append(n)
        if len(reached) != len(nodes):
            missing = sorted(nodes - reached)
            violations.append(
                Violation(
                    "Disconnected",
                    "topology is not connected; model each connected component as a separate network "
                    f"(unreachable from {start}: {', '.join(missing)})",
                    tuple(missing),
                )
            )
    return violations


@dataclass(frozen=True)
class Topology:
    hosts: frozenset[str]
    switches: frozenset[str]
    links: frozenset[Link]
    _adj: MappingProxyType = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        adj: dict[str, set[str]] = {n: set() for n in self.hosts | self.switches}
        for a, b in self.links:
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "_adj", MappingProxyType({n: frozenset(v) for n, v in adj.items()}))

    @property
    def nodes(self) -> frozenset[str]:
        return self.hosts | self.switches

    def is_host(self, n: str) -> bool:
        return n in self.hosts

    def is_switch(self, n: str) -> bool:
        return n in self.switches

    def has_link(self, a: str, b: str) -> bool:
        return link(a, b) in self.links

    def switch_links(self) -> frozenset[Link]:
        return frozenset(l for l in self.links if l[0] in self.switches and l[1] in self.switches)

    def violations(self) -> list[Violation]:
        return validate_topology(sorted(self.hosts), sorted(self.switches), sorted(self.links))


def build_topology(
    hosts: Iterable[str], switches: Iterable[str], links: Iterable[Iterable[str]]
) -> Topology:
    """Validate and build a topology.

    Raises:
        TopologyError: listing every violation found.
    """
    hosts, switches, links = list(hosts), list(switches), [tuple(l) for l in links]
    violations = validate_topology(hosts, switches, links)
    if violations:
        raise TopologyError(violations)
    return Topology(frozenset(hosts), frozenset(switches), frozenset(link(a, b) for a, b in links))


def neighbors(t: Topology, n: str) -> frozenset[str]:
    try:
        return t._adj[n]
    except KeyError:
        raise UnknownNode(n) from None


def unused_switch_edges(t: Topology, P: PathSet | Iterable) -> frozenset[Link]:
    """Switch-switch links traversed, in either direction, by no path of ``P``."""
    used = {link(a, b) for p in P for a, b in zip(p, p[1:])}
    return t.switch_links() - used
