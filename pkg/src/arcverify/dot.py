"""Graphviz DOT rendering for topologies and closure graphs."""

from __future__ import annotations

from collections.abc import Iterable

from arcverify.closure import SINK, SOURCE, ClosureGraph, find_cycle, vertex_key
from arcverify.paths import Path, path_arcs
from arcverify.topology import Topology, link

CYCLE_STYLE = 'color="red", penwidth=2.5, style=bold'


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _vertex_name(v) -> str:
    if v in (SOURCE, SINK):
        return v
    return f"({v[0]},{v[1]})"


def topology_to_dot(t: Topology, paths: Iterable[Path] = ()) -> str:
    used = {link(a, b) for p in paths for a, b in path_arcs(p)}
    lines = ["graph topology {"]
    for h in sorted(t.hosts):
        lines.append(f"  {_q(h)} [shape=box];")
    for s in sorted(t.switches):
        lines.append(f"  {_q(s)} [shape=circle];")
    for a, b in sorted(t.links):
        attr = " [penwidth=2]" if (a, b) in used else ""
        lines.append(f"  {_q(a)} -- {_q(b)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def closure_graph_to_dot(D: ClosureGraph, cycle: tuple | None = None) -> str:
    """DOT text for a closure graph; edges of ``cycle`` (default: the one
    :func:`find_cycle` reports) are drawn in red."""
    if cycle is None:
        cycle = find_cycle(D)
    if cycle and cycle[0] != cycle[-1]:
        cycle = tuple(cycle) + (cycle[0],)
    hot = set(zip(cycle, cycle[1:])) if cycle else set()
    lines = ["digraph closure {", "  rankdir=LR;"]
    for v in sorted(D.vertices, key=vertex_key):
        if v == SOURCE:
            shape = "doublecircle"
        elif v == SINK:
            shape = "doubleoctagon"
        else:
            shape = "ellipse"
        lines.append(f"  {_q(_vertex_name(v))} [shape={shape}];")
    for u, v in sorted(D.edges, key=lambda e: (vertex_key(e[0]), vertex_key(e[1]))):
        attr = f" [{CYCLE_STYLE}]" if (u, v) in hot else ""
        lines.append(f"  {_q(_vertex_name(u))} -> {_q(_vertex_name(v))}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
