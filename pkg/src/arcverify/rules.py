"""Flow rules induced by a path set, and a data-plane model that replays them.

A rule ``(a, s, b)`` tells switch ``s`` to forward a packet received from
neighbor ``a`` to neighbor ``b``. Several rules sharing ``(a, s)`` clone the
packet. The forwarding state of a packet is therefore the directed arc it
last crossed, and the data plane is a graph over those arc-states. This
module walks that graph directly, which makes it an oracle that is
independent of the closure-graph construction in :mod:`arcverify.closure`.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass
from typing import NamedTuple

from arcverify.errors import BudgetExceeded, LoopDetected
from arcverify.paths import Arc, Path, PathSet, path_from_arcs
from arcverify.topology import Topology, neighbors

DEFAULT_PATH_BUDGET = 100_000


class FlowRule(NamedTuple):
    in_neighbor: str
    switch: str
    out_neighbor: str


Configuration = frozenset  # frozenset[FlowRule]


def derive_rules(P: PathSet | Iterable[Path]) -> frozenset[FlowRule]:
    """Every window ``a·b·c`` of every path becomes the rule ``(a, b, c)``."""
    return frozenset(FlowRule(a, b, c) for p in P for a, b, c in zip(p, p[1:], p[2:]))


def sorted_rules(c: Iterable[FlowRule]) -> list[FlowRule]:
    return sorted(FlowRule(*r) for r in c)


def _transitions(c: Iterable[FlowRule], t: Topology) -> dict[Arc, list[Arc]]:
    succ: dict[Arc, list[Arc]] = defaultdict(list)
    for a, s, b in c:
        if not t.is_switch(s):
            raise ValueError(f"rule ({a},{s},{b}): {s} is not a switch")
        nb = neighbors(t, s)
        if a not in nb or b not in nb:
            raise ValueError(f"rule ({a},{s},{b}) does not respect the topology's adjacency")
        succ[(a, s)].append((s, b))
    for v in succ.values():
        v.sort()
    return succ


def _initial_arcs(t: Topology, hosts: Iterable[str] | None = None) -> list[Arc]:
    hosts = sorted(t.hosts) if hosts is None else sorted(hosts)
    return [(h, s) for h in hosts for s in sorted(neighbors(t, h))]


def _reachable(succ: dict[Arc, list[Arc]], starts: list[Arc]) -> set[Arc]:
    seen = set(starts)
    stack = list(starts)
    while stack:
        for w in succ.get(stack.pop(), ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def _cyclic_states(succ: dict[Arc, list[Arc]], states: set[Arc]) -> set[Arc]:
    """States lying on some cycle (Tarjan SCC, iterative)."""
    index: dict[Arc, int] = {}
    low: dict[Arc, int] = {}
    on_stack: set[Arc] = set()
    stack: list[Arc] = []
    cyclic: set[Arc] = set()
    counter = 0
    for root in sorted(states):
        if root in index:
            continue
        work = [(root, iter(succ.get(root, ())))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ.get(w, ()))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                if len(comp) > 1 or v in succ.get(v, ()):
                    cyclic.update(comp)
    return cyclic


def _lex_bfs(succ: dict[Arc, list[Arc]], starts: list[Arc], target: Arc | None = None):
    """Layered BFS returning, per state, the lexicographically smallest shortest
    state sequence from ``starts``. With ``target`` set, stop once it is reached
    through at least one transition (used for shortest cycles)."""
    best: dict[Arc, tuple[Arc, ...]] = {}
    layer = sorted((s,) for s in starts)
    if target is None:
        for seq in layer:
            best.setdefault(seq[-1], seq)
    seen = set(best)
    while layer:
        nxt: dict[Arc, tuple[Arc, ...]] = {}
        for seq in layer:
            for w in succ.get(seq[-1], ()):
                if target is not None and w == target:
                    return seq + (w,)
                if w not in seen and w not in nxt:
                    nxt[w] = seq + (w,)
        seen.update(nxt)
        best.update(nxt)
        layer = sorted(nxt.values())
    return None if target is not None else best


def _shortest_loop_witness(succ, starts: list[Arc], reachable: set[Arc]) -> tuple[Path, Arc] | None:
    cyclic = _cyclic_states(succ, reachable)
    if not cyclic:
        return None
    prefixes = _lex_bfs(succ, starts)
    best_key = None
    best = None
    for v in sorted(cyclic):
        if v not in prefixes:
            continue
        cycle = _lex_bfs(succ, [v], target=v)
        if cycle is None:
            continue
        arcs = prefixes[v] + cycle[1:]
        key = (len(arcs), arcs)
        if best_key is None or key < best_key:
            best_key, best = key, (path_from_arcs(arcs), v)
    return best


def induced_paths(
    c: Iterable[FlowRule], t: Topology, path_budget: int = DEFAULT_PATH_BUDGET
) -> frozenset[Path]:
    """Complete paths produced by chaining the rules of ``c``.

    Raises:
        LoopDetected: some host can inject a packet whose rule chain revisits
            a directed arc; the witness is a shortest such walk.
        BudgetExceeded: the closure is finite but larger than ``path_budget``.
    """
    succ = _transitions(c, t)
    starts = _initial_arcs(t)
    reachable = _reachable(succ, starts)
    witness = _shortest_loop_witness(succ, starts, reachable)
    if witness is not None:
        raise LoopDetected(*witness)
    out: set[Path] = set()
    for h in sorted(t.hosts):
        out.update(_delivered(succ, t, _initial_arcs(t, [h]), path_budget - len(out)))
    return frozenset(out)


def _delivered(succ, t: Topology, starts: list[Arc], budget: int) -> set[Path]:
    """Walk every arc-simple forwarding walk; returns delivered complete paths."""
    delivered: set[Path] = set()
    for start in starts:
        stack = [(start, (start,))]
        while stack:
            arc, walk = stack.pop()
            if t.is_host(arc[1]):
                delivered.add(path_from_arcs(walk))
                if len(delivered) > budget:
                    raise BudgetExceeded(budget)
                continue
            on_walk = set(walk)
            for w in reversed(succ.get(arc, ())):
                if w not in on_walk:
                    stack.append((w, walk + (w,)))
    return delivered


@dataclass(frozen=True)
class InjectionReport:
    host: str
    delivered: tuple[Path, ...]
    loop: bool
    witness: Path | None = None

    def to_json(self) -> dict:
        return {
            "host": self.host,
            "delivered": [list(p) for p in self.delivered],
            "loop": self.loop,
            "witness": list(self.witness) if self.witness else None,
        }


def simulate_injection(
    c: Iterable[FlowRule], source_host: str, t: Topology, path_budget: int = DEFAULT_PATH_BUDGET
) -> InjectionReport:
    """Inject one packet at ``source_host`` and follow every clone.

    Clones that would re-cross an arc they already crossed are cut and the
    loop is reported; everything delivered to a host before that is listed.
    """
    if not t.is_host(source_host):
        raise ValueError(f"{source_host} is not a host")
    succ = _transitions(c, t)
    starts = _initial_arcs(t, [source_host])
    reachable = _reachable(succ, starts)
    witness = _shortest_loop_witness(succ, starts, reachable)
    delivered = _delivered(succ, t, starts, path_budget)
    return InjectionReport(
        source_host,
        tuple(sorted(delivered)),
        witness is not None,
        witness[0] if witness else None,
    )
