"""Arc-closure verification over the closure graph of a path set.

The closure graph has one vertex per directed arc used by a path, plus
``source`` and ``sink``. An edge ``(a,b) -> (b,c)`` exists when some path
contains ``a·b·c``; ``source`` feeds each first arc and each last arc feeds
``sink``. Source-to-sink paths are exactly the complete paths the derived
flow rules implement, so:

* a cycle means infinitely many induced paths (a forwarding loop), and
* more source-to-sink paths than requested paths means extra, unrequested
  paths get implemented.

Paths with only two arcs (``h·s·h'``) are left out of the graph. Their arcs
touch hosts at both ends, so any swap around them reproduces an existing
path and they cannot change the verdict.
"""

from __future__ import annotations

import enum
from collections import defaultdict, deque
from collections.abc import Iterable
from dataclasses import dataclass, field

from arcverify.errors import BudgetExceeded, CyclicGraph, InfiniteClosure
from arcverify.paths import Arc, Path, PathSet, is_edge_simple, path_arcs, path_from_arcs

SOURCE = "source"
SINK = "sink"
DEFAULT_BUDGET = 100_000


def vertex_key(v) -> tuple:
    if v == SOURCE:
        return (0,)
    if v == SINK:
        return (2,)
    return (1, v)


@dataclass(frozen=True)
class ClosureGraph:
    vertices: frozenset
    edges: frozenset
    q_size: int
    succ: dict = field(repr=False, compare=False)

    def successors(self, v) -> list:
        return self.succ.get(v, [])


def build_closure_graph(P: PathSet | Iterable[Path]) -> ClosureGraph:
    # duplicates would inflate |Q| and break the path-count comparison
    Q = [q for q in dict.fromkeys(map(tuple, P)) if len(q) - 1 > 2]
    vertices = {SOURCE, SINK}
    edges = set()
    for q in Q:
        arcs = path_arcs(q)
        vertices.update(arcs)
        edges.add((SOURCE, arcs[0]))
        edges.add((arcs[-1], SINK))
        edges.update(zip(arcs, arcs[1:]))
    succ: dict = defaultdict(list)
    for u, v in edges:
        succ[u].append(v)
    for lst in succ.values():
        lst.sort(key=vertex_key)
    return ClosureGraph(frozenset(vertices), frozenset(edges), len(Q), dict(succ))


def normalize_cycle(cycle: list) -> tuple:
    """Rotate an open cycle so it starts at its smallest vertex, then close it."""
    i = min(range(len(cycle)), key=lambda k: vertex_key(cycle[k]))
    rotated = cycle[i:] + cycle[:i]
    return tuple(rotated) + (rotated[0],)


def _kahn(D: ClosureGraph, cap: int = 0) -> tuple[int, set]:
    """Topological sweep that also counts source-to-sink paths up to ``cap``.

    Returns the count and the vertices left unprocessed; those are exactly
    the vertices on or downstream of a cycle.
    """
    succ = D.succ
    indeg: dict = dict.fromkeys(D.vertices, 0)
    for targets in succ.values():
        for w in targets:
            indeg[w] += 1
    ways: dict = dict.fromkeys(D.vertices, 0)
    ways[SOURCE] = 1
    ready = [v for v, d in indeg.items() if d == 0]
    done = 0
    while ready:
        v = ready.pop()
        done += 1
        n = ways[v]
        for w in succ.get(v, ()):
            if n:
                ways[w] = min(cap, ways[w] + n)
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    rest = {v for v, d in indeg.items() if d > 0} if done != len(indeg) else set()
    return ways.get(SINK, 0), rest


def _dfs_cycle(D: ClosureGraph, roots) -> tuple | None:
    WHITE, GREY, BLACK = 0, 1, 2
    color: dict = defaultdict(int)
    for root in sorted(roots, key=vertex_key):
        if color[root] != WHITE:
            continue
        color[root] = GREY
        path = [root]
        iters = [iter(D.successors(root))]
        while iters:
            for w in iters[-1]:
                if color[w] == GREY:
                    return normalize_cycle(path[path.index(w) :])
                if color[w] == WHITE:
                    color[w] = GREY
                    path.append(w)
                    iters.append(iter(D.successors(w)))
                    break
            else:
                color[path.pop()] = BLACK
                iters.pop()
    return None


def find_cycle(D: ClosureGraph) -> tuple | None:
    """Return a closed cycle ``(v0, ..., v0)`` starting at its smallest vertex, or None."""
    _, rest = _kahn(D)
    return _dfs_cycle(D, rest) if rest else None


def count_source_sink_paths(D: ClosureGraph, cap: int) -> int:
    """Number of source-to-sink paths, saturated at ``cap``.

    Raises:
        CyclicGraph: when ``D`` has a cycle.
    """
    count, rest = _kahn(D, cap)
    if rest:
        raise CyclicGraph(_dfs_cycle(D, rest))
    return count


def enumerate_closure_paths(D: ClosureGraph, budget: int = DEFAULT_BUDGET) -> list[Path]:
    """Node sequences of every source-to-sink path of an acyclic ``D``, sorted."""
    out: list[Path] = []
    stack = [(w, (w,)) for w in reversed(D.successors(SOURCE))]
    while stack:
        v, arcs = stack.pop()
        for w in reversed(D.successors(v)):
            if w == SINK:
                out.append(path_from_arcs(arcs))
                if len(out) > budget:
                    raise BudgetExceeded(budget)
            else:
                stack.append((w, arcs + (w,)))
    return sorted(out)


class Status(str, enum.Enum):
    ARC_CLOSED = "arc_closed"
    FINITE_SUPERSET = "finite_superset"
    INFINITE_CLOSURE = "infinite_closure"


@dataclass(frozen=True)
class Verdict:
    status: Status
    counted_paths: int | None  # None: infinitely many
    q_size: int
    extra_paths: tuple[Path, ...] = ()
    cycle: tuple | None = None  # each vertex once, starting at the smallest
    reinduced_paths: tuple[Path, ...] | None = None

    @property
    def arc_closed(self) -> bool:
        return self.status is Status.ARC_CLOSED

    def to_json(self) -> dict:
        out = {
            "status": self.status.value,
            "counted_paths": "saturated" if self.counted_paths is None else self.counted_paths,
            "extra_paths": [list(p) for p in self.extra_paths],
            "cycle": [list(a) for a in self.cycle] if self.cycle else [],
        }
        if self.reinduced_paths is not None:
            out["reinduced_paths"] = [list(p) for p in self.reinduced_paths]
        return out


def check_arc_closed(P: PathSet | Iterable[Path], budget: int = DEFAULT_BUDGET) -> Verdict:
    """Decide whether ``P`` is arc closed, and if not whether its closure is finite."""
    paths = list(P)
    D = build_closure_graph(paths)
    k = D.q_size
    count, rest = _kahn(D, max(budget, k) + 1)
    if rest:
        return Verdict(Status.INFINITE_CLOSURE, None, k, cycle=_dfs_cycle(D, rest)[:-1])
    if count == k:
        return Verdict(Status.ARC_CLOSED, k, k)
    if count > budget:
        raise BudgetExceeded(budget)
    requested = set(paths)
    extras = tuple(p for p in enumerate_closure_paths(D, budget) if p not in requested)
    return Verdict(Status.FINITE_SUPERSET, count, k, extra_paths=extras)


def is_arc_closed(P: Iterable[Path]) -> bool:
    D = build_closure_graph(P)
    count, rest = _kahn(D, D.q_size + 1)
    return not rest and count == D.q_size


def arc_closure(P: PathSet | Iterable[Path], budget: int = DEFAULT_BUDGET) -> frozenset[Path]:
    """The smallest arc-closed superset of ``P``.

    Raises:
        InfiniteClosure: when the closure graph has a cycle.
        BudgetExceeded: when the closure has more than ``budget`` paths.
    """
    paths = list(P)
    D = build_closure_graph(paths)
    count, rest = _kahn(D, budget + 1)
    if rest:
        raise InfiniteClosure(_dfs_cycle(D, rest))
    if count > budget:
        raise BudgetExceeded(budget)
    short = [p for p in paths if len(p) - 1 <= 2]
    return frozenset(enumerate_closure_paths(D, budget)) | frozenset(short)


def _repeat_cycle(p: Path) -> tuple:
    arcs = path_arcs(p)
    first: dict[Arc, int] = {}
    for j, a in enumerate(arcs):
        if a in first:
            return normalize_cycle(arcs[first[a] : j])
        first[a] = j
    raise ValueError("path is edge simple")


def brute_force_closure(P: PathSet | Iterable[Path], budget: int = DEFAULT_BUDGET) -> frozenset[Path]:
    """Arc closure by saturating the swap rule directly.

    Whenever two paths ``α·x·y·β`` and ``α'·x·y·β'`` are present, ``α·x·y·β'``
    is added. Stops with :class:`InfiniteClosure` as soon as any path repeats
    a directed arc. Shares no code with the closure-graph route.
    """
    closure: set[Path] = set()
    heads: dict[Arc, set[Path]] = defaultdict(set)  # prefix ending at x, keyed by arc (x, y)
    tails: dict[Arc, set[Path]] = defaultdict(set)  # suffix starting at y
    work = deque(dict.fromkeys(tuple(p) for p in P))
    while work:
        p = work.popleft()
        if p in closure:
            continue
        if not is_edge_simple(p):
            raise InfiniteClosure(_repeat_cycle(p))
        closure.add(p)
        if len(closure) > budget:
            raise BudgetExceeded(budget)
        for i in range(len(p) - 1):
            arc = (p[i], p[i + 1])
            head, tail = p[: i + 1], p[i + 1 :]
            heads[arc].add(head)
            tails[arc].add(tail)
            for t in tails[arc]:
                if head + t not in closure:
                    work.append(head + t)
            for h in heads[arc]:
                if h + tail not in closure:
                    work.append(h + tail)
    return frozenset(closure)


def check_update(
    P: PathSet | Iterable[Path],
    add: PathSet | Iterable[Path] = (),
    remove: PathSet | Iterable[Path] = (),
    budget: int = DEFAULT_BUDGET,
) -> Verdict:
    """Verify the updated request ``(P ∪ add) \\ remove`` before applying it.

    The verdict also lists removed paths that the remaining ones re-induce.
    """
    removed = {tuple(p) for p in remove}
    updated = [p for p in dict.fromkeys([*map(tuple, P), *map(tuple, add)]) if p not in removed]
    v = check_arc_closed(updated, budget)
    back = tuple(p for p in v.extra_paths if p in removed)
    return Verdict(v.status, v.counted_paths, v.q_size, v.extra_paths, v.cycle, back)
