"""Repairing a path set that is not arc closed.

Three strategies:

* drop paths: keep a largest arc-closed subset, searched over independent
  sets of the conflict graph;
* add paths: take the finite arc closure, when one exists;
* reroute: rewrite conflicting paths over unused arcs, keeping every
  path's end hosts.
"""

from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from dataclasses import dataclass, field

from arcverify.closure import (
    DEFAULT_BUDGET,
    Status,
    arc_closure,
    check_arc_closed,
    is_arc_closed,
)
from arcverify.errors import EmptyUnusedSet, InfiniteClosure, NoFiniteSuperset, RepairImpossible
from arcverify.paths import Arc, Path, PathSet, is_edge_simple, path_arcs
from arcverify.topology import Topology, link

DEFAULT_EXACT_THRESHOLD = 20
MAX_ROTATION_PATHS = 8


def incompatible(p_i: Path, p_j: Path, P: PathSet | Iterable[Path]) -> Arc | None:
    """First arc of ``p_i`` shared with ``p_j`` around which a swap leaves ``P``.

    For a common arc at positions ``u`` in ``p_i`` and ``v`` in ``p_j`` the
    swaps are ``p_i[:u+1] + p_j[v+1:]`` and ``p_j[:v+1] + p_i[u+1:]``.
    Returns None when the paths are compatible.
    """
    members = P.as_set() if isinstance(P, PathSet) else set(map(tuple, P))
    where: dict[Arc, list[int]] = defaultdict(list)
    for v, arc in enumerate(path_arcs(p_j)):
        where[arc].append(v)
    for u, arc in enumerate(path_arcs(p_i)):
        for v in where.get(arc, ()):
            if p_i[: u + 1] + p_j[v + 1 :] not in members or p_j[: v + 1] + p_i[u + 1 :] not in members:
                return arc
    return None


@dataclass(frozen=True)
class ConflictGraph:
    vertices: tuple[Path, ...]
    edges: dict  # (p, q) with p < q  ->  witness arc

    def neighbors(self, p: Path) -> set[Path]:
        out = set()
        for a, b in self.edges:
            if a == p:
                out.add(b)
            elif b == p:
                out.add(a)
        return out


def build_conflict_graph(P: PathSet | Iterable[Path]) -> ConflictGraph:
    paths = list(P)
    members = set(paths)
    by_arc: dict[Arc, list[int]] = defaultdict(list)
    for idx, p in enumerate(paths):
        # first and last arcs touch hosts and never witness a conflict
        for arc in dict.fromkeys(path_arcs(p)[1:-1]):
            by_arc[arc].append(idx)
    pairs = {(i, j) for idxs in by_arc.values() for i in idxs for j in idxs if i < j}
    edges = {}
    for i, j in sorted(pairs):
        p, q = sorted((paths[i], paths[j]))
        arc = incompatible(p, q, members)
        if arc is not None:
            edges[(p, q)] = arc
    return ConflictGraph(tuple(paths), dict(sorted(edges.items())))


def _exact_subset(paths: list[Path], G: ConflictGraph) -> list[Path]:
    """Largest arc-closed subset, lexicographically smallest among ties.

    Every arc-closed subset is independent in the conflict graph, so a
    branch-and-bound over independent sets that checks closure at the leaves
    is exact. Include-first branching over sorted paths reaches ties in
    lexicographic order.
    """
    order = sorted(paths)
    n = len(order)
    pos = {p: i for i, p in enumerate(order)}
    adj = [0] * n
    for a, b in G.edges:
        adj[pos[a]] |= 1 << pos[b]
        adj[pos[b]] |= 1 << pos[a]
    best_mask, best_size = 0, 0
    all_mask = (1 << n) - 1

    def search(i: int, chosen: int, blocked: int, size: int) -> None:
        nonlocal best_mask, best_size
        free = all_mask & ~blocked & ~((1 << i) - 1)
        if size + bin(free).count("1") <= best_size:
            return
        if i == n:
            if is_arc_closed(order[k] for k in range(n) if chosen >> k & 1):
                best_mask, best_size = chosen, size
            return
        bit = 1 << i
        if not blocked & bit:
            search(i + 1, chosen | bit, blocked | adj[i] | bit, size + 1)
        search(i + 1, chosen, blocked | bit, size)

    search(0, 0, 0, 0)
    return [order[k] for k in range(n) if best_mask >> k & 1]


def _conflict_scores(S: list[Path]) -> dict[Path, int]:
    members = set(S)
    score = {p: (0 if is_edge_simple(p) else 1) for p in S}
    for i, p in enumerate(S):
        for q in S[i + 1 :]:
            if incompatible(p, q, members) is not None:
                score[p] += 1
                score[q] += 1
    return score


def _greedy_subset(paths: list[Path], G: ConflictGraph) -> list[Path]:
    adj = {p: G.neighbors(p) for p in paths}
    remaining = set(paths)
    chosen: list[Path] = []
    while remaining:
        p = min(remaining, key=lambda x: (len(adj[x] & remaining), x))
        chosen.append(p)
        remaining -= adj[p] | {p}
    while not is_arc_closed(chosen):
        score = _conflict_scores(chosen)
        worst = min(chosen, key=lambda x: (-score[x], x))
        chosen.remove(worst)
    for p in sorted(set(paths) - set(chosen)):
        if is_arc_closed(chosen + [p]):
            chosen.append(p)
    return chosen


def max_arc_closed_subset(
    P: PathSet | Iterable[Path], exact_threshold: int = DEFAULT_EXACT_THRESHOLD
) -> PathSet:
    """A maximal arc-closed subset of ``P`` (maximum when ``|P| <= exact_threshold``).

    Result paths keep the input order.
    """
    ps = P if isinstance(P, PathSet) else PathSet.of(P)
    paths = list(ps)
    G = build_conflict_graph(paths)
    if len(paths) <= exact_threshold:
        keep = set(_exact_subset(paths, G))
    else:
        keep = set(_greedy_subset(paths, G))
    return PathSet(tuple(p for p in paths if p in keep), ps.traffic_type)


def min_arc_closed_superset(P: PathSet | Iterable[Path], budget: int = DEFAULT_BUDGET) -> PathSet:
    """The arc closure of ``P`` when it is finite.

    Raises:
        NoFiniteSuperset: the closure graph has a cycle.
    """
    ps = P if isinstance(P, PathSet) else PathSet.of(P)
    try:
        closure = arc_closure(ps, budget)
    except InfiniteClosure as exc:
        raise NoFiniteSuperset(exc.cycle) from None
    return PathSet(tuple(sorted(closure)), ps.traffic_type)


@dataclass(frozen=True)
class Change:
    removed_subpath: Path
    inserted_subpath: Path

    def to_json(self) -> dict:
        return {"removed_subpath": list(self.removed_subpath), "inserted_subpath": list(self.inserted_subpath)}


@dataclass(frozen=True)
class RepairOutcome:
    repaired: PathSet
    changes: tuple[tuple[Change, ...], ...]  # aligned with repaired.paths
    consumed_links: tuple[Arc, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "traffic_type": self.repaired.traffic_type,
            "paths": [list(p) for p in self.repaired],
            "changes": [[c.to_json() for c in per] for per in self.changes],
            "consumed_links": [list(a) for a in self.consumed_links],
        }


def unused_arcs(t: Topology, P: Iterable[Path]) -> set[Arc]:
    """Directed switch-to-switch arcs that no path of ``P`` traverses."""
    used = {a for p in P for a in path_arcs(p)}
    arcs = set()
    for a, b in t.switch_links():
        arcs.add((a, b))
        arcs.add((b, a))
    return arcs - used


def _link_simple(p: Path) -> bool:
    arcs = path_arcs(p)
    return len({link(a, b) for a, b in arcs}) == len(arcs)


def _shortcut(cand: Path, other: Path, arc: Arc, N: set[Arc], t: Topology):
    """Bypass a stretch shared with ``other`` by one unused arc."""
    u = path_arcs(cand).index(arc)
    v = path_arcs(other).index(arc)
    left = 0
    while u - left - 1 >= 0 and v - left - 1 >= 0 and cand[u - left - 1] == other[v - left - 1]:
        left += 1
    right = 0
    while (
        u + 2 + right < len(cand)
        and v + 2 + right < len(other)
        and cand[u + 2 + right] == other[v + 2 + right]
    ):
        right += 1
    options = []
    for i in range(u - left, u + 1):
        for j in range(u + 1, u + 2 + right):
            a, b = cand[i], cand[j]
            if j - i < 2 or a == b or (a, b) not in N or not (t.is_switch(a) and t.is_switch(b)):
                continue
            new = cand[: i + 1] + cand[j:]
            options.append((not _link_simple(new), -(j - i), i, new, cand[i : j + 1], (a, b), ((a, b),)))
    if not options:
        return None
    _, _, _, new, removed, inserted, used = min(options)
    return new, removed, inserted, used


def _detour(cand: Path, arc: Arc, N: set[Arc], t: Topology):
    """Replace ``s1·s2`` by ``s1·x·s2`` over two unused arcs."""
    s1, s2 = arc
    u = path_arcs(cand).index(arc)
    options = []
    for x in sorted(t.switches, reverse=True):
        if x in (s1, s2) or (s1, x) not in N or (x, s2) not in N:
            continue
        new = cand[: u + 1] + (x,) + cand[u + 1 :]
        options.append((not _link_simple(new), new, (s1, x, s2), ((s1, x), (x, s2))))
    if not options:
        return None
    # detours that keep every link used at most once come first, then the largest switch name
    _, new, inserted, used = min(options, key=lambda o: o[0])
    return new, arc, inserted, used


def _reroute(order: list[tuple[int, Path]], t: Topology) -> tuple[dict, dict, list[Arc]]:
    N = unused_arcs(t, [p for _, p in order])
    accepted: list[Path] = [order[0][1]]
    result = {order[0][0]: order[0][1]}
    changes: dict[int, list[Change]] = defaultdict(list)
    consumed: list[Arc] = []
    for pos, (idx, cand) in enumerate(order[1:], start=1):
        pending = [p for _, p in order[pos + 1 :]]
        while True:
            members = set(accepted) | {cand} | set(pending)
            conflict = None
            for p in accepted:
                arc = incompatible(cand, p, members)
                if arc is not None:
                    conflict = (p, arc)
                    break
            if conflict is None:
                break
            p, arc = conflict
            if not N:
                raise EmptyUnusedSet("no unused switch arcs left to reroute over", (p, cand), arc)
            step = _shortcut(cand, p, arc, N, t) or _detour(cand, arc, N, t)
            if step is None:
                raise RepairImpossible(
                    f"cannot reroute around arc ({arc[0]},{arc[1]}) with the unused arcs left",
                    (p, cand),
                    arc,
                    {"unused_arcs": sorted(N)},
                )
            cand, removed, inserted, used = step
            N.difference_update(used)
            consumed.extend(used)
            changes[idx].append(Change(tuple(removed), tuple(inserted)))
        accepted.append(cand)
        result[idx] = cand
    return result, changes, consumed


def reroute_repair(P: PathSet, t: Topology, try_rotations: bool = False) -> RepairOutcome:
    """Make ``P`` arc closed by rerouting paths over unused switch arcs.

    Paths are accepted in input order; each later path is rewritten until it
    is compatible with every accepted one, first by shortcutting a shared
    stretch with one unused arc, otherwise by a two-arc detour around the
    conflicting arc. The result is verified before it is returned.

    Raises:
        EmptyUnusedSet: a conflict exists but there are no unused arcs.
        RepairImpossible: some conflict cannot be rerouted, or the rewritten
            set fails the final closure check.
    """
    ps = P if isinstance(P, PathSet) else PathSet.of(P)
    indexed = list(enumerate(ps))
    if not indexed:
        return RepairOutcome(ps, ())
    orders = [indexed]
    if try_rotations and len(indexed) <= MAX_ROTATION_PATHS:
        orders = [indexed[r:] + indexed[:r] for r in range(len(indexed))]
    first_error: RepairImpossible | None = None
    for order in orders:
        try:
            result, changes, consumed = _reroute(order, t)
        except RepairImpossible as exc:
            first_error = first_error or exc
            continue
        repaired = [result[i] for i in range(len(indexed))]
        verdict = check_arc_closed(repaired)
        if (
            verdict.status is not Status.ARC_CLOSED
            or not all(map(is_edge_simple, repaired))
            or len(set(repaired)) != len(repaired)
        ):
            first_error = first_error or RepairImpossible(
                "rerouted set failed verification", diagnostics={"verdict": verdict.to_json()}
            )
            continue
        return RepairOutcome(
            PathSet(tuple(repaired), ps.traffic_type),
            tuple(tuple(changes.get(i, ())) for i in range(len(indexed))),
            tuple(consumed),
        )
    assert first_error is not None
    raise first_error
