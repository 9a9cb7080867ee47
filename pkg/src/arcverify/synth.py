"""Synthetic topologies and path sets for randomized checks and benchmarks."""

from __future__ import annotations

import random

from arcverify.paths import Path, PathSet
from arcverify.topology import Topology, build_topology, link


def random_topology(rng: random.Random, n_switches: int, n_hosts: int, extra_link_p: float = 0.35) -> Topology:
    switches = [f"s{i}" for i in range(n_switches)]
    hosts = [f"h{i}" for i in range(n_hosts)]
    links = set()
    for i in range(1, n_switches):
        links.add(link(switches[i], switches[rng.randrange(i)]))
    for i in range(n_switches):
        for j in range(i + 1, n_switches):
            if rng.random() < extra_link_p:
                links.add(link(switches[i], switches[j]))
    for h in hosts:
        links.add(link(h, rng.choice(switches)))
    return build_topology(hosts, switches, sorted(links))


def random_complete_path(rng: random.Random, t: Topology, max_len: int, tries: int = 50) -> Path | None:
    """Random edge-simple complete path with at most ``max_len`` arcs, or None."""
    hosts = sorted(t.hosts)
    adj = {n: sorted(t._adj[n]) for n in t.nodes}
    for _ in range(tries):
        src = rng.choice(hosts)
        path = [src, adj[src][0]]
        used = {(path[0], path[1])}
        while len(path) - 1 < max_len:
            here = path[-1]
            options = [n for n in adj[here] if (here, n) not in used and n != src]
            if not options:
                break
            nxt = rng.choice(options)
            used.add((here, nxt))
            path.append(nxt)
            if nxt in t.hosts:
                return tuple(path)
    return None


def random_instance(
    rng: random.Random,
    max_switches: int = 10,
    max_hosts: int = 6,
    max_paths: int = 5,
    max_len: int = 10,
) -> tuple[Topology, PathSet]:
    while True:
        t = random_topology(rng, rng.randint(1, max_switches), rng.randint(2, max_hosts))
        want = rng.randint(1, max_paths)
        paths = []
        for _ in range(want * 4):
            p = random_complete_path(rng, t, max_len)
            if p is not None and p not in paths:
                paths.append(p)
            if len(paths) == want:
                break
        if paths:
            return t, PathSet.of(paths)


def large_arc_closed_set(total_length: int, n_switches: int = 500, path_len: int = 100, seed: int = 0) -> PathSet:
    """Path set of the given total length whose switch arcs are all distinct.

    Paths share only host arcs, so the set is arc closed. Switch ``s<i>`` has
    host ``h<i>`` attached; the implied topology is a complete switch graph.
    """
    rng = random.Random(seed)
    used: set[tuple[int, int]] = set()
    paths = []
    remaining = total_length
    while remaining > 0:
        n_arcs = min(path_len, remaining) if remaining - path_len >= 3 or remaining <= path_len else path_len
        n_arcs = max(n_arcs, 3)
        cur = rng.randrange(n_switches)
        walk = [cur]
        while len(walk) - 1 < n_arcs - 2:
            nxt = rng.randrange(n_switches)
            if nxt == cur or (cur, nxt) in used:
                continue
            used.add((cur, nxt))
            walk.append(nxt)
            cur = nxt
        nodes = [f"h{walk[0]}"] + [f"s{i}" for i in walk] + [f"h{walk[-1]}"]
        paths.append(tuple(nodes))
        remaining -= n_arcs
    return PathSet.of(paths)
