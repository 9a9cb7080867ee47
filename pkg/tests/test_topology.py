import pytest

from arcverify import TopologyError, UnknownNode, build_topology, neighbors, unused_switch_edges
from arcverify.topology import link, validate_topology

from tests import oracles
from tests.conftest import ALPHA, BETA, GRID_LINKS, SWITCHES


def kinds(violations):
    return sorted(v.kind for v in violations)


def test_grid_topology_is_valid(grid):
    assert grid.hosts == frozenset({"h0", "h1"})
    assert len(grid.links) == 10
    assert grid.violations() == []


def test_minimal_network():
    t = build_topology(["h0", "h1"], ["s1"], [("h0", "s1"), ("s1", "h1")])
    assert neighbors(t, "h0") == {"s1"}
    assert neighbors(t, "s1") == {"h0", "h1"}


def test_host_with_two_links_is_rejected():
    with pytest.raises(TopologyError) as exc:
        build_topology(["h0"], ["s1", "s2"], [("h0", "s1"), ("h0", "s2"), ("s1", "s2")])
    assert [v.kind for v in exc.value.violations] == ["HostDegreeViolation"]
    assert exc.value.violations[0].subject == ("h0",)


def test_host_attached_to_host_is_rejected():
    v = validate_topology(["h0", "h1"], [], [("h0", "h1")])
    assert kinds(v) == ["HostDegreeViolation", "HostDegreeViolation"]


def test_all_violations_are_reported():
    v = validate_topology(
        ["h0", "h1", "h0"],
        ["s1", "s2", "s9"],
        [("h0", "s1"), ("s1", "s1"), ("s1", "s2"), ("s2", "s1"), ("s2", "x"), ("h1", "s2")],
    )
    assert set(kinds(v)) >= {"DuplicateNode", "SelfLoop", "DuplicateLink", "UnknownEndpoint", "Disconnected"}


def test_disconnected_message_suggests_splitting():
    v = validate_topology(["h0", "h1"], ["s1", "s2"], [("h0", "s1"), ("h1", "s2")])
    assert kinds(v) == ["Disconnected"]
    assert "separate network" in v[0].detail


def test_malformed_link():
    v = validate_topology(["h0"], ["s1"], [("h0", "s1"), ("s1",)])
    assert "MalformedLink" in kinds(v)


def test_build_revalidates_clean(grid):
    assert validate_topology(sorted(grid.hosts), sorted(grid.switches), sorted(grid.links)) == []


@pytest.mark.parametrize(
    "node, expected",
    [("s1", {"h0", "s2", "s4"}), ("s5", {"s4", "s6", "s2"}), ("h1", {"s6"})],
)
def test_neighbors(grid, node, expected):
    assert neighbors(grid, node) == expected


def test_neighbors_unknown_node(grid):
    with pytest.raises(UnknownNode):
        neighbors(grid, "s42")


def test_link_is_unordered():
    assert link("s2", "s1") == link("s1", "s2") == ("s1", "s2")


def test_every_grid_switch_link_is_used(grid):
    # alpha and beta between them cover all eight switch links of the grid
    expected = oracles.unused_links([l for l in GRID_LINKS if "h0" not in l and "h1" not in l], [ALPHA, BETA])
    assert expected == set()
    assert unused_switch_edges(grid, [ALPHA, BETA]) == frozenset()


def test_unused_on_complete_switch_graph(complete):
    all_switch = [link(a, b) for i, a in enumerate(SWITCHES) for b in SWITCHES[i + 1 :]]
    expected = {tuple(sorted(l)) for l in oracles.unused_links(all_switch, [ALPHA, BETA])}
    got = unused_switch_edges(complete, [ALPHA, BETA])
    assert got == expected
    assert len(got) == 7
    assert got == {("s1", "s3"), ("s1", "s5"), ("s1", "s6"), ("s2", "s4"), ("s2", "s6"), ("s3", "s5"), ("s4", "s6")}


def test_unused_with_no_paths_is_all_switch_links(grid):
    assert unused_switch_edges(grid, []) == grid.switch_links()
