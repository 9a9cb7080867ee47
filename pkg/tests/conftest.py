import pytest

from arcverify import PathSet, build_topology
from arcverify.topology import link

SWITCHES = [f"s{i}" for i in range(1, 7)]

ALPHA = ("h0", "s1", "s2", "s3", "s4", "s5", "s6", "h1")
BETA = ("h0", "s1", "s4", "s5", "s2", "s3", "s6", "h1")

P1 = ("h0", "s1", "s2", "h1")
P2 = ("h2", "s1", "s2", "h3")
SMALL_CLOSURE = frozenset(
    {P1, P2, ("h0", "s1", "s2", "h3"), ("h2", "s1", "s2", "h1")}
)

GRID_LINKS = [
    ("h0", "s1"), ("s1", "s2"), ("s2", "s3"), ("s3", "s4"), ("s4", "s5"),
    ("s5", "s6"), ("s6", "h1"), ("s1", "s4"), ("s2", "s5"), ("s3", "s6"),
]


def grid_topology():
    return build_topology(["h0", "h1"], SWITCHES, GRID_LINKS)


def complete_topology():
    links = [("h0", "s1"), ("s6", "h1")]
    links += [link(a, b) for i, a in enumerate(SWITCHES) for b in SWITCHES[i + 1 :]]
    return build_topology(["h0", "h1"], SWITCHES, links)


def small_topology():
    return build_topology(
        ["h0", "h1", "h2", "h3"],
        ["s1", "s2"],
        [("h0", "s1"), ("h2", "s1"), ("s1", "s2"), ("s2", "h1"), ("s2", "h3")],
    )


@pytest.fixture
def grid():
    return grid_topology()


@pytest.fixture
def complete():
    return complete_topology()


@pytest.fixture
def small():
    return small_topology()


@pytest.fixture
def grid_paths():
    return PathSet.of([ALPHA, BETA])


@pytest.fixture
def small_paths():
    return PathSet.of([P1, P2])


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("tests.test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(acceptance.RESULTS, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)
