import json

import pytest

from arcverify import TopologyError, derive_rules
from arcverify.closure import build_closure_graph
from arcverify.dot import CYCLE_STYLE, closure_graph_to_dot, topology_to_dot
from arcverify.formats import (
    FormatError,
    configuration_from_json,
    configuration_to_json,
    dumps,
    load_pathset,
    load_topology,
    load_update,
    pathset_from_json,
    pathset_to_json,
    topology_from_json,
    topology_to_json,
)

from tests.conftest import ALPHA, BETA, P1, P2


def test_topology_round_trip(grid):
    assert topology_from_json(topology_to_json(grid)) == grid


@pytest.mark.parametrize(
    "data, message",
    [
        ([], "JSON object"),
        ({"hosts": [], "switches": []}, "missing"),
        ({"hosts": [], "switches": [], "links": [], "extra": 1}, "unknown"),
        ({"hosts": "h0", "switches": [], "links": []}, "array of strings"),
        ({"hosts": [], "switches": [], "links": {}}, "array of pairs"),
    ],
)
def test_topology_schema_errors(data, message):
    with pytest.raises(FormatError, match=message):
        topology_from_json(data)


def test_topology_link_arity():
    with pytest.raises(TopologyError):
        topology_from_json({"hosts": ["h0"], "switches": ["s1"], "links": [["h0", "s1", "s1"]]})


def test_pathset_round_trip():
    data = {"traffic_type": "video", "paths": [list(ALPHA), list(BETA)]}
    P = pathset_from_json(data)
    assert P.traffic_type == "video"
    assert pathset_to_json(P) == data
    assert pathset_from_json({"paths": []}).traffic_type == "default"


@pytest.mark.parametrize(
    "data",
    [{"traffic_type": "x"}, {"paths": [], "bogus": 1}, {"paths": [[1, 2]]}, {"paths": [], "traffic_type": 3}, []],
)
def test_pathset_schema_errors(data):
    with pytest.raises(FormatError):
        pathset_from_json(data)


def test_file_loaders(tmp_path, grid):
    (tmp_path / "t.json").write_text(json.dumps(topology_to_json(grid)))
    (tmp_path / "p.json").write_text(json.dumps({"paths": [list(ALPHA)]}))
    (tmp_path / "u.json").write_text(json.dumps({"add": [list(BETA)]}))
    (tmp_path / "bad.json").write_text("{")
    assert load_topology(tmp_path / "t.json") == grid
    assert list(load_pathset(tmp_path / "p.json")) == [ALPHA]
    assert load_update(tmp_path / "u.json") == ([BETA], [])
    with pytest.raises(FormatError, match="invalid JSON"):
        load_pathset(tmp_path / "bad.json")


def test_update_rejects_unknown_keys(tmp_path):
    (tmp_path / "u.json").write_text(json.dumps({"add": [], "delete": []}))
    with pytest.raises(FormatError):
        load_update(tmp_path / "u.json")


def test_configuration_round_trip():
    rules = derive_rules([P1, P2])
    data = configuration_to_json(rules)
    assert data == sorted(data)
    assert configuration_from_json(data) == rules
    with pytest.raises(FormatError):
        configuration_from_json([["a", "b"]])


def test_dumps_is_stable():
    assert dumps({"b": 1, "a": [1]}) == '{\n  "a": [\n    1\n  ],\n  "b": 1\n}\n'


def test_topology_dot(grid):
    text = topology_to_dot(grid, [ALPHA])
    assert text.startswith("graph topology {")
    assert '"h0" [shape=box];' in text
    assert '"s1" [shape=circle];' in text
    assert '"s1" -- "s2" [penwidth=2];' in text
    assert '"s1" -- "s4";' in text


def test_closure_dot_highlights_cycle():
    text = closure_graph_to_dot(build_closure_graph([ALPHA, BETA]))
    assert "source [shape=doublecircle]" in text.replace('"', "")
    assert "sink [shape=doubleoctagon]" in text.replace('"', "")
    hot = [l for l in text.splitlines() if CYCLE_STYLE in l]
    assert len(hot) == 4
    assert any('"(s5,s2)" -> "(s2,s3)"' in l for l in hot)


def test_closure_dot_without_cycle():
    assert CYCLE_STYLE not in closure_graph_to_dot(build_closure_graph([P1, P2]))
