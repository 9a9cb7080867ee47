"""JSON file formats: topology, path set, update request, configuration."""

from __future__ import annotations

import json
from collections.abc import Iterable
from pathlib import Path as FsPath

from arcverify.errors import TopologyError, Violation
from arcverify.paths import PathSet
from arcverify.rules import FlowRule, sorted_rules
from arcverify.topology import Topology, build_topology

TOPOLOGY_KEYS = {"hosts", "switches", "links"}
PATHSET_KEYS = {"traffic_type", "paths"}
UPDATE_KEYS = {"add", "remove"}


class FormatError(ValueError):
    """A file does not follow its JSON schema."""


def _read(path) -> object:
    try:
        return json.loads(FsPath(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from None


def _string_list(value, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise FormatError(f"{what} must be an array of strings")
    return value


def _paths(value, what: str) -> list[tuple[str, ...]]:
    if not isinstance(value, list):
        raise FormatError(f"{what} must be an array of paths")
    return [tuple(_string_list(p, f"{what}[{i}]")) for i, p in enumerate(value)]


def topology_from_json(data) -> Topology:
    if not isinstance(data, dict):
        raise FormatError("topology must be a JSON object")
    unknown = set(data) - TOPOLOGY_KEYS
    if unknown:
        raise FormatError(f"unknown topology key(s): {', '.join(sorted(unknown))}")
    missing = TOPOLOGY_KEYS - set(data)
    if missing:
        raise FormatError(f"missing topology key(s): {', '.join(sorted(missing))}")
    hosts = _string_list(data["hosts"], "hosts")
    switches = _string_list(data["switches"], "switches")
    if not isinstance(data["links"], list):
        raise FormatError("links must be an array of pairs")
    links = []
    for i, l in enumerate(data["links"]):
        pair = _string_list(l, f"links[{i}]")
        if len(pair) != 2:
            raise TopologyError([Violation("MalformedLink", f"links[{i}] is not a 2-element array")])
        links.append(tuple(pair))
    return build_topology(hosts, switches, links)


def topology_to_json(t: Topology) -> dict:
    return {
        "hosts": sorted(t.hosts),
        "switches": sorted(t.switches),
        "links": [list(l) for l in sorted(t.links)],
    }


def load_topology(path) -> Topology:
    return topology_from_json(_read(path))


def pathset_from_json(data) -> PathSet:
    if not isinstance(data, dict):
        raise FormatError("path set must be a JSON object")
    unknown = set(data) - PATHSET_KEYS
    if unknown:
        raise FormatError(f"unknown path-set key(s): {', '.join(sorted(unknown))}")
    if "paths" not in data:
        raise FormatError("path set needs a 'paths' array")
    traffic_type = data.get("traffic_type", "default")
    if not isinstance(traffic_type, str):
        raise FormatError("traffic_type must be a string")
    return PathSet.of(_paths(data["paths"], "paths"), traffic_type)


def pathset_to_json(P: PathSet | Iterable, traffic_type: str | None = None) -> dict:
    if isinstance(P, PathSet):
        traffic_type = traffic_type or P.traffic_type
    return {"traffic_type": traffic_type or "default", "paths": [list(p) for p in P]}


def load_pathset(path) -> PathSet:
    return pathset_from_json(_read(path))


def load_update(path) -> tuple[list[tuple[str, ...]], list[tuple[str, ...]]]:
    data = _read(path)
    if not isinstance(data, dict):
        raise FormatError("update request must be a JSON object")
    unknown = set(data) - UPDATE_KEYS
    if unknown:
        raise FormatError(f"unknown update key(s): {', '.join(sorted(unknown))}")
    return _paths(data.get("add", []), "add"), _paths(data.get("remove", []), "remove")


def configuration_to_json(c: Iterable[FlowRule]) -> list[list[str]]:
    return [list(r) for r in sorted_rules(c)]


def configuration_from_json(data) -> frozenset[FlowRule]:
    if not isinstance(data, list):
        raise FormatError("configuration must be an array of rule triples")
    rules = []
    for i, r in enumerate(data):
        triple = _string_list(r, f"rule[{i}]")
        if len(triple) != 3:
            raise FormatError(f"rule[{i}] must have 3 elements")
        rules.append(FlowRule(*triple))
    return frozenset(rules)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
