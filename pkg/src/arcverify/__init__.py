"""Preventive verification and repair of requested SDN data paths.

A set of requested paths for one traffic type is implementable exactly when
it is arc closed; otherwise the installed rules also implement extra paths,
possibly infinitely many (a forwarding loop).
"""

from arcverify.closure import (
    Status,
    Verdict,
    arc_closure,
    brute_force_closure,
    build_closure_graph,
    check_arc_closed,
    check_update,
    count_source_sink_paths,
    find_cycle,
)
from arcverify.errors import (
    BudgetExceeded,
    CyclicGraph,
    EmptyUnusedSet,
    InfiniteClosure,
    LoopDetected,
    NoFiniteSuperset,
    RepairImpossible,
    TopologyError,
    UnknownNode,
)
from arcverify.paths import (
    PathSet,
    is_complete,
    is_edge_simple,
    is_node_simple,
    path_arcs,
    validate_path_set,
)
from arcverify.repair import (
    build_conflict_graph,
    incompatible,
    max_arc_closed_subset,
    min_arc_closed_superset,
    reroute_repair,
)
from arcverify.rules import FlowRule, derive_rules, induced_paths, simulate_injection
from arcverify.topology import Topology, build_topology, neighbors, unused_switch_edges

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "CyclicGraph",
    "EmptyUnusedSet",
    "FlowRule",
    "InfiniteClosure",
    "LoopDetected",
    "NoFiniteSuperset",
    "PathSet",
    "RepairImpossible",
    "Status",
    "Topology",
    "TopologyError",
    "UnknownNode",
    "Verdict",
    "arc_closure",
    "brute_force_closure",
    "build_closure_graph",
    "build_conflict_graph",
    "build_topology",
    "check_arc_closed",
    "check_update",
    "count_source_sink_paths",
    "derive_rules",
    "find_cycle",
    "incompatible",
    "induced_paths",
    "is_complete",
    "is_edge_simple",
    "is_node_simple",
    "max_arc_closed_subset",
    "min_arc_closed_superset",
    "neighbors",
    "path_arcs",
    "reroute_repair",
    "simulate_injection",
    "unused_switch_edges",
    "validate_path_set",
]
