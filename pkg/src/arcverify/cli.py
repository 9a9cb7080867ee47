"""Command-line front end.

Exit codes::

    0  arc closed / success
    1  finite superset (extra paths would be implemented)
    2  infinite closure, forwarding loop, or repair impossible
    3  input validation failure
    4  budget exceeded or internal error

Machine output goes to stdout as JSON; diagnostics go to stderr as JSON and
nothing partial is written to stdout when a command fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from arcverify import closure, dot, formats, repair, rules
from arcverify.errors import BudgetExceeded, InfiniteClosure, RepairImpossible, TopologyError
from arcverify.paths import PathSet, validate_path_set
from arcverify.topology import Topology

EXIT_OK = 0
EXIT_SUPERSET = 1
EXIT_INFINITE = 2
EXIT_INPUT = 3
EXIT_INTERNAL = 4

STATUS_EXIT = {
    closure.Status.ARC_CLOSED: EXIT_OK,
    closure.Status.FINITE_SUPERSET: EXIT_SUPERSET,
    closure.Status.INFINITE_CLOSURE: EXIT_INFINITE,
}


DOT_COMMANDS = ("check", "export-dot")


class InputError(Exception):
    def __init__(self, diagnostics: dict):
        self.diagnostics = diagnostics
        super().__init__(diagnostics.get("error", "invalid input"))


@dataclass
class Result:
    code: int
    stdout: str = ""
    stderr: dict | None = None


def _load_topology(path: str) -> Topology:
    try:
        return formats.load_topology(path)
    except TopologyError as exc:
        raise InputError(
            {"error": "invalid topology", "file": path, "violations": [v.to_json() for v in exc.violations]}
        ) from None
    except (formats.FormatError, OSError) as exc:
        raise InputError({"error": "unreadable topology", "file": path, "detail": str(exc)}) from None


def _load_paths(path: str) -> PathSet:
    try:
        return formats.load_pathset(path)
    except (formats.FormatError, OSError) as exc:
        raise InputError({"error": "unreadable path set", "file": path, "detail": str(exc)}) from None


def _checked_paths(path: str, t: Topology, allow_non_edge_simple: bool) -> PathSet:
    P = _load_paths(path)
    report = validate_path_set(P, t, require_edge_simple=not allow_non_edge_simple)
    if not report.ok:
        raise InputError({"error": "invalid path set", "file": path, **report.to_json()})
    return P


def _emit(obj, fmt: str, summary: str) -> str:
    if fmt == "summary":
        return summary.rstrip("\n") + "\n"
    return formats.dumps(obj)


def _fmt_path(p) -> str:
    return "·".join(p)


def _verdict_summary(v: closure.Verdict) -> str:
    lines = [f"status: {v.status.value}"]
    if v.cycle:
        lines.append("cycle: " + " -> ".join(f"({a},{b})" for a, b in v.cycle + v.cycle[:1]))
    for p in v.extra_paths:
        lines.append("extra: " + _fmt_path(p))
    for p in v.reinduced_paths or ():
        lines.append("re-induced: " + _fmt_path(p))
    return "\n".join(lines)


def cmd_validate(args) -> Result:
    t = _load_topology(args.topology)
    P = _load_paths(args.paths)
    report = validate_path_set(P, t, require_edge_simple=not args.allow_non_edge_simple)
    body = {"topology": "valid", "paths": report.to_json()}
    summary = "valid" if report.ok else "\n".join(f"path {i.path_index}: {i.kind}: {i.detail}" for i in report.issues)
    return Result(EXIT_OK if report.ok else EXIT_INPUT, _emit(body, args.format, summary))


def cmd_rules(args) -> Result:
    t = _load_topology(args.topology)
    P = _checked_paths(args.paths, t, args.allow_non_edge_simple)
    c = rules.derive_rules(P)
    body = formats.configuration_to_json(c)
    summary = "\n".join(f"({a},{s},{b})" for a, s, b in body)
    return Result(EXIT_OK, _emit(body, args.format, summary))


def cmd_check(args) -> Result:
    t = _load_topology(args.topology)
    add, remove = [], []
    if args.update:
        try:
            add, remove = formats.load_update(args.update)
        except (formats.FormatError, OSError) as exc:
            raise InputError({"error": "unreadable update", "file": args.update, "detail": str(exc)}) from None
        for name, group in (("add", add), ("remove", remove)):
            report = validate_path_set(PathSet.of(group), t, not args.allow_non_edge_simple)
            if not report.ok:
                raise InputError({"error": f"invalid update ({name})", "file": args.update, **report.to_json()})
    outputs = []
    code = EXIT_OK
    for path in args.paths:
        P = _checked_paths(path, t, args.allow_non_edge_simple)
        if args.update:
            v = closure.check_update(P, add, remove, args.budget)
        else:
            v = closure.check_arc_closed(P, args.budget)
        code = max(code, STATUS_EXIT[v.status])
        outputs.append((path, P, v))
    if args.format == "dot":
        return Result(code, "".join(dot.closure_graph_to_dot(closure.build_closure_graph(P)) for _, P, _ in outputs))
    if len(outputs) == 1:
        v = outputs[0][2]
        return Result(code, _emit(v.to_json(), args.format, _verdict_summary(v)))
    body = {"results": [{"file": f, "traffic_type": P.traffic_type, **v.to_json()} for f, P, v in outputs]}
    summary = "\n".join(f"{f}: {_verdict_summary(v)}" for f, _, v in outputs)
    return Result(code, _emit(body, args.format, summary))


def cmd_closure(args) -> Result:
    t = _load_topology(args.topology)
    P = _checked_paths(args.paths, t, args.allow_non_edge_simple)
    try:
        cl = closure.arc_closure(P, args.budget)
    except InfiniteClosure as exc:
        v = closure.Verdict(closure.Status.INFINITE_CLOSURE, None, 0, cycle=tuple(exc.cycle)[:-1])
        body = {"status": v.status.value, "cycle": v.to_json()["cycle"]}
        return Result(EXIT_INFINITE, _emit(body, args.format, _verdict_summary(v)))
    status = closure.Status.ARC_CLOSED if cl == P.as_set() else closure.Status.FINITE_SUPERSET
    body = {"status": status.value, **formats.pathset_to_json(sorted(cl), P.traffic_type)}
    summary = f"status: {status.value}\n" + "\n".join(_fmt_path(p) for p in sorted(cl))
    return Result(STATUS_EXIT[status], _emit(body, args.format, summary))


def cmd_simulate(args) -> Result:
    t = _load_topology(args.topology)
    P = _checked_paths(args.paths, t, args.allow_non_edge_simple)
    c = rules.derive_rules(P)
    hosts = sorted(t.hosts) if not args.host else args.host
    for h in hosts:
        if h not in t.hosts:
            raise InputError({"error": "unknown host", "host": h})
    reports = [rules.simulate_injection(c, h, t, args.budget) for h in hosts]
    loop = any(r.loop for r in reports)
    body = {"loop": loop, "hosts": [r.to_json() for r in reports]}
    lines = []
    for r in reports:
        lines.append(f"{r.host}: {len(r.delivered)} delivered" + (", LOOP " + _fmt_path(r.witness) if r.loop else ""))
    return Result(EXIT_INFINITE if loop else EXIT_OK, _emit(body, args.format, "\n".join(lines)))


def cmd_repair(args) -> Result:
    t = _load_topology(args.topology)
    P = _checked_paths(args.paths, t, args.allow_non_edge_simple)
    if args.strategy == "subset":
        kept = repair.max_arc_closed_subset(P, args.exact_threshold)
        removed = [p for p in P if p not in kept]
        body = {**formats.pathset_to_json(kept), "removed_paths": [list(p) for p in removed]}
        summary = "\n".join(["kept:"] + [_fmt_path(p) for p in kept] + ["removed:"] + [_fmt_path(p) for p in removed])
        return Result(EXIT_OK, _emit(body, args.format, summary))
    if args.strategy == "superset":
        sup = repair.min_arc_closed_superset(P, args.budget)
        added = [p for p in sup if p not in P]
        body = {**formats.pathset_to_json(sup), "added_paths": [list(p) for p in added]}
        summary = "\n".join([_fmt_path(p) for p in sup] + ["added:"] + [_fmt_path(p) for p in added])
        return Result(EXIT_OK, _emit(body, args.format, summary))
    outcome = repair.reroute_repair(P, t, try_rotations=args.try_rotations)
    summary = "\n".join(_fmt_path(p) for p in outcome.repaired)
    return Result(EXIT_OK, _emit(outcome.to_json(), args.format, summary))


def cmd_export_dot(args) -> Result:
    t = _load_topology(args.topology)
    if args.graph == "topology":
        paths = _checked_paths(args.paths, t, args.allow_non_edge_simple) if args.paths else ()
        return Result(EXIT_OK, dot.topology_to_dot(t, paths))
    if not args.paths:
        raise InputError({"error": "--graph closure needs a path-set file"})
    P = _checked_paths(args.paths, t, args.allow_non_edge_simple)
    return Result(EXIT_OK, dot.closure_graph_to_dot(closure.build_closure_graph(P)))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcverify",
        description="Check whether requested SDN data paths can be implemented exactly, and repair them.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=closure.DEFAULT_BUDGET, help="max paths to enumerate")
    common.add_argument("--allow-non-edge-simple", action="store_true", help="accept paths that repeat an arc")
    common.add_argument("--format", choices=["json", "summary", "dot"], default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a topology and path set")
    p.add_argument("topology")
    p.add_argument("paths")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("rules", parents=[common], help="print the flow rules a path set induces")
    p.add_argument("topology")
    p.add_argument("paths")
    p.set_defaults(func=cmd_rules)

    p = sub.add_parser("check", parents=[common], help="decide arc closedness")
    p.add_argument("topology")
    p.add_argument("paths", nargs="+", help="one path-set file per traffic type")
    p.add_argument("--update", help='JSON file {"add": [...], "remove": [...]}')
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("closure", parents=[common], help="print the arc closure")
    p.add_argument("topology")
    p.add_argument("paths")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("simulate", parents=[common], help="inject packets into the simulated data plane")
    p.add_argument("topology")
    p.add_argument("paths")
    p.add_argument("--host", action="append", help="source host (repeatable; default: every host)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("repair", parents=[common], help="repair a path set that is not arc closed")
    p.add_argument("topology")
    p.add_argument("paths")
    p.add_argument("--strategy", choices=["subset", "superset", "reroute"], default="subset")
    p.add_argument("--exact-threshold", type=int, default=repair.DEFAULT_EXACT_THRESHOLD)
    p.add_argument("--try-rotations", action="store_true", help="retry rerouting from every rotation of the input")
    p.set_defaults(func=cmd_repair)

    p = sub.add_parser("export-dot", parents=[common], help="DOT for the topology or the closure graph")
    p.add_argument("topology")
    p.add_argument("paths", nargs="?")
    p.add_argument("--graph", choices=["topology", "closure"], default="topology")
    p.set_defaults(func=cmd_export_dot)
    return parser


def run(argv: list[str] | None = None) -> Result:
    args = build_parser().parse_args(argv)
    if args.format == "dot" and args.command not in DOT_COMMANDS:
        return Result(EXIT_INPUT, stderr={"error": f"--format dot is not available for {args.command}"})
    try:
        return args.func(args)
    except InputError as exc:
        return Result(EXIT_INPUT, stderr=exc.diagnostics)
    except BudgetExceeded as exc:
        return Result(EXIT_INTERNAL, stderr={"error": "budget exceeded", "budget": exc.budget, "detail": str(exc)})
    except InfiniteClosure as exc:
        return Result(
            EXIT_INFINITE, stderr={"error": str(exc), "cycle": [list(a) for a in exc.cycle]}
        )
    except RepairImpossible as exc:
        diag = {"error": "repair impossible", "detail": str(exc), **exc.diagnostics}
        if exc.pair:
            diag["pair"] = [list(p) for p in exc.pair]
        if exc.arc:
            diag["arc"] = list(exc.arc)
        diag.setdefault("unused_arcs", [])
        diag["unused_arcs"] = [list(a) for a in diag["unused_arcs"]]
        return Result(EXIT_INFINITE, stderr=diag)
    except Exception as exc:  # noqa: BLE001
        return Result(EXIT_INTERNAL, stderr={"error": "internal error", "detail": f"{type(exc).__name__}: {exc}"})


def main(argv: list[str] | None = None) -> int:
    result = run(argv)
    if result.stdout:
        sys.stdout.write(result.stdout)
    if result.stderr is not None:
        sys.stderr.write(json.dumps(result.stderr, sort_keys=True) + "\n")
    return result.code


if __name__ == "__main__":
    sys.exit(main())
