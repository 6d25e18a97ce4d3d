"""Command-line front end.

Exit codes: 0 every check passed, 1 some check failed, 2 operational error
(unknown preset, unreadable or inconsistent input, threshold exceeded).
Reports are JSON with ``"schema": 1`` and are byte-stable for fixed input;
wall-clock timings are only included with ``--timings``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from arclab import __version__
from arclab.arcs import amalgam_check, direct_report
from arclab.cosets import (
    CosetGraph,
    build_coset_graph,
    coset_action,
    generates,
    graph_document,
    graph_from_document,
    graph_summary,
    is_connected,
    to_dot,
)
from arclab.groups import load_generators
from arclab.perm import GroupError, intersect_small
from arclab.presets import PRESETS, Check, Limits, resolve

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class CliError(Exception):
    pass


def dumps(doc) -> str:
    """Indented JSON with lists of scalars kept on one line."""

    def enc(x, depth):
        pad = " " * depth
        if isinstance(x, dict):
            if not x:
                return "{}"
            items = [f'{pad} {json.dumps(k, ensure_ascii=False)}: {enc(v, depth + 1)}' for k, v in x.items()]
            return "{\n" + ",\n".join(items) + f"\n{pad}}}"
        if isinstance(x, (list, tuple)):
            if all(not isinstance(v, (dict, list, tuple)) for v in x):
                return json.dumps(list(x), ensure_ascii=False)
            items = [f"{pad} {enc(v, depth + 1)}" for v in x]
            return "[\n" + ",\n".join(items) + f"\n{pad}]"
        return json.dumps(x, ensure_ascii=False)

    return enc(doc, 0) + "\n"


class _Timer:
    def __init__(self):
        self.marks: dict[str, float] = {}

    def __call__(self, name: str):
        timer = self

        class _Ctx:
            def __enter__(self):
                self.t = time.perf_counter()

            def __exit__(self, *exc):
                timer.marks[name] = round(time.perf_counter() - self.t, 4)

        return _Ctx()


def _limits(args) -> Limits:
    return Limits(args.max_index, args.max_arcs, args.max_enum)


def _check_dict(c: Check) -> dict:
    return {"name": c.name, "passed": c.passed, "detail": c.detail}


def _graph_section(cg: CosetGraph, checks: list[Check], s: int, claim: int, limits: Limits) -> dict:
    L, R, C = cg.amalgam
    G = cg.parent
    checks.append(Check("left vertex count = |G:L|", cg.left_count == G.order() // L.order()))
    checks.append(Check("right vertex count = |G:R|", cg.right_count == G.order() // R.order()))
    checks.append(Check("edge count = |G:L∩R|", cg.edge_count == G.order() // C.order()))
    connected = is_connected(cg)
    checks.append(Check("connected (BFS, cross-checked with <L, R> = G)", connected))
    section = {"built": True, **graph_summary(cg)}
    rep = direct_report(cg, s, max_arcs=limits.max_arcs)
    section["local"] = rep.to_dict()
    if claim >= s:
        checks.append(Check(f"locally {s}-arc-transitive (direct)", rep.verdict))
    if s == 2:
        ac = amalgam_check(L, R, C, limits.max_index, limits.max_enum)
        checks.append(Check("direct and amalgam routes agree", rep.verdict == ac.verdict))
    return section


def _report(subject: dict, checks: list[Check], extra: dict, timer: _Timer | None) -> dict:
    doc = {
        "schema": 1,
        "tool": "arclab",
        "version": __version__,
        "subject": subject,
        "verdict": "pass" if all(c.passed for c in checks) else "fail",
        **extra,
        "checks": [_check_dict(c) for c in checks],
    }
    if timer is not None:
        doc["timings"] = timer.marks
    return doc


def _emit(doc: dict, out: str | None) -> None:
    text = dumps(doc)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def cmd_verify_preset(args) -> int:
    limits = _limits(args)
    timer = _Timer() if args.timings else None
    try:
        builder = resolve(args.name)
    except KeyError:
        raise CliError(f"unknown preset {args.name!r}; see list-presets") from None
    with (timer or _Timer())("preset"):
        preset = builder(limits)
    checks = list(preset.checks)
    extra = {
        "provenance": preset.provenance,
        "amalgam_orders": list(preset.expected_orders),
        "valencies": list(preset.expected_valencies),
        "facts": _jsonable(preset.facts),
    }
    if args.build_graph:
        idx = preset.graph_indices()
        if idx is None or max(idx) > limits.max_index:
            extra["graph"] = {"built": False, "reason": "index over threshold" if idx else "no parent group"}
        else:
            with (timer or _Timer())("graph"):
                cg = build_coset_graph(preset.parent, preset.L, preset.R, limits.max_index, limits.max_enum)
                extra["graph"] = _graph_section(cg, checks, args.s, preset.expected_local_s, limits)
    _emit(_report({"preset": args.name}, checks, extra, timer), args.out)
    return EXIT_PASS if all(c.passed for c in checks) else EXIT_FAIL


def _load_amalgam(args):
    G = load_generators(args.group)
    L = load_generators(args.left)
    R = load_generators(args.right)
    if not (G.degree == L.degree == R.degree):
        raise CliError("group and subgroups must have the same degree")
    for name, H in (("left", L), ("right", R)):
        if not H.is_subgroup_of(G):
            raise CliError(f"{name} subgroup is not contained in the group")
    return G, L, R


def cmd_verify_amalgam(args) -> int:
    limits = _limits(args)
    timer = _Timer() if args.timings else None
    G, L, R = _load_amalgam(args)
    checks: list[Check] = []
    C = intersect_small(L, R, limits.max_enum)
    orders = [L.order(), R.order(), C.order()]
    checks.append(Check("L proper", L.order() < G.order()))
    checks.append(Check("R proper", R.order() < G.order()))
    checks.append(Check("<L, R> = G (connected)", generates(G, L, R)))
    extra = {"group_order": str(G.order()), "amalgam_orders": orders,
             "valencies": [orders[0] // orders[2], orders[1] // orders[2]]}
    indices = (G.order() // L.order(), G.order() // R.order())
    fits = max(indices) <= limits.max_index
    if fits:
        for name, H in (("L", L), ("R", R)):
            act = coset_action(G, H, limits.max_index)
            checks.append(Check(f"{name} core-free (faithful coset action)", act.kernel_is_trivial,
                                f"kernel order {act.kernel_order()}"))
    ac = amalgam_check(L, R, C, limits.max_index, limits.max_enum)
    checks.append(Check("L 2-transitive on [L:L∩R]", ac.left_2transitive, f"degree {ac.left_degree}"))
    checks.append(Check("R 2-transitive on [R:L∩R]", ac.right_2transitive, f"degree {ac.right_degree}"))
    extra["amalgam_route"] = ac.report().to_dict()
    if fits and L.order() < G.order() and R.order() < G.order():
        with (timer or _Timer())("graph"):
            cg = build_coset_graph(G, L, R, limits.max_index, limits.max_enum)
            section = {"built": True, **graph_summary(cg)}
            rep = direct_report(cg, args.s, max_arcs=limits.max_arcs)
            checks.append(Check(f"locally {args.s}-arc-transitive (direct)", rep.verdict))
            section["local"] = rep.to_dict()
            extra["graph"] = section
    else:
        extra["graph"] = {"built": False, "reason": "index over threshold" if not fits else "improper subgroup"}
    subject = {"group": str(args.group), "left": str(args.left), "right": str(args.right)}
    _emit(_report(subject, checks, extra, timer), args.out)
    return EXIT_PASS if all(c.passed for c in checks) else EXIT_FAIL


def cmd_build_graph(args) -> int:
    limits = _limits(args)
    if args.preset:
        try:
            preset = resolve(args.preset)(limits)
        except KeyError:
            raise CliError(f"unknown preset {args.preset!r}") from None
        G, L, R = preset.parent, preset.L, preset.R
        if G is None:
            raise CliError("preset has no parent group")
        subject = {"preset": args.preset}
    else:
        if not (args.group and args.left and args.right):
            raise CliError("give --preset or all of --group, --left, --right")
        G, L, R = _load_amalgam(args)
        subject = {"group": str(args.group), "left": str(args.left), "right": str(args.right)}
    cg = build_coset_graph(G, L, R, limits.max_index, limits.max_enum)
    Path(args.out).write_text(dumps(graph_document(cg, {"subject": subject})), encoding="utf-8")
    return EXIT_PASS


def cmd_export(args) -> int:
    path = Path(args.graph)
    if not path.exists():
        raise CliError(f"no graph at {path}; run build-graph first")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise CliError(f"{path}: not a graph document ({e})") from None
    graph, left = graph_from_document(doc)
    if args.format == "dot":
        text = to_dot(graph, left_count=left)
    else:
        text = dumps(doc)
    Path(args.out).write_text(text, encoding="utf-8")
    return EXIT_PASS


def cmd_list_presets(args) -> int:
    for name, (_, desc) in PRESETS.items():
        print(f"{name:32s} {desc}")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arclab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"arclab {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def limits(p):
        d = Limits()
        p.add_argument("--max-index", type=int, default=d.max_index, help="coset index threshold")
        p.add_argument("--max-arcs", type=int, default=d.max_arcs, help="s-arc enumeration threshold")
        p.add_argument("--max-enum", type=int, default=d.max_enum, help="element enumeration threshold")

    p = sub.add_parser("verify-preset", help="run a named preset's self-checks")
    p.add_argument("name")
    p.add_argument("--build-graph", action="store_true", help="materialize the coset graph when small enough")
    p.add_argument("--s", type=int, default=2, help="arc length for the direct check")
    p.add_argument("--out")
    p.add_argument("--timings", action="store_true")
    limits(p)
    p.set_defaults(func=cmd_verify_preset)

    p = sub.add_parser("verify-amalgam", help="check an amalgam given by generator files")
    p.add_argument("--group", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--out")
    p.add_argument("--timings", action="store_true")
    limits(p)
    p.set_defaults(func=cmd_verify_amalgam)

    p = sub.add_parser("build-graph", help="write the coset graph as JSON")
    p.add_argument("--preset")
    p.add_argument("--group")
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--out", required=True)
    limits(p)
    p.set_defaults(func=cmd_build_graph)

    p = sub.add_parser("export", help="convert a built graph to DOT or JSON")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("list-presets", help="list preset names")
    p.set_defaults(func=cmd_list_presets)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, GroupError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
