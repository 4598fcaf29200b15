"""Command-line surface.

Exit codes are a contract: 0 the property holds / the input is valid / the
fuzz verdict is confirmed or vacuous, 1 it fails or a counterexample was
found, 2 precondition, configuration, or document errors.  Output is built
as one string and written once, so partial output never escapes on error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import typing as t

from .baire import (
    is_baire,
    is_first_category,
    is_locally_compact,
    is_nowhere_dense,
)
from .compactness import is_compact_set, is_compact_space, is_quasi_compact
from .core import (
    SoftElement,
    SoftSet,
    element_count,
    iter_elements,
    null_set,
)
from .document import (
    SpaceDocument,
    encode_set,
    parse_file,
    resolve_set,
    serialize,
    set_names_in,
)
from .errors import DocumentError, PreconditionError, SoftTopoError
from .fuzzing.generate import GeneratorConfig
from .fuzzing.harness import report_text, run_theorem, serialize_report
from .maps import SoftFunction, definitional_continuity, preimage_continuity
from .separation import is_hausdorff, is_normal, is_regular
from .subspace import SubspacePreconditionError, build_subspace
from .topology import (
    LimitingMode,
    SoftTopology,
    closure,
    interior,
    limiting_elements,
    verify_topology,
)

__all__ = ["main"]

_ELEMENT_GUARD = 10**6


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def _dumps(payload: t.Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def format_set(f: SoftSet) -> str:
    """Compact display: one {…} block per parameter, in parameter order."""
    blocks = []
    for mask in f.slices:
        blocks.append("{" + ",".join(f.universe.names_of(mask)) + "}")
    return "(" + ",".join(blocks) + ")"


def format_element(x: SoftElement) -> str:
    return "(" + ",".join(x.universe.points[c] for c in x.coords) + ")"


def _encode_element(x: SoftElement) -> dict[str, str]:
    return {p: x.universe.points[c] for p, c in zip(x.universe.params, x.coords)}


def _encode_value(v: t.Any) -> t.Any:
    """Witness payloads mix sets, elements, and tuples; encode recursively."""
    if isinstance(v, SoftSet):
        return encode_set(v)
    if isinstance(v, SoftElement):
        return _encode_element(v)
    if isinstance(v, tuple):
        return [_encode_value(item) for item in v]
    return v


def _format_value(v: t.Any) -> str:
    if isinstance(v, SoftSet):
        return format_set(v)
    if isinstance(v, SoftElement):
        return format_element(v)
    if isinstance(v, tuple):
        return "[" + ", ".join(_format_value(item) for item in v) + "]"
    return str(v)


def _load_topology(path: str) -> tuple[SpaceDocument, SoftTopology]:
    doc = parse_file(path)
    if doc.topology is None:
        raise PreconditionError(f"{path}: document carries no topology")
    report = verify_topology(doc.universe, doc.topology.members, doc.topology.absolute)
    if not report.valid:
        details = "; ".join(v.describe() for v in report.violations[:4])
        raise PreconditionError(f"{path}: topology is not valid: {details}")
    return doc, doc.topology


def _named_set(doc: SpaceDocument, name: str) -> SoftSet:
    return resolve_set(doc, name)


# --- verify ------------------------------------------------------------------


def _cmd_verify(args) -> int:
    doc = parse_file(args.file)
    if doc.topology is None:
        raise PreconditionError(f"{args.file}: document carries no topology")
    report = verify_topology(doc.universe, doc.topology.members, doc.topology.absolute)
    if args.format == "json":
        _emit(
            _dumps(
                {
                    "command": "verify",
                    "valid": report.valid,
                    "violations": [
                        {
                            "axiom": v.axiom,
                            "witnesses": _encode_value(v.witnesses),
                            "offending": _encode_value(v.offending),
                        }
                        for v in report.violations
                    ],
                }
            )
        )
    else:
        if report.valid:
            _emit("valid topology\n")
        else:
            lines = ["not a valid topology:"]
            lines += [f"  - {v.describe()}" for v in report.violations]
            _emit("\n".join(lines) + "\n")
    return 0 if report.valid else 1


# --- check -------------------------------------------------------------------


def _check_outcome(args, prop: str, holds: bool, details: dict[str, t.Any]) -> int:
    if args.format == "json":
        payload = {"command": "check", "property": prop, "holds": holds}
        payload.update({k: _encode_value(v) for k, v in details.items()})
        _emit(_dumps(payload))
    else:
        lines = [f"{prop}: {'holds' if holds else 'fails'}"]
        for k, v in details.items():
            if v is not None:
                lines.append(f"  {k}: {_format_value(v)}")
        _emit("\n".join(lines) + "\n")
    return 0 if holds else 1


def _cmd_check(args) -> int:
    doc, topo = _load_topology(args.file)
    prop = args.property
    if prop in ("compact-set", "nowhere-dense", "first-category") and not args.set:
        raise PreconditionError(f"check {prop} requires --set NAME")

    if prop == "hausdorff":
        rep = is_hausdorff(topo)
        return _check_outcome(
            args, prop, rep.holds,
            {"witness": rep.witness, "counterexample": rep.counterexample},
        )
    if prop == "regular":
        rep = is_regular(topo, literal_disjointness=args.literal_disjointness)
        return _check_outcome(
            args, prop, rep.holds,
            {"witness": rep.witness, "counterexample": rep.counterexample},
        )
    if prop == "normal":
        rep = is_normal(topo)
        return _check_outcome(
            args, prop, rep.holds,
            {"witness": rep.witness, "counterexample": rep.counterexample},
        )
    if prop == "quasi-compact":
        rep = is_quasi_compact(topo)
        return _check_outcome(
            args, prop, rep.holds, {"justification": rep.justification}
        )
    if prop == "compact":
        rep = is_compact_space(topo)
        return _check_outcome(
            args, prop, rep.compact,
            {"quasi_compact": rep.quasi.holds, "hausdorff": rep.hausdorff.holds},
        )
    if prop == "compact-set":
        rep = is_compact_set(topo, _named_set(doc, args.set))
        return _check_outcome(
            args, prop, rep.compact,
            {
                "set": args.set,
                "admissible": rep.admissible,
                "complement_admissible": rep.complement_admissible,
            },
        )
    if prop == "locally-compact":
        rep = is_locally_compact(topo)
        return _check_outcome(
            args, prop, rep.holds, {"counterexample": rep.counterexample}
        )
    if prop == "baire":
        rep = is_baire(topo)
        return _check_outcome(
            args, prop, rep.baire,
            {"rare_closed": len(rep.rare_closed), "union_interior": rep.union_interior},
        )
    if prop == "nowhere-dense":
        verdict = is_nowhere_dense(topo, _named_set(doc, args.set))
        return _check_outcome(args, prop, verdict, {"set": args.set})
    if prop == "first-category":
        rep = is_first_category(topo, _named_set(doc, args.set))
        return _check_outcome(
            args, prop, rep.first_category,
            {"set": args.set, "verdict": rep.verdict, "pieces": len(rep.decomposition)},
        )
    raise PreconditionError(f"unknown property {prop!r}")


# --- compute -----------------------------------------------------------------


def _cmd_compute(args) -> int:
    doc, topo = _load_topology(args.file)
    subject = _named_set(doc, args.set)
    if args.operation == "closure":
        result: t.Any = closure(topo, subject)
    elif args.operation == "interior":
        result = interior(topo, subject)
    else:
        mode = LimitingMode(args.reading)
        result = limiting_elements(topo, subject, mode)

    if args.format == "json":
        payload: dict[str, t.Any] = {
            "command": "compute",
            "operation": args.operation,
            "set": args.set,
        }
        if args.operation == "limiting":
            payload["reading"] = args.reading
            payload["result"] = [_encode_element(x) for x in result]
        else:
            payload["result"] = encode_set(result)
        _emit(_dumps(payload))
    else:
        if args.operation == "limiting":
            shown = " ".join(format_element(x) for x in result) or "(none)"
            _emit(f"limiting({args.set}) [{args.reading}] = {shown}\n")
        else:
            _emit(f"{args.operation}({args.set}) = {format_set(result)}\n")
    return 0


# --- elements ----------------------------------------------------------------


def _cmd_elements(args) -> int:
    doc = parse_file(args.file)
    subject = _named_set(doc, args.set)
    count = element_count(subject)
    if count > _ELEMENT_GUARD and not args.force:
        raise PreconditionError(
            f"{count} soft elements exceeds the guard ({_ELEMENT_GUARD}); "
            "pass --force to enumerate anyway"
        )
    elements = list(iter_elements(subject))
    if args.format == "json":
        _emit(
            _dumps(
                {
                    "command": "elements",
                    "set": args.set,
                    "count": count,
                    "elements": [_encode_element(x) for x in elements],
                }
            )
        )
    else:
        lines = [f"{args.set}: {count} soft elements"]
        lines += [f"  {format_element(x)}" for x in elements]
        _emit("\n".join(lines) + "\n")
    return 0


# --- subspace ----------------------------------------------------------------


def _subspace_names(doc: SpaceDocument, sub) -> tuple[dict[str, SoftSet], tuple[str, ...]]:
    """Name traces after their first parent origin, suffixed, keeping the
    reserved names for the null trace and the carrier itself."""
    parent_names: dict[int, str] = {}
    if doc.topology_names:
        for i, name in enumerate(doc.topology_names):
            parent_names[i] = name
    sets: dict[str, SoftSet] = {"Y": sub.carrier}
    names: list[str] = []
    for trace_idx, member in enumerate(sub.topology.members):
        if member == null_set(doc.universe):
            names.append("PHI")
            continue
        if member == sub.carrier:
            names.append("ABS")
            continue
        origin = next(o for ti, o in sub.provenance if ti == trace_idx)
        base = parent_names.get(origin, f"M{origin}")
        name = f"{base}_Y"
        while name in sets:
            name += "_"
        sets[name] = member
        names.append(name)
    return sets, tuple(names)


def _cmd_subspace(args) -> int:
    doc, topo = _load_topology(args.file)
    points = tuple(p.strip() for p in args.points.split(",") if p.strip())
    try:
        sub = build_subspace(topo, points)
    except SubspacePreconditionError as exc:
        if args.format == "json":
            _emit(
                _dumps(
                    {
                        "command": "subspace",
                        "satisfied": False,
                        "pair_violations": list(exc.report.pair_violations),
                        "trace_violations": list(exc.report.trace_violations),
                    }
                )
            )
        else:
            _emit("subspace preconditions violated: " + exc.report.describe() + "\n")
        return 1
    sets, names = _subspace_names(doc, sub)
    out_doc = SpaceDocument(
        universe=doc.universe,
        sets=sets,
        absolute_name="Y",
        topology_names=names,
        topology=sub.topology,
        functions={},
        elements={},
    )
    if args.format == "json":
        _emit(serialize(out_doc))
    else:
        lines = [f"subspace on {{{','.join(points)}}}:"]
        for name, member in zip(names, sub.topology.members):
            lines.append(f"  {name} = {format_set(member)}")
        _emit("\n".join(lines) + "\n")
    return 0


# --- map check ---------------------------------------------------------------


def _cmd_map(args) -> int:
    dom_doc, dom_topo = _load_topology(args.domain)
    cod_doc, cod_topo = _load_topology(args.codomain)
    if args.fn not in dom_doc.functions:
        raise PreconditionError(f"no function named {args.fn!r} in {args.domain}")
    fn = SoftFunction.from_names(
        dom_doc.universe, cod_doc.universe, dom_doc.functions[args.fn]
    )
    definitional = definitional_continuity(fn, dom_topo, cod_topo)
    by_preimage = preimage_continuity(fn, dom_topo, cod_topo, degenerate="violation")
    agree = definitional.continuous == by_preimage.continuous
    if args.format == "json":
        _emit(
            _dumps(
                {
                    "command": "map-check",
                    "function": args.fn,
                    "definitional": definitional.continuous,
                    "preimage": by_preimage.continuous,
                    "agree": agree,
                }
            )
        )
    else:
        _emit(
            f"definitional: {'continuous' if definitional.continuous else 'not continuous'}\n"
            f"preimage:     {'continuous' if by_preimage.continuous else 'not continuous'}\n"
            f"criteria {'agree' if agree else 'diverge'}\n"
        )
    return 0 if agree else 1


# --- fuzz --------------------------------------------------------------------


def _cmd_fuzz(args) -> int:
    seed = args.seed
    if seed is None:
        env = os.environ.get("SOFTTOPO_SEED")
        seed = int(env) if env else 0
    config = GeneratorConfig(
        points=args.points,
        params=args.params,
        seed=seed,
        subbase_size=args.subbase,
        max_topology=args.max_topology,
        trials=args.trials,
    )
    report = run_theorem(args.case, config, workers=args.workers)
    rendered = serialize_report(report) if args.format == "json" else report_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(serialize_report(report))
    _emit(rendered)
    if report.counterexamples:
        first = report.counterexamples[0]
        path = (
            args.out + ".counterexample.json"
            if args.out
            else f"{args.case}.counterexample.json"
        )
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(_dumps(first.document))
        _emit(f"minimal counterexample written to {path}\n")
        return 1
    return 0


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="softtopo",
        description="Inspect soft topological space documents and fuzz statements about them.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("text", "json"), default="text",
        help="output format (default: text)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="check the topology axioms")
    p.add_argument("file")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check", parents=[common], help="check a named property")
    p.add_argument(
        "property",
        choices=(
            "hausdorff", "regular", "normal", "quasi-compact", "compact",
            "compact-set", "locally-compact", "baire", "nowhere-dense",
            "first-category",
        ),
    )
    p.add_argument("file")
    p.add_argument("--set", help="named set for the set-scoped properties")
    p.add_argument(
        "--literal-disjointness", action="store_true",
        help="for regular: demand literally disjoint elementary meets",
    )
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("compute", parents=[common], help="closure, interior, or limiting elements")
    p.add_argument("operation", choices=("closure", "interior", "limiting"))
    p.add_argument("file")
    p.add_argument("--set", required=True)
    p.add_argument(
        "--reading", choices=("per-parameter", "whole-open"), default="per-parameter",
        help="limiting-element reading (default: per-parameter)",
    )
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("elements", parents=[common], help="enumerate soft elements")
    p.add_argument("file")
    p.add_argument("--set", required=True)
    p.add_argument("--force", action="store_true", help="ignore the enumeration guard")
    p.set_defaults(func=_cmd_elements)

    p = sub.add_parser("subspace", parents=[common], help="build the relative topology")
    p.add_argument("file")
    p.add_argument("--points", required=True, help="comma-separated carrier points")
    p.set_defaults(func=_cmd_subspace)

    p = sub.add_parser("map", parents=[common], help="soft function checks")
    map_sub = p.add_subparsers(dest="map_command", required=True)
    mc = map_sub.add_parser("check", parents=[common], help="compare continuity criteria")
    mc.add_argument("--fn", required=True)
    mc.add_argument("--domain", required=True)
    mc.add_argument("--codomain", required=True)
    mc.set_defaults(func=_cmd_map)

    p = sub.add_parser("fuzz", parents=[common], help="run a registry case")
    p.add_argument("--case", required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None,
                   help="master seed (default: SOFTTOPO_SEED or 0)")
    p.add_argument("--points", type=int, default=4)
    p.add_argument("--params", type=int, default=2)
    p.add_argument("--max-topology", type=int, default=512, dest="max_topology")
    p.add_argument("--subbase", type=int, default=3, help="generators per draw")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="write the report to this path")
    p.set_defaults(func=_cmd_fuzz)

    return parser


def main(argv: t.Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DocumentError as exc:
        for path, message in exc.issues:
            print(f"error: {path}: {message}", file=sys.stderr)
        return 2
    except SoftTopoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
