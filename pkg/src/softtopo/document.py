"""Canonical JSON interchange for universes, sets, topologies, and functions.

Documents name points and parameters by string so fixtures stay auditable by
eye.  Canonical form means: object keys sorted, point arrays in universe
order, two-space indentation, trailing newline.  ``parse`` collects every
problem it can find and reports them all at once with JSON-path style
locations.
"""

from __future__ import annotations

import dataclasses as d
import json
import typing as t

from .core import SoftElement, SoftSet, Universe, full_set, is_admissible, is_null, null_set
from .errors import DocumentError, InputError
from .topology import SoftTopology

__all__ = [
    "FORMAT",
    "RESERVED_NAMES",
    "SpaceDocument",
    "decode_set",
    "encode_set",
    "parse",
    "parse_file",
    "resolve_set",
    "serialize",
    "set_names_in",
    "to_payload",
]

FORMAT = "soft-space/1"

# PHI is the empty soft set, ABS the document's absolute (the full set unless
# an "absolute" entry overrides it).  Neither may appear under "sets".
RESERVED_NAMES = ("PHI", "ABS")

_TOP_KEYS = frozenset(
    ["format", "universe", "sets", "absolute", "topology", "functions", "elements", "fuzz"]
)


@d.dataclass(frozen=True)
class SpaceDocument:
    """A resolved document: typed objects plus the raw naming needed to
    serialize back out unchanged."""

    universe: Universe
    sets: dict[str, SoftSet]
    absolute_name: str | None  # None means the full set
    topology_names: tuple[str, ...] | None
    topology: SoftTopology | None
    functions: dict[str, dict[str, dict[str, str]]]
    elements: dict[str, SoftElement]
    extras: dict[str, t.Any] = d.field(default_factory=dict)

    @property
    def absolute(self) -> SoftSet:
        if self.absolute_name is None:
            return full_set(self.universe)
        return self.sets[self.absolute_name]


def resolve_set(doc: SpaceDocument, name: str) -> SoftSet:
    if name == "PHI":
        return null_set(doc.universe)
    if name == "ABS":
        return doc.absolute
    try:
        return doc.sets[name]
    except KeyError:
        raise InputError(f"no set named {name!r} in document") from None


def set_names_in(doc: SpaceDocument) -> dict[SoftSet, str]:
    """First name for each distinct set value, including the reserved two."""
    names: dict[SoftSet, str] = {}
    for name, value in doc.sets.items():
        names.setdefault(value, name)
    # Reserved names win so round-tripped topologies stay terse.
    names[doc.absolute] = "ABS"
    names[null_set(doc.universe)] = "PHI"
    return names


# --- decoding ---------------------------------------------------------------


class _Issues:
    def __init__(self) -> None:
        self.items: list[tuple[str, str]] = []

    def add(self, path: str, message: str) -> None:
        self.items.append((path, message))

    def raise_if_any(self) -> None:
        if self.items:
            raise DocumentError(self.items)


def _duplicate_checking_hook(issues: _Issues):
    def hook(pairs):
        out: dict[str, t.Any] = {}
        for key, value in pairs:
            if key in out:
                issues.add("$", f"duplicate key {key!r}")
            out[key] = value
        return out

    return hook


def _expect_str_array(value, path: str, issues: _Issues) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        issues.add(path, "expected an array of strings")
        return []
    return value


def decode_set(
    universe: Universe, raw, path: str, issues: _Issues, set_name: str
) -> SoftSet | None:
    """One named set: an object mapping every declared parameter to an array
    of declared point names."""
    if not isinstance(raw, dict):
        issues.add(path, "expected an object of parameter slices")
        return None
    masks = []
    ok = True
    for param in universe.params:
        if param not in raw:
            issues.add(path, f"set {set_name!r} is missing the slice for parameter {param!r}")
            ok = False
            continue
        entries = _expect_str_array(raw[param], f"{path}.{param}", issues)
        mask = 0
        for point in entries:
            if point not in universe.points:
                issues.add(f"{path}.{param}", f"unknown point {point!r}")
                ok = False
                continue
            bit = 1 << universe.point_index(point)
            if mask & bit:
                issues.add(f"{path}.{param}", f"duplicate point {point!r}")
            mask |= bit
        masks.append(mask)
    for param in raw:
        if param not in universe.params:
            issues.add(f"{path}.{param}", f"unknown parameter {param!r}")
            ok = False
    if not ok:
        return None
    return SoftSet(universe, tuple(masks))


def _decode_universe(raw, issues: _Issues) -> Universe | None:
    if not isinstance(raw, dict):
        issues.add("$.universe", "expected an object with points and params")
        return None
    before = len(issues.items)
    points = _expect_str_array(raw.get("points"), "$.universe.points", issues)
    params = _expect_str_array(raw.get("params"), "$.universe.params", issues)
    for key in raw:
        if key not in ("points", "params"):
            issues.add(f"$.universe.{key}", "unknown key")
    if not points:
        issues.add("$.universe.points", "at least one point is required")
    if not params:
        issues.add("$.universe.params", "at least one parameter is required")
    if len(set(points)) != len(points):
        issues.add("$.universe.points", "point names must be distinct")
    if len(set(params)) != len(params):
        issues.add("$.universe.params", "parameter names must be distinct")
    if len(issues.items) > before:
        return None
    return Universe.of(points, params)


def _decode_function(
    universe: Universe, raw, path: str, issues: _Issues
) -> dict[str, dict[str, str]] | None:
    """Structural check only.  Target names resolve against a codomain later,
    so a lone document cannot vouch for them."""
    if not isinstance(raw, dict):
        issues.add(path, "expected an object of per-parameter point maps")
        return None
    ok = True
    for param in universe.params:
        if param not in raw:
            issues.add(path, f"missing map for parameter {param!r}")
            ok = False
            continue
        table = raw[param]
        if not isinstance(table, dict):
            issues.add(f"{path}.{param}", "expected an object mapping points to points")
            ok = False
            continue
        for src, dst in table.items():
            if src not in universe.points:
                issues.add(f"{path}.{param}", f"unknown source point {src!r}")
                ok = False
            if not isinstance(dst, str) or not dst:
                issues.add(f"{path}.{param}.{src}", "target must be a point name")
                ok = False
        for point in universe.points:
            if point not in table:
                issues.add(f"{path}.{param}", f"no target for point {point!r}")
                ok = False
    for param in raw:
        if param not in universe.params:
            issues.add(f"{path}.{param}", f"unknown parameter {param!r}")
            ok = False
    if not ok:
        return None
    return {param: dict(raw[param]) for param in universe.params}


def _decode_element(
    universe: Universe, raw, path: str, issues: _Issues
) -> SoftElement | None:
    if not isinstance(raw, dict):
        issues.add(path, "expected an object mapping parameters to points")
        return None
    coords = []
    ok = True
    for param in universe.params:
        if param not in raw:
            issues.add(path, f"missing point for parameter {param!r}")
            ok = False
            continue
        point = raw[param]
        if not isinstance(point, str) or point not in universe.points:
            issues.add(f"{path}.{param}", f"unknown point {point!r}")
            ok = False
            continue
        coords.append(universe.point_index(point))
    for param in raw:
        if param not in universe.params:
            issues.add(f"{path}.{param}", f"unknown parameter {param!r}")
            ok = False
    if not ok:
        return None
    return SoftElement(universe, tuple(coords))


def parse(text: str) -> SpaceDocument:
    issues = _Issues()
    try:
        raw = json.loads(text, object_pairs_hook=_duplicate_checking_hook(issues))
    except json.JSONDecodeError as exc:
        raise DocumentError([("$", f"invalid JSON at line {exc.lineno}: {exc.msg}")]) from None
    if not isinstance(raw, dict):
        raise DocumentError([("$", "document must be a JSON object")])

    for key in raw:
        if key not in _TOP_KEYS:
            issues.add(f"$.{key}", "unknown key")
    if raw.get("format") != FORMAT:
        issues.add("$.format", f"expected {FORMAT!r}")

    universe = _decode_universe(raw.get("universe"), issues)
    if universe is None:
        issues.raise_if_any()
        raise AssertionError("unreachable")

    sets: dict[str, SoftSet] = {}
    raw_sets = raw.get("sets", {})
    if not isinstance(raw_sets, dict):
        issues.add("$.sets", "expected an object of named sets")
        raw_sets = {}
    for name, body in raw_sets.items():
        if name in RESERVED_NAMES:
            issues.add(f"$.sets.{name}", "reserved name cannot be redefined")
            continue
        decoded = decode_set(universe, body, f"$.sets.{name}", issues, name)
        if decoded is not None:
            sets[name] = decoded

    absolute_name = raw.get("absolute")
    if absolute_name is not None:
        if absolute_name == "PHI" or not isinstance(absolute_name, str):
            issues.add("$.absolute", "absolute must name a nonempty set")
            absolute_name = None
        elif absolute_name == "ABS":
            absolute_name = None
        elif absolute_name not in sets:
            issues.add("$.absolute", f"no set named {absolute_name!r}")
            absolute_name = None
        else:
            target = sets[absolute_name]
            if is_null(target) or not is_admissible(target):
                issues.add("$.absolute", "absolute must be admissible and nonempty")
                absolute_name = None

    topology_names: tuple[str, ...] | None = None
    topology: SoftTopology | None = None
    raw_topology = raw.get("topology")
    if raw_topology is not None:
        names = _expect_str_array(raw_topology, "$.topology", issues)
        members: list[SoftSet] = []
        ok = True
        for i, name in enumerate(names):
            if name == "PHI":
                members.append(null_set(universe))
            elif name == "ABS":
                members.append(
                    full_set(universe) if absolute_name is None else sets[absolute_name]
                )
            elif name in sets:
                members.append(sets[name])
            else:
                issues.add(f"$.topology[{i}]", f"no set named {name!r}")
                ok = False
        if ok:
            topology_names = tuple(names)
            absolute = full_set(universe) if absolute_name is None else sets[absolute_name]
            topology = SoftTopology.of(universe, members, absolute)

    functions: dict[str, dict[str, dict[str, str]]] = {}
    raw_functions = raw.get("functions", {})
    if not isinstance(raw_functions, dict):
        issues.add("$.functions", "expected an object of named functions")
        raw_functions = {}
    for name, body in raw_functions.items():
        decoded_fn = _decode_function(universe, body, f"$.functions.{name}", issues)
        if decoded_fn is not None:
            functions[name] = decoded_fn

    elements: dict[str, SoftElement] = {}
    raw_elements = raw.get("elements", {})
    if not isinstance(raw_elements, dict):
        issues.add("$.elements", "expected an object of named elements")
        raw_elements = {}
    for name, body in raw_elements.items():
        decoded_el = _decode_element(universe, body, f"$.elements.{name}", issues)
        if decoded_el is not None:
            elements[name] = decoded_el

    extras: dict[str, t.Any] = {}
    if "fuzz" in raw:
        if not isinstance(raw["fuzz"], dict):
            issues.add("$.fuzz", "expected an object")
        else:
            extras["fuzz"] = raw["fuzz"]

    issues.raise_if_any()
    return SpaceDocument(
        universe=universe,
        sets=sets,
        absolute_name=absolute_name,
        topology_names=topology_names,
        topology=topology,
        functions=functions,
        elements=elements,
        extras=extras,
    )


def parse_file(path: str) -> SpaceDocument:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse(fh.read())
    except OSError as exc:
        raise DocumentError([(path, f"cannot read document: {exc.strerror}")]) from None


# --- encoding ---------------------------------------------------------------


def encode_set(f: SoftSet) -> dict[str, list[str]]:
    """Per-parameter point arrays, points in universe order."""
    return {
        param: list(f.universe.names_of(mask))
        for param, mask in zip(f.universe.params, f.slices)
    }


def _encode_element(x: SoftElement) -> dict[str, str]:
    return {
        param: x.universe.points[c] for param, c in zip(x.universe.params, x.coords)
    }


def to_payload(doc: SpaceDocument) -> dict[str, t.Any]:
    payload: dict[str, t.Any] = {
        "format": FORMAT,
        "universe": {
            "points": list(doc.universe.points),
            "params": list(doc.universe.params),
        },
    }
    if doc.sets:
        payload["sets"] = {name: encode_set(f) for name, f in doc.sets.items()}
    if doc.absolute_name is not None:
        payload["absolute"] = doc.absolute_name
    if doc.topology_names is not None:
        payload["topology"] = list(doc.topology_names)
    if doc.functions:
        payload["functions"] = {
            name: {param: dict(table) for param, table in body.items()}
            for name, body in doc.functions.items()
        }
    if doc.elements:
        payload["elements"] = {
            name: _encode_element(x) for name, x in doc.elements.items()
        }
    if "fuzz" in doc.extras:
        payload["fuzz"] = doc.extras["fuzz"]
    return payload


def serialize(doc: SpaceDocument) -> str:
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_payload(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
