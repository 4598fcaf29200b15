"""Elementary soft topologies: verification, closed sets, closure, interior.

A topology here is a finite duplicate-free member list over one universe,
containing the empty soft set and a designated absolute member, with every
member admissible and the list closed under pairwise elementary union and
pairwise elementary intersection.  Closure under arbitrary unions reduces to
the pairwise check for finite lists; the reduction itself is covered by a
test rather than assumed silently.

The absolute member defaults to the full soft set; subspace topologies reuse
the same verifier with the constant set on the carrier points as absolute.
Operations that rely on complements relative to the whole universe (closed
sets, closure, interior of complements, and everything layered on them)
refuse topologies whose absolute is not the full soft set.
"""

from __future__ import annotations

import dataclasses as d
import enum
import typing as t

from .core import (
    SoftElement,
    SoftSet,
    Universe,
    elementary_intersection,
    elementary_intersection_family,
    elementary_union,
    elementary_union_family,
    full_set,
    is_admissible,
    is_member,
    is_null,
    is_soft_subset,
    iter_elements,
    null_set,
    pointwise_complement,
    pointwise_intersection,
)
from .errors import (
    InputError,
    InvalidTopologyError,
    NotAdmissibleError,
    PreconditionError,
    UniverseMismatchError,
)


@d.dataclass(frozen=True)
class Violation:
    """One failed axiom with the witnesses that exhibit it.

    The offending set is always recomputable from the witnesses, so reports
    can be re-checked independently.
    """

    axiom: str
    witnesses: tuple[SoftSet, ...]
    offending: SoftSet | None

    def describe(self) -> str:
        if self.offending is not None and self.witnesses and self.offending not in self.witnesses:
            return f"{self.axiom}: {self.witnesses} -> {self.offending!r} missing"
        if self.witnesses:
            return f"{self.axiom}: {self.witnesses}"
        return self.axiom


@d.dataclass(frozen=True)
class TopologyReport:
    valid: bool
    violations: tuple[Violation, ...]


@d.dataclass(frozen=True)
class SoftTopology:
    """An immutable member list with a private cache for derived structures.

    The cache only ever holds values computed from the immutable fields, so
    sharing instances between threads stays safe.
    """

    universe: Universe
    members: tuple[SoftSet, ...]
    absolute: SoftSet
    _cache: dict = d.field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def of(
        cls,
        universe: Universe,
        members: t.Iterable[SoftSet],
        absolute: SoftSet | None = None,
    ) -> "SoftTopology":
        return cls(universe, tuple(members), absolute or full_set(universe))

    def __hash__(self) -> int:
        return hash((self.universe, self.members, self.absolute))

    @property
    def member_set(self) -> frozenset[SoftSet]:
        return _cached(self, "member_set", lambda: frozenset(self.members))

    def __contains__(self, s: SoftSet) -> bool:
        return s in self.member_set

    def __len__(self) -> int:
        return len(self.members)


def _cached(topo: SoftTopology, key, builder):
    cache = topo._cache
    if key not in cache:
        cache[key] = builder()
    return cache[key]


# --- construction and verification -----------------------------------------

def verify_topology(
    universe: Universe,
    members: t.Sequence[SoftSet],
    absolute: SoftSet | None = None,
) -> TopologyReport:
    """Check every axiom and report all violations, not just the first."""
    absolute = absolute if absolute is not None else full_set(universe)
    violations: list[Violation] = []

    for m in members:
        if m.universe != universe:
            raise UniverseMismatchError("member from a different universe")
    if absolute.universe != universe:
        raise UniverseMismatchError("absolute from a different universe")

    seen: set[SoftSet] = set()
    for m in members:
        if m in seen:
            violations.append(Violation("duplicate-member", (m,), m))
        seen.add(m)

    if null_set(universe) not in seen:
        violations.append(Violation("phi-member", (), null_set(universe)))
    if absolute not in seen:
        violations.append(Violation("absolute-member", (), absolute))

    admissible: list[SoftSet] = []
    for m in members:
        if not is_admissible(m):
            violations.append(Violation("member-admissible", (m,), m))
            continue
        admissible.append(m)
        if not is_soft_subset(m, absolute):
            violations.append(Violation("member-inside-absolute", (m,), m))

    # Pairwise closure; finite families reduce to this by induction.
    for i in range(len(admissible)):
        for j in range(i + 1, len(admissible)):
            f, g = admissible[i], admissible[j]
            union = elementary_union(f, g)
            if union not in seen:
                violations.append(Violation("union-closure", (f, g), union))
            meet = elementary_intersection(f, g)
            if meet not in seen:
                violations.append(Violation("intersection-closure", (f, g), meet))

    return TopologyReport(valid=not violations, violations=tuple(violations))


def topology_from(
    universe: Universe,
    members: t.Iterable[SoftSet],
    absolute: SoftSet | None = None,
) -> SoftTopology:
    """Verify and wrap; raises InvalidTopologyError with the report."""
    topo = SoftTopology.of(universe, members, absolute)
    report = verify_topology(universe, topo.members, topo.absolute)
    if not report.valid:
        raise InvalidTopologyError(report)
    return topo


def indiscrete_topology(universe: Universe) -> SoftTopology:
    return SoftTopology.of(universe, (null_set(universe), full_set(universe)))


_FULL_TOPOLOGIES: dict[Universe, SoftTopology] = {}


def full_topology(universe: Universe) -> SoftTopology:
    """Every admissible soft set is open; members in lexicographic slice order."""
    topo = _FULL_TOPOLOGIES.get(universe)
    if topo is None:
        import itertools

        nonempty = range(1, universe.full_mask + 1)
        members = [null_set(universe)] + [
            SoftSet(universe, masks)
            for masks in itertools.product(nonempty, repeat=universe.n_params)
        ]
        topo = SoftTopology.of(universe, members)
        _FULL_TOPOLOGIES[universe] = topo
    return topo


def _require_full_absolute(topo: SoftTopology, op: str) -> None:
    if topo.absolute != full_set(topo.universe):
        raise PreconditionError(
            f"{op} needs a topology whose absolute is the full soft set"
        )


# --- open and closed sets ---------------------------------------------------

def is_open(topo: SoftTopology, f: SoftSet) -> bool:
    return f in topo.member_set


def is_closed(topo: SoftTopology, f: SoftSet) -> bool:
    """Closed means: f admissible, its complement admissible, and the
    elementary complement is open."""
    _require_full_absolute(topo, "is_closed")
    if f.universe != topo.universe:
        raise UniverseMismatchError("set from a different universe")
    if not is_admissible(f):
        return False
    comp = pointwise_complement(f)
    if not is_admissible(comp):
        return False
    # For an admissible complement the elementary complement equals it.
    return comp in topo.member_set


def closed_sets(topo: SoftTopology) -> tuple[SoftSet, ...]:
    """All closed sets, in member order of their complements, deduplicated."""
    _require_full_absolute(topo, "closed_sets")

    def build() -> tuple[SoftSet, ...]:
        out: list[SoftSet] = []
        seen: set[SoftSet] = set()
        for o in topo.members:
            comp = pointwise_complement(o)
            if is_admissible(comp) and comp not in seen:
                seen.add(comp)
                out.append(comp)
        return tuple(out)

    return _cached(topo, "closed_sets", build)


# --- closure and interior ---------------------------------------------------

def closure(topo: SoftTopology, f: SoftSet) -> SoftSet:
    """Elementary intersection of every closed superset of f.

    The absolute is always a closed superset, so the family is nonempty.
    """
    _require_full_absolute(topo, "closure")
    if not is_admissible(f):
        raise NotAdmissibleError("closure: input outside the admissible family")
    supersets = [c for c in closed_sets(topo) if is_soft_subset(f, c)]
    return elementary_intersection_family(topo.universe, supersets)


def interior(topo: SoftTopology, f: SoftSet) -> SoftSet:
    """Elementary union of every open contained in f.

    Equals the span of the interior elements of f: each open inside f is
    admissible, so its slices are exactly the coordinates its elements reach.
    """
    _require_full_absolute(topo, "interior")
    if not is_admissible(f):
        raise NotAdmissibleError("interior: input outside the admissible family")
    inside = [o for o in topo.members if is_soft_subset(o, f)]
    return elementary_union_family(topo.universe, inside)


def interior_witness(
    topo: SoftTopology, f: SoftSet, x: SoftElement
) -> SoftSet | None:
    """First open in member order with x inside it and it inside f."""
    for o in topo.members:
        if is_member(x, o) and is_soft_subset(o, f):
            return o
    return None


def is_interior_element(topo: SoftTopology, f: SoftSet, x: SoftElement) -> bool:
    return interior_witness(topo, f, x) is not None


# --- limiting elements ------------------------------------------------------

class LimitingMode(enum.Enum):
    """Two readings of the limiting-element condition.

    PER_PARAMETER applies the punctured-slice requirement at every parameter
    where an open's slice contains the coordinate, open by open.  WHOLE_OPEN
    only constrains opens containing the element at every parameter.
    """

    PER_PARAMETER = "per-parameter"
    WHOLE_OPEN = "whole-open"


def is_limiting(
    topo: SoftTopology,
    f: SoftSet,
    x: SoftElement,
    mode: LimitingMode = LimitingMode.PER_PARAMETER,
) -> bool:
    if x.universe != topo.universe or f.universe != topo.universe:
        raise UniverseMismatchError("mixed universes in is_limiting")
    for g in topo.members:
        if mode is LimitingMode.WHOLE_OPEN and not is_member(x, g):
            continue
        for i, coord in enumerate(x.coords):
            gm = g.slices[i]
            if mode is LimitingMode.PER_PARAMETER and not (gm >> coord & 1):
                continue
            punctured = gm & ~(1 << coord)
            if f.slices[i] & punctured == 0:
                return False
    return True


def limiting_elements(
    topo: SoftTopology,
    f: SoftSet,
    mode: LimitingMode = LimitingMode.PER_PARAMETER,
) -> tuple[SoftElement, ...]:
    """Scan all soft elements of the absolute, in canonical order."""
    return tuple(
        x for x in space_elements(topo) if is_limiting(topo, f, x, mode)
    )


# --- neighborhoods ----------------------------------------------------------

def nbd_witness(
    topo: SoftTopology, n: SoftSet, x: SoftElement
) -> SoftSet | None:
    if is_null(n):
        raise PreconditionError("the null soft set cannot be a neighborhood")
    for g in topo.members:
        if is_member(x, g) and is_soft_subset(g, n):
            return g
    return None


def is_nbd(topo: SoftTopology, n: SoftSet, x: SoftElement) -> bool:
    return nbd_witness(topo, n, x) is not None


# --- cached kernels shared by the checker modules --------------------------

def space_elements(topo: SoftTopology) -> tuple[SoftElement, ...]:
    """All soft elements of the absolute member, canonical order."""
    return _cached(topo, "space_elements", lambda: tuple(iter_elements(topo.absolute)))


def containing_masks(topo: SoftTopology) -> dict[SoftElement, int]:
    """For each space element, a bitmask over member indices containing it."""

    def build() -> dict[SoftElement, int]:
        out: dict[SoftElement, int] = {}
        for x in space_elements(topo):
            mask = 0
            for j, m in enumerate(topo.members):
                if all(sl >> c & 1 for c, sl in zip(x.coords, m.slices)):
                    mask |= 1 << j
            out[x] = mask
        return out

    return _cached(topo, "containing_masks", build)


def pointwise_disjoint_masks(topo: SoftTopology) -> list[int]:
    """Row i: bitmask of members whose pointwise meet with member i is null."""

    def build() -> list[int]:
        n = len(topo.members)
        rows = [0] * n
        slices = [m.slices for m in topo.members]
        for i in range(n):
            si = slices[i]
            for j in range(i, n):
                sj = slices[j]
                if all(a & b == 0 for a, b in zip(si, sj)):
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        return rows

    return _cached(topo, "pw_disjoint", build)


def elementary_disjoint_masks(topo: SoftTopology) -> list[int]:
    """Row i: members whose elementary meet with member i collapses to null."""

    def build() -> list[int]:
        n = len(topo.members)
        rows = [0] * n
        slices = [m.slices for m in topo.members]
        for i in range(n):
            si = slices[i]
            for j in range(i, n):
                sj = slices[j]
                if any(a & b == 0 for a, b in zip(si, sj)):
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
        return rows

    return _cached(topo, "e_disjoint", build)


def pairwise_admissible_violations(
    topo: SoftTopology,
) -> tuple[tuple[int, int], ...]:
    """Member index pairs (i <= j) whose pointwise meet is inadmissible.

    Several statements assume there are none; callers that only need the
    first violation can look at position zero.
    """

    def build() -> tuple[tuple[int, int], ...]:
        ms = topo.members
        bad: list[tuple[int, int]] = []
        for i in range(len(ms)):
            for j in range(i, len(ms)):
                meet = pointwise_intersection(ms[i], ms[j])
                if not is_admissible(meet):
                    bad.append((i, j))
        return tuple(bad)

    return _cached(topo, "pairwise_violations", build)


def pairwise_pointwise_admissible(
    topo: SoftTopology,
) -> tuple[bool, tuple[SoftSet, SoftSet] | None]:
    """Whether every pairwise pointwise intersection of opens is admissible."""
    bad = pairwise_admissible_violations(topo)
    if not bad:
        return True, None
    i, j = bad[0]
    return False, (topo.members[i], topo.members[j])


def verified(topo: SoftTopology) -> bool:
    """Cached validity of the member list; used by fuzzing hypotheses."""
    return _cached(
        topo,
        "verified",
        lambda: verify_topology(topo.universe, topo.members, topo.absolute).valid,
    )
