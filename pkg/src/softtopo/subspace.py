"""Relative topologies over a sub-universe of points.

The carrier keeps the original parameter set and restricts the point set;
trace opens are elementary intersections with the carrier's absolute,
computed over the original universe so collapse behaves identically.  The
resulting topology carries that absolute, which keeps the generic verifier
honest about axiom (i) without pretending the carrier is the whole space.
"""

from __future__ import annotations

import dataclasses as d
import typing as t

from .core import (
    SoftSet,
    Universe,
    constant_set,
    elementary_intersection,
    is_admissible,
    is_null,
    is_soft_subset,
    relative_complement,
)
from .errors import (
    PreconditionError,
    SubspacePreconditionError,
    UniverseMismatchError,
)
from .topology import (
    SoftTopology,
    pairwise_admissible_violations,
    verify_topology,
)


@d.dataclass(frozen=True)
class SubspacePreconditionReport:
    """Outcome of the two side conditions, with every violating instance.

    ``pair_violations`` holds (i, j) member-index pairs whose elementary
    meet collapses out of the admissible family; ``trace_violations`` holds
    member indices whose meet with the carrier collapses.
    """

    satisfied: bool
    carrier: SoftSet
    pair_violations: tuple[tuple[int, int], ...]
    trace_violations: tuple[int, ...]

    def describe(self) -> str:
        if self.satisfied:
            return "subspace preconditions satisfied"
        lines = []
        for i, j in self.pair_violations:
            lines.append(
                f"members {i} and {j} have an inadmissible elementary meet"
            )
        for i in self.trace_violations:
            lines.append(
                f"member {i} meets the carrier outside the admissible family"
            )
        return "; ".join(lines)


def carrier_set(universe: Universe, points: t.Sequence[str]) -> SoftSet:
    """Constant soft set presenting Y as a sub-universe carrier."""
    if not points:
        raise PreconditionError("carrier needs at least one point")
    return constant_set(universe, points)


def check_subspace_preconditions(
    topo: SoftTopology, carrier: SoftSet
) -> SubspacePreconditionReport:
    if carrier.universe != topo.universe:
        raise UniverseMismatchError("carrier from a different universe")
    if is_null(carrier) or not is_admissible(carrier):
        raise PreconditionError("carrier must be admissible and nonnull")
    pair_violations = pairwise_admissible_violations(topo)
    trace_violations = []
    for i, m in enumerate(topo.members):
        meet = [a & b for a, b in zip(m.slices, carrier.slices)]
        if any(meet) and not all(meet):
            trace_violations.append(i)
    satisfied = not pair_violations and not trace_violations
    return SubspacePreconditionReport(
        satisfied, carrier, pair_violations, tuple(trace_violations)
    )


@d.dataclass(frozen=True)
class SubspaceResult:
    parent: SoftTopology
    carrier: SoftSet
    points: tuple[str, ...]
    topology: SoftTopology
    provenance: tuple[tuple[int, int], ...]
    """(trace index, first parent member index producing it) pairs."""


def build_subspace(topo: SoftTopology, points: t.Sequence[str]) -> SubspaceResult:
    """Relative topology on a point subset, or a report-carrying error.

    Traces are deduplicated in parent member order, so the carrier's own
    trace (from the absolute) and the null trace land wherever the parent
    order puts them first; the verifier then re-checks the axioms against
    the carrier as absolute.
    """
    carrier = carrier_set(topo.universe, points)
    report = check_subspace_preconditions(topo, carrier)
    if not report.satisfied:
        raise SubspacePreconditionError(report)
    traces: list[SoftSet] = []
    provenance: list[tuple[int, int]] = []
    seen: dict[SoftSet, int] = {}
    for i, m in enumerate(topo.members):
        tr = elementary_intersection(m, carrier)
        if tr not in seen:
            seen[tr] = len(traces)
            provenance.append((len(traces), i))
            traces.append(tr)
    rep = verify_topology(topo.universe, traces, absolute=carrier)
    if not rep.valid:
        raise AssertionError(
            "trace family failed verification despite preconditions: "
            + "; ".join(v.describe() for v in rep.violations)
        )
    sub = SoftTopology.of(topo.universe, traces, absolute=carrier)
    return SubspaceResult(topo, carrier, tuple(points), sub, tuple(provenance))


def is_relatively_closed(sub: SubspaceResult, f: SoftSet) -> bool:
    """Closed in the subspace: the carrier-relative complement is a trace open.

    The complement is taken pointwise; trace membership then enforces
    admissibility on its own, since every trace open is admissible.
    """
    if f.universe != sub.topology.universe:
        raise UniverseMismatchError("subject from a different universe")
    if not is_admissible(f) or not is_soft_subset(f, sub.carrier):
        return False
    comp = relative_complement(f, sub.points)
    return comp in sub.topology.member_set


@d.dataclass(frozen=True)
class RelativeClosedDecomposition:
    subject: SoftSet
    parent_closed: SoftSet
    """A parent-closed set whose meet with the carrier is the subject."""


def decompose_relatively_closed(
    sub: SubspaceResult, f: SoftSet
) -> RelativeClosedDecomposition:
    """Express a relatively closed set as (parent closed) meet carrier.

    Searches parent closed sets in canonical order; the parent complement
    of the trace origin always works, so the search cannot miss.
    """
    from .topology import closed_sets

    if not is_relatively_closed(sub, f):
        raise PreconditionError("subject is not relatively closed")
    for c in closed_sets(sub.parent):
        if elementary_intersection(c, sub.carrier) == f:
            return RelativeClosedDecomposition(f, c)
    raise AssertionError("no parent closed decomposition found")
