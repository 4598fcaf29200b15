"""Separation checkers: Hausdorff, regular, and normal variants.

All scans run in canonical order (closed sets in their enumeration order,
elements lexicographically, opens in member order), so the reported witness
or counterexample is deterministic for a given topology value.

The Hausdorff hypothesis only constrains element pairs that differ at every
parameter, and its separation demand is pointwise disjointness of the two
opens.  The regular conclusion uses elementary disjointness between the two
opens; the printed form of that definition (the closed set elementary-
disjoint from its own superset) is unsatisfiable for nonempty closed sets
and stays available behind ``literal_disjointness`` for demonstration.  The
normal checker keeps the printed asymmetry: pointwise-disjoint closed sets,
elementary-disjoint opens.
"""

from __future__ import annotations

import dataclasses as d
import enum
import typing as t

from .core import (
    SoftElement,
    SoftSet,
    elementary_intersection,
    is_null,
    is_soft_subset,
)
from .topology import (
    SoftTopology,
    _cached,
    closed_sets,
    containing_masks,
    elementary_disjoint_masks,
    pointwise_disjoint_masks,
    space_elements,
)


class DisjointnessMode(enum.Enum):
    POINTWISE = "pointwise"
    ELEMENTARY = "elementary"


@d.dataclass(frozen=True)
class SeparationReport:
    """Outcome of one separation check.

    ``witness`` is the first hypothesis instance together with the opens that
    separate it; ``counterexample`` is the first hypothesis instance that no
    pair of opens separates.  Exactly one of them is set unless the
    hypothesis is vacuous, in which case both stay None and the property
    holds.
    """

    property_name: str
    holds: bool
    witness: tuple | None
    counterexample: tuple | None


def _iter_bits(mask: int) -> t.Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _fully_differing(x: SoftElement, y: SoftElement) -> bool:
    return all(a != b for a, b in zip(x.coords, y.coords))


def is_hausdorff(
    topo: SoftTopology, disjointness: DisjointnessMode = DisjointnessMode.POINTWISE
) -> SeparationReport:
    """Every pair differing at all parameters gets disjoint open hulls."""

    def build() -> SeparationReport:
        elements = space_elements(topo)
        cont = containing_masks(topo)
        if disjointness is DisjointnessMode.POINTWISE:
            disj = pointwise_disjoint_masks(topo)
        else:
            disj = elementary_disjoint_masks(topo)
        members = topo.members
        witness = None
        for xi in range(len(elements)):
            x = elements[xi]
            cx = cont[x]
            for yi in range(xi + 1, len(elements)):
                y = elements[yi]
                if not _fully_differing(x, y):
                    continue
                cy = cont[y]
                pair_witness = None
                for i in _iter_bits(cx):
                    hits = disj[i] & cy
                    if hits:
                        j = (hits & -hits).bit_length() - 1
                        pair_witness = (x, y, members[i], members[j])
                        break
                if pair_witness is None:
                    return SeparationReport("hausdorff", False, None, (x, y))
                if witness is None:
                    witness = pair_witness
        return SeparationReport("hausdorff", True, witness, None)

    return _cached(topo, ("hausdorff", disjointness.value), build)


def is_regular(
    topo: SoftTopology, literal_disjointness: bool = False
) -> SeparationReport:
    """Closed sets are separated from elements avoiding them at all parameters.

    Default conclusion: the two opens are elementary-disjoint.  With
    ``literal_disjointness`` the closed set itself must be elementary-disjoint
    from its open superset, which only the empty closed set can satisfy.
    """

    def build() -> SeparationReport:
        members = topo.members
        cont = containing_masks(topo)
        disj = elementary_disjoint_masks(topo)
        witness = None
        for f in closed_sets(topo):
            supersets = [
                i for i, m in enumerate(members) if is_soft_subset(f, m)
            ]
            for x in space_elements(topo):
                if any(m >> c & 1 for c, m in zip(x.coords, f.slices)):
                    continue  # hypothesis wants avoidance at every parameter
                cx = cont[x]
                pair_witness = None
                if literal_disjointness:
                    for gi in supersets:
                        if is_null(elementary_intersection(f, members[gi])) and cx:
                            hi = (cx & -cx).bit_length() - 1
                            pair_witness = (f, x, members[gi], members[hi])
                            break
                else:
                    for gi in supersets:
                        hits = disj[gi] & cx
                        if hits:
                            hi = (hits & -hits).bit_length() - 1
                            pair_witness = (f, x, members[gi], members[hi])
                            break
                if pair_witness is None:
                    return SeparationReport("regular", False, None, (f, x))
                if witness is None:
                    witness = pair_witness
        return SeparationReport("regular", True, witness, None)

    return _cached(topo, ("regular", literal_disjointness), build)


def is_normal(topo: SoftTopology) -> SeparationReport:
    """Pointwise-disjoint closed pairs get elementary-disjoint open hulls."""

    def build() -> SeparationReport:
        members = topo.members
        disj = elementary_disjoint_masks(topo)
        closed = closed_sets(topo)
        member_index = {m: i for i, m in enumerate(members)}
        superset_mask_cache: dict[SoftSet, int] = {}

        def superset_mask(s: SoftSet) -> int:
            mask = superset_mask_cache.get(s)
            if mask is None:
                mask = 0
                for i, m in enumerate(members):
                    if is_soft_subset(s, m):
                        mask |= 1 << i
                superset_mask_cache[s] = mask
            return mask

        witness = None
        for a in range(len(closed)):
            f = closed[a]
            for b in range(a, len(closed)):
                g = closed[b]
                if any(x & y for x, y in zip(f.slices, g.slices)):
                    continue  # hypothesis: pointwise disjoint
                pair_witness = None
                # Disjoint closed sets that are themselves open separate
                # each other; try that before scanning.
                fi = member_index.get(f)
                gi = member_index.get(g)
                if fi is not None and gi is not None and disj[fi] >> gi & 1:
                    pair_witness = (f, g, f, g)
                else:
                    gmask = superset_mask(g)
                    for ui in _iter_bits(superset_mask(f)):
                        hits = disj[ui] & gmask
                        if hits:
                            vi = (hits & -hits).bit_length() - 1
                            pair_witness = (f, g, members[ui], members[vi])
                            break
                if pair_witness is None:
                    return SeparationReport("normal", False, None, (f, g))
                if witness is None:
                    witness = pair_witness
        return SeparationReport("normal", True, witness, None)

    return _cached(topo, "normal", build)
