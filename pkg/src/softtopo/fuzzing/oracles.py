"""Element-materializing cross-checks for the slice-wise set operations.

These deliberately take the slow road: enumerate every soft element of the
operands, combine the element bags, and take the span of the result.  The
fast implementations in ``core`` must agree with these on admissible inputs.
"""

from __future__ import annotations

from ..core import (
    ElementBag,
    SoftElement,
    SoftSet,
    Universe,
    full_set,
    iter_elements,
    null_set,
    span,
)

__all__ = [
    "complement_via_elements",
    "element_bag",
    "intersection_via_elements",
    "union_via_elements",
]


def element_bag(f: SoftSet) -> frozenset[SoftElement]:
    """Every soft element of ``f``, as a set.  Empty when any slice is empty."""
    return frozenset(iter_elements(f))


def _span_of(universe: Universe, bag: frozenset[SoftElement]) -> SoftSet:
    if not bag:
        return null_set(universe)
    ordered = sorted(bag, key=lambda x: x.coords)
    return span(ElementBag.of(universe, ordered))


def union_via_elements(f: SoftSet, g: SoftSet) -> SoftSet:
    """Span of the union of the two element bags."""
    return _span_of(f.universe, element_bag(f) | element_bag(g))


def intersection_via_elements(f: SoftSet, g: SoftSet) -> SoftSet:
    """Span of the elements common to both operands."""
    return _span_of(f.universe, element_bag(f) & element_bag(g))


def complement_via_elements(f: SoftSet) -> SoftSet:
    """Span of the absolute's elements that avoid ``f`` at every parameter."""
    universe = f.universe
    bag = frozenset(
        x
        for x in iter_elements(full_set(universe))
        if all(not (f.slices[k] >> x.coords[k]) & 1 for k in range(universe.n_params))
    )
    return _span_of(universe, bag)
