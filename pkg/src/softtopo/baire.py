"""Rare sets, category, and the Baire property at finite scale.

A closed set is rare when its interior is null; a general admissible set
is nowhere dense when the interior of its closure is null.  Finiteness
collapses the usual countable unions to finite ones, so the Baire check
reduces to a single union of the rare closed sets: interiors are monotone,
hence the full union dominates every subfamily.  The slow subfamily oracle
is kept alongside as an independent cross-check.
"""

from __future__ import annotations

import dataclasses as d
import itertools
import typing as t

from .core import (
    SoftElement,
    SoftSet,
    element_count,
    elementary_intersection,
    elementary_union_family,
    is_admissible,
    is_member,
    is_null,
    is_soft_subset,
)
from .errors import NotAdmissibleError, PreconditionError
from .topology import (
    SoftTopology,
    closed_sets,
    closure,
    interior,
    space_elements,
    _cached,
)


def is_nowhere_dense(topo: SoftTopology, f: SoftSet) -> bool:
    if not is_admissible(f):
        raise NotAdmissibleError(
            "is_nowhere_dense: subject outside the admissible family"
        )
    if is_null(f):
        raise PreconditionError("nowhere density is not defined for the null set")
    return is_null(interior(topo, closure(topo, f)))


def rare_closed_sets(topo: SoftTopology) -> tuple[SoftSet, ...]:
    """Closed sets with null interior, in closed-set order (cached)."""

    def build() -> tuple[SoftSet, ...]:
        return tuple(
            c for c in closed_sets(topo) if is_null(interior(topo, c))
        )

    return _cached(topo, "rare_closed", build)


@d.dataclass(frozen=True)
class BaireReport:
    baire: bool
    rare_closed: tuple[SoftSet, ...]
    union: SoftSet
    union_interior: SoftSet


def is_baire(topo: SoftTopology) -> BaireReport:
    """Null interior for the union of all rare closed sets.

    One union decides the property: interiors are monotone in the set, so
    every subfamily union is dominated by this one.
    """
    rare = rare_closed_sets(topo)
    union = elementary_union_family(topo.universe, rare)
    inner = interior(topo, union)
    return BaireReport(is_null(inner), rare, union, inner)


def baire_subfamily_oracle(topo: SoftTopology, limit: int = 4096) -> bool:
    """Direct reading: every subfamily union of rare closed sets has null
    interior.  Exponential; refuses families past the subfamily budget."""
    rare = rare_closed_sets(topo)
    if 2 ** len(rare) > limit:
        raise PreconditionError(
            f"subfamily oracle budget exceeded: 2^{len(rare)} > {limit}"
        )
    for size in range(len(rare) + 1):
        for combo in itertools.combinations(rare, size):
            union = elementary_union_family(topo.universe, combo)
            if not is_null(interior(topo, union)):
                return False
    return True


def is_baire_by_nowhere_dense(topo: SoftTopology) -> bool:
    """Same property computed from nowhere dense closed sets.

    For nonnull closed sets the closure step is the identity, so this
    family coincides with the rare closed family up to the null set, which
    contributes nothing to the union; kept as an independent route.
    """
    family = [
        c
        for c in closed_sets(topo)
        if not is_null(c) and is_nowhere_dense(topo, c)
    ]
    union = elementary_union_family(topo.universe, family)
    return is_null(interior(topo, union))


# --- category ----------------------------------------------------------------

@d.dataclass(frozen=True)
class CategoryReport:
    subject: SoftSet
    verdict: str
    """One of "nowhere-dense", "first-category", "second-category"."""
    decomposition: tuple[SoftSet, ...]
    """Nowhere dense pieces whose elementary union is the subject (empty
    for second category)."""
    method: str
    """"fast-path" or "exhaustive-oracle"."""

    @property
    def first_category(self) -> bool:
        return self.verdict != "second-category"


def _require_category_subject(f: SoftSet, where: str) -> None:
    if not is_admissible(f):
        raise NotAdmissibleError(f"{where}: subject outside the admissible family")
    if is_null(f):
        raise PreconditionError(f"{where}: category is not defined for the null set")


def is_first_category(
    topo: SoftTopology, f: SoftSet, pool: t.Sequence[SoftSet] | None = None
) -> CategoryReport:
    """Whether the subject is a finite union of nowhere dense sets.

    Complete at finite scale: any nowhere dense piece sits inside its own
    closure, a rare closed set, so meeting the subject with every rare
    closed set recovers the maximal usable pieces.  Coverage by those
    pieces is therefore equivalent to the property.  The decomposition
    keeps only pieces that extend coverage, scanned in canonical order.

    An explicit ``pool`` replaces the piece search: every pool entry must
    be nowhere dense, and the verdict asks whether their union is the
    subject.
    """
    _require_category_subject(f, "is_first_category")
    if is_nowhere_dense(topo, f):
        return CategoryReport(f, "nowhere-dense", (f,), "fast-path")
    if pool is not None:
        for p in pool:
            if not is_nowhere_dense(topo, p):
                raise PreconditionError("pool piece is not nowhere dense")
        union = elementary_union_family(topo.universe, pool)
        if union == f:
            return CategoryReport(f, "first-category", tuple(pool), "fast-path")
        return CategoryReport(f, "second-category", (), "fast-path")
    pieces = []
    for c in rare_closed_sets(topo):
        p = elementary_intersection(f, c)
        if not is_null(p):
            pieces.append(p)
    union = elementary_union_family(topo.universe, pieces)
    if union != f:
        return CategoryReport(f, "second-category", (), "fast-path")
    chosen: list[SoftSet] = []
    covered = [0] * topo.universe.n_params
    for p in pieces:
        if any(m & ~c for m, c in zip(p.slices, covered)):
            chosen.append(p)
            covered = [c | m for c, m in zip(covered, p.slices)]
        if tuple(covered) == f.slices:
            break
    return CategoryReport(f, "first-category", tuple(chosen), "fast-path")


def _nonempty_submasks(mask: int) -> t.Iterator[int]:
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def first_category_oracle(
    topo: SoftTopology, f: SoftSet, gate: int = 64
) -> CategoryReport:
    """Exhaustive reading: union every nowhere dense admissible subset.

    Enumerates all nonnull admissible soft subsets of the subject;
    ``gate`` bounds the subject's soft-element count to keep that
    enumeration at desk scale.
    """
    _require_category_subject(f, "first_category_oracle")
    if element_count(f) > gate:
        raise PreconditionError(
            f"oracle budget exceeded: {element_count(f)} soft elements > {gate}"
        )
    covered = [0] * topo.universe.n_params
    chosen: list[SoftSet] = []
    for combo in itertools.product(*(
        list(_nonempty_submasks(m)) for m in f.slices
    )):
        n = SoftSet(topo.universe, tuple(combo))
        if is_nowhere_dense(topo, n):
            if any(m & ~c for m, c in zip(combo, covered)):
                chosen.append(n)
                covered = [c | m for c, m in zip(covered, combo)]
    if tuple(covered) != f.slices:
        return CategoryReport(f, "second-category", (), "exhaustive-oracle")
    verdict = "nowhere-dense" if is_nowhere_dense(topo, f) else "first-category"
    return CategoryReport(f, verdict, tuple(chosen), "exhaustive-oracle")


# --- local compactness and the category theorem trial ------------------------

@d.dataclass(frozen=True)
class LocalCompactnessReport:
    holds: bool
    counterexample: tuple[SoftElement, SoftSet] | None
    """Element and open around it with no compact neighborhood inside."""
    pairs_checked: int


def is_locally_compact(topo: SoftTopology) -> LocalCompactnessReport:
    """Compact neighborhoods inside every open around every element.

    For each element x and open O containing x we look for an open U and a
    compact K with x in U, U inside K, K inside O.  Compactness of K only
    needs admissibility of K and its complement here, so the search builds
    K from O directly, borrowing U's slice wherever O fills the space.
    """
    from .separation import is_hausdorff

    if not is_hausdorff(topo).holds:
        raise PreconditionError(
            "local compactness is only defined over Hausdorff spaces"
        )
    full = topo.universe.full_mask
    pairs = 0
    for x in space_elements(topo):
        for o in topo.members:
            if not is_member(x, o):
                continue
            pairs += 1
            found = False
            for u in topo.members:
                if not is_member(x, u) or not is_soft_subset(u, o):
                    continue
                k = SoftSet(
                    topo.universe,
                    tuple(
                        om if om != full else um
                        for om, um in zip(o.slices, u.slices)
                    ),
                )
                # K is admissible by construction; its complement is
                # admissible exactly when K is the absolute or every slice
                # is proper, which is all compactness asks of a set here.
                if k == topo.absolute or all(m != full for m in k.slices):
                    found = True
                    break
            if not found:
                return LocalCompactnessReport(False, (x, o), pairs)
    return LocalCompactnessReport(True, None, pairs)


def baire_theorem_trial(topo: SoftTopology) -> str:
    """Verdict for one space: "holds", "fails", or "skipped".

    The hypothesis asks for Hausdorff, local compactness, and opens whose
    pairwise pointwise meets stay admissible; the Baire verdict decides
    the rest.
    """
    from .separation import is_hausdorff
    from .topology import pairwise_admissible_violations

    if not is_hausdorff(topo).holds:
        return "skipped"
    if pairwise_admissible_violations(topo):
        return "skipped"
    if not is_locally_compact(topo).holds:
        return "skipped"
    return "holds" if is_baire(topo).baire else "fails"
