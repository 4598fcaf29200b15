"""The checkable statement registry.

Each case is a hypothesis/conclusion pair over a generated instance.  Both
predicates are pure functions of the instance, so a persisted counterexample
can be re-verified after a round trip and every shrink candidate can be
re-gated from scratch.  A trial whose hypothesis fails is skipped, never
counted as evidence.
"""

from __future__ import annotations

import dataclasses as d
import random
import typing as t

from ..baire import is_baire, is_baire_by_nowhere_dense, is_locally_compact
from ..compactness import (
    fip_witness,
    is_compact_set,
    is_compact_space,
    nested_intersection_check,
)
from ..core import (
    SoftSet,
    element_count,
    elementary_complement,
    elementary_intersection,
    elementary_intersection_family,
    elementary_union,
    is_member,
    is_null,
    is_soft_subset,
    iter_elements,
    null_set,
)
from ..maps import SoftFunction, definitional_continuity, image, preimage_continuity
from ..separation import is_hausdorff, is_normal, is_regular
from ..subspace import build_subspace, carrier_set, check_subspace_preconditions
from ..topology import (
    closed_sets,
    is_closed,
    limiting_elements,
    pairwise_admissible_violations,
    verify_topology,
)
from .generate import (
    GeneratorConfig,
    gen_hausdorff_with_stats,
    gen_topology_with_subbase,
    random_admissible,
)
from .instances import Instance
from .oracles import (
    complement_via_elements,
    intersection_via_elements,
    union_via_elements,
)

__all__ = ["REGISTRY", "TheoremCase", "is_infinite_soft_set"]


@d.dataclass(frozen=True)
class TheoremCase:
    case_id: str
    kind: str
    description: str
    build: t.Callable[[GeneratorConfig, random.Random], Instance]
    hypothesis: t.Callable[[Instance], bool]
    conclusion: t.Callable[[Instance], bool]


def is_infinite_soft_set(f: SoftSet) -> bool:
    """Whether the set has infinitely many soft elements.

    Over the finite universes this package works with, the element count is
    always a finite integer, so the detector can only answer False.  It
    exists to keep the infinite-case hypothesis honestly evaluable rather
    than silently dropped.
    """
    return element_count(f) == float("inf")


# --- builders ---------------------------------------------------------------


def _build_topology(config: GeneratorConfig, rng: random.Random) -> Instance:
    subbase, topo = gen_topology_with_subbase(config, rng)
    return Instance(topo.universe, subbase, topo, {})


def _build_hausdorff(config: GeneratorConfig, rng: random.Random) -> Instance:
    draw = gen_hausdorff_with_stats(config, rng)
    inst = Instance(draw.topology.universe, draw.subbase, draw.topology, {})
    inst.notes["hausdorff_attempts"] = draw.attempts
    inst.notes["hausdorff_sampled"] = draw.sampled
    return inst


def _with_aux(inst: Instance, aux: dict[str, t.Any]) -> Instance:
    out = Instance(inst.universe, inst.subbase, inst.topology, aux)
    out.notes.update(inst.notes)
    return out


def _random_carrier(rng: random.Random, inst: Instance, proper: bool) -> tuple[str, ...]:
    points = inst.universe.points
    upper = len(points) - 1 if proper and len(points) > 1 else len(points)
    size = rng.randrange(1, upper + 1)
    chosen = set(rng.sample(range(len(points)), size))
    return tuple(p for i, p in enumerate(points) if i in chosen)


def _random_subset(rng: random.Random, k: SoftSet) -> SoftSet:
    """Random admissible soft subset of an admissible nonnull set."""
    slices = []
    for m in k.slices:
        kept = 0
        for i in range(k.universe.n_points):
            if m >> i & 1 and rng.random() < 0.5:
                kept |= 1 << i
        if kept == 0:
            bits = [i for i in range(k.universe.n_points) if m >> i & 1]
            kept = 1 << rng.choice(bits)
        slices.append(kept)
    return SoftSet(k.universe, tuple(slices))


def _maybe_null(rng: random.Random, inst_universe) -> SoftSet:
    if rng.random() < 0.1:
        return null_set(inst_universe)
    return random_admissible(rng, inst_universe)


def _build_carrier_case(proper: bool, hausdorff: bool):
    def build(config: GeneratorConfig, rng: random.Random) -> Instance:
        base = (_build_hausdorff if hausdorff else _build_topology)(config, rng)
        return _with_aux(base, {"carrier": _random_carrier(rng, base, proper)})

    return build


def _build_with_set(hausdorff: bool):
    def build(config: GeneratorConfig, rng: random.Random) -> Instance:
        base = (_build_hausdorff if hausdorff else _build_topology)(config, rng)
        return _with_aux(base, {"set": random_admissible(rng, base.universe)})

    return build


def _build_set_in_compact(config: GeneratorConfig, rng: random.Random) -> Instance:
    base = _build_hausdorff(config, rng)
    k = random_admissible(rng, base.universe)
    return _with_aux(base, {"sets": (_random_subset(rng, k), k)})


def _build_two_sets(config: GeneratorConfig, rng: random.Random) -> Instance:
    base = _build_hausdorff(config, rng)
    return _with_aux(
        base,
        {"sets": (random_admissible(rng, base.universe), random_admissible(rng, base.universe))},
    )


def _build_compact_family(config: GeneratorConfig, rng: random.Random) -> Instance:
    base = _build_hausdorff(config, rng)
    count = rng.randrange(2, 4)
    sets = tuple(random_admissible(rng, base.universe) for _ in range(count))
    return _with_aux(base, {"sets": sets})


def _build_closed_null_family(config: GeneratorConfig, rng: random.Random) -> Instance:
    base = _build_topology(config, rng)
    pool = [c for c in closed_sets(base.topology) if not is_null(c)]
    family: tuple[SoftSet, ...] = ()
    for _ in range(8):
        if not pool:
            break
        size = rng.randrange(2, min(5, len(pool)) + 1) if len(pool) >= 2 else 1
        picked = tuple(pool[i] for i in sorted(rng.sample(range(len(pool)), size)))
        family = picked
        fold = elementary_intersection_family(base.topology.universe, picked)
        if is_null(fold):
            break
    return _with_aux(base, {"sets": family})


def _build_closed_chain(config: GeneratorConfig, rng: random.Random) -> Instance:
    base = _build_hausdorff(config, rng)
    pool = [c for c in closed_sets(base.topology) if not is_null(c)]
    chain: list[SoftSet] = []
    if pool:
        current = pool[rng.randrange(len(pool))]
        chain.append(current)
        for _ in range(rng.randrange(0, 3)):
            nested = [c for c in pool if is_soft_subset(c, current)]
            if not nested:
                break
            current = nested[rng.randrange(len(nested))]
            chain.append(current)
    return _with_aux(base, {"sets": tuple(chain)})


def _random_function(rng: random.Random, universe) -> SoftFunction:
    maps = tuple(
        tuple(rng.randrange(universe.n_points) for _ in range(universe.n_points))
        for _ in range(universe.n_params)
    )
    return SoftFunction(universe, universe, maps)


def _build_map_case(hausdorff: bool, with_set: bool):
    def build(config: GeneratorConfig, rng: random.Random) -> Instance:
        base = (_build_hausdorff if hausdorff else _build_topology)(config, rng)
        cod_builder = (
            gen_hausdorff_with_stats if hausdorff else gen_topology_with_subbase
        )
        drawn = cod_builder(config, rng)
        if hausdorff:
            cod_subbase, cod_topo = drawn.subbase, drawn.topology
        else:
            cod_subbase, cod_topo = drawn
        aux: dict[str, t.Any] = {
            "function": _random_function(rng, base.universe),
            "codomain_subbase": cod_subbase,
            "codomain": cod_topo,
        }
        if with_set:
            aux["set"] = random_admissible(rng, base.universe)
        return _with_aux(base, aux)

    return build


def _build_op_pair(config: GeneratorConfig, rng: random.Random) -> Instance:
    base = _build_topology(config, rng)
    return _with_aux(
        base,
        {"sets": (_maybe_null(rng, base.universe), _maybe_null(rng, base.universe))},
    )


# --- shared predicate pieces -------------------------------------------------


def _hausdorff(inst: Instance) -> bool:
    return is_hausdorff(inst.topology).holds


def _side_condition(inst: Instance) -> bool:
    return not pairwise_admissible_violations(inst.topology)


def _carrier_of(inst: Instance) -> SoftSet:
    return carrier_set(inst.universe, inst.aux["carrier"])


def _preconditions_ok(inst: Instance) -> bool:
    return check_subspace_preconditions(inst.topology, _carrier_of(inst)).satisfied


def _family_closed_null_fold(inst: Instance) -> bool:
    family = inst.aux["sets"]
    if not family:
        return False
    if not all(is_closed(inst.topology, c) for c in family):
        return False
    return is_null(elementary_intersection_family(inst.universe, family))


def _decreasing_nonnull_closed(inst: Instance) -> bool:
    chain = inst.aux["sets"]
    if not chain:
        return False
    if any(is_null(c) or not is_closed(inst.topology, c) for c in chain):
        return False
    return all(is_soft_subset(b, a) for a, b in zip(chain, chain[1:]))


def _limiting_conclusion(inst: Instance) -> bool:
    topo, f = inst.topology, inst.aux["set"]
    for x in limiting_elements(topo, f):
        for g in topo.members:
            if not is_member(x, g):
                continue
            meet = elementary_intersection(f, g)
            if not any(y != x for y in iter_elements(meet)):
                return False
    return True


def _ops_agree(inst: Instance) -> bool:
    f, g = inst.aux["sets"]
    return (
        elementary_union(f, g) == union_via_elements(f, g)
        and elementary_intersection(f, g) == intersection_via_elements(f, g)
        and elementary_complement(f) == complement_via_elements(f)
        and elementary_complement(g) == complement_via_elements(g)
    )


def _continuity_hypothesis(inst: Instance) -> bool:
    fn = inst.aux["function"]
    cod = inst.aux["codomain"]
    return (
        _hausdorff(inst)
        and is_hausdorff(cod).holds
        and definitional_continuity(fn, inst.topology, cod).continuous
        and is_compact_set(inst.topology, inst.aux["set"]).compact
    )


def _criteria_agree(inst: Instance) -> bool:
    fn = inst.aux["function"]
    cod = inst.aux["codomain"]
    a = definitional_continuity(fn, inst.topology, cod).continuous
    b = preimage_continuity(fn, inst.topology, cod, degenerate="violation").continuous
    return a == b


# --- the registry ------------------------------------------------------------

REGISTRY: dict[str, TheoremCase] = {}


def _case(case_id, kind, description, build, hypothesis, conclusion) -> None:
    REGISTRY[case_id] = TheoremCase(case_id, kind, description, build, hypothesis, conclusion)


_case(
    "thm_3_1_constructive",
    "topology+carrier",
    "trace families satisfying both preconditions verify as topologies",
    _build_carrier_case(proper=False, hausdorff=False),
    _preconditions_ok,
    lambda inst: verify_topology(
        inst.universe,
        build_subspace(inst.topology, inst.aux["carrier"]).topology.members,
        absolute=_carrier_of(inst),
    ).valid,
)

_case(
    "lem_3_1",
    "topology+set",
    "near every limiting element, every containing open meets the set elsewhere",
    _build_with_set(hausdorff=False),
    lambda inst: len(limiting_elements(inst.topology, inst.aux["set"])) > 0,
    _limiting_conclusion,
)

_case(
    "hausdorff_heredity",
    "topology+carrier",
    "subspaces of separated spaces stay separated",
    _build_carrier_case(proper=False, hausdorff=True),
    lambda inst: _hausdorff(inst) and _preconditions_ok(inst),
    lambda inst: is_hausdorff(
        build_subspace(inst.topology, inst.aux["carrier"]).topology
    ).holds,
)

_case(
    "thm_4_1",
    "topology+sets",
    "closed families with empty joint meet admit a finite empty-meet subfamily",
    _build_closed_null_family,
    _family_closed_null_fold,
    lambda inst: is_null(
        elementary_intersection_family(
            inst.universe,
            [inst.aux["sets"][i] for i in fip_witness(inst.topology, inst.aux["sets"])],
        )
    ),
)

_case(
    "thm_4_2",
    "topology+sets",
    "decreasing nonempty closed chains in compact spaces have nonempty meet",
    _build_closed_chain,
    lambda inst: is_compact_space(inst.topology).compact
    and _decreasing_nonnull_closed(inst),
    lambda inst: nested_intersection_check(inst.topology, inst.aux["sets"]),
)

_case(
    "thm_4_3",
    "topology+carrier",
    "compact proper subspaces of separated spaces give compact carrier sets",
    _build_carrier_case(proper=True, hausdorff=True),
    lambda inst: _hausdorff(inst)
    and _carrier_of(inst) != inst.topology.absolute
    and _preconditions_ok(inst)
    and is_compact_space(
        build_subspace(inst.topology, inst.aux["carrier"]).topology
    ).compact,
    lambda inst: is_compact_set(inst.topology, _carrier_of(inst)).compact,
)

_case(
    "thm_4_4",
    "topology+set",
    "compact sets in separated spaces with admissible pairwise meets are closed",
    _build_with_set(hausdorff=True),
    lambda inst: _hausdorff(inst)
    and _side_condition(inst)
    and is_compact_set(inst.topology, inst.aux["set"]).compact,
    lambda inst: is_closed(inst.topology, inst.aux["set"]),
)

_case(
    "thm_4_5",
    "topology+sets",
    "closed subsets of compact sets are compact",
    _build_set_in_compact,
    lambda inst: _hausdorff(inst)
    and is_closed(inst.topology, inst.aux["sets"][0])
    and is_soft_subset(inst.aux["sets"][0], inst.aux["sets"][1])
    and is_compact_set(inst.topology, inst.aux["sets"][1]).compact,
    lambda inst: is_compact_set(inst.topology, inst.aux["sets"][0]).compact,
)

_case(
    "prop_4_1a",
    "topology+sets",
    "the elementary union of two compact sets is compact",
    _build_two_sets,
    lambda inst: _hausdorff(inst)
    and all(is_compact_set(inst.topology, k).compact for k in inst.aux["sets"]),
    lambda inst: is_compact_set(
        inst.topology, elementary_union(*inst.aux["sets"])
    ).compact,
)

_case(
    "prop_4_1b",
    "topology+sets",
    "meets of compact families are compact when pairwise meets stay admissible",
    _build_compact_family,
    lambda inst: _hausdorff(inst)
    and _side_condition(inst)
    and all(is_compact_set(inst.topology, k).compact for k in inst.aux["sets"])
    and (
        is_compact_space(inst.topology).compact
        or is_compact_set(inst.topology, inst.topology.absolute).compact
    ),
    lambda inst: is_compact_set(
        inst.topology,
        elementary_intersection_family(inst.universe, inst.aux["sets"]),
    ).compact,
)

_case(
    "thm_4_6_vacuity",
    "topology+sets",
    "infinite subsets of compact sets have a limiting element (vacuous here)",
    _build_set_in_compact,
    lambda inst: _hausdorff(inst)
    and is_compact_set(inst.topology, inst.aux["sets"][1]).compact
    and is_soft_subset(inst.aux["sets"][0], inst.aux["sets"][1])
    and is_infinite_soft_set(inst.aux["sets"][0]),
    lambda inst: len(limiting_elements(inst.topology, inst.aux["sets"][0])) > 0,
)

_case(
    "thm_4_7",
    "topology",
    "compact separated spaces are regular",
    _build_hausdorff,
    lambda inst: is_compact_space(inst.topology).compact,
    lambda inst: is_regular(inst.topology).holds,
)

_case(
    "thm_4_8",
    "topology",
    "compact separated spaces are normal",
    _build_hausdorff,
    lambda inst: is_compact_space(inst.topology).compact,
    lambda inst: is_normal(inst.topology).holds,
)

_case(
    "prop_6_1",
    "map",
    "continuous images of compact sets are compact",
    _build_map_case(hausdorff=True, with_set=True),
    _continuity_hypothesis,
    lambda inst: is_compact_set(
        inst.aux["codomain"], image(inst.aux["function"], inst.aux["set"])
    ).compact,
)

_case(
    "continuity_criteria_agree",
    "map",
    "elementwise and preimage continuity give one verdict",
    _build_map_case(hausdorff=False, with_set=False),
    lambda inst: True,
    _criteria_agree,
)

_case(
    "thm_5_1",
    "topology",
    "locally compact separated spaces with admissible pairwise meets are Baire",
    _build_hausdorff,
    lambda inst: _hausdorff(inst)
    and _side_condition(inst)
    and is_locally_compact(inst.topology).holds,
    lambda inst: is_baire(inst.topology).baire,
)

_case(
    "baire_definitions_agree",
    "topology",
    "the meager-union and nowhere-dense-union Baire readings agree",
    _build_topology,
    lambda inst: True,
    lambda inst: is_baire(inst.topology).baire
    == is_baire_by_nowhere_dense(inst.topology),
)

_case(
    "elementary_op_oracle",
    "topology+sets",
    "slice-wise elementary operations match element materialization",
    _build_op_pair,
    lambda inst: True,
    _ops_agree,
)
