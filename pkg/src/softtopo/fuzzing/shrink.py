"""Greedy counterexample reduction.

A candidate replaces the current instance only if the full hypothesis still
holds and the conclusion still fails, both recomputed from scratch, so every
accepted step is re-verified by construction.  The walk is first-improving
over a well-founded size measure and therefore terminates.
"""

from __future__ import annotations

from ..errors import SoftTopoError
from .generate import GeneratorConfig
from .instances import Instance, candidate_mutations
from .registry import TheoremCase

__all__ = ["is_minimal", "shrink_instance", "still_falsifies"]


def still_falsifies(case: TheoremCase, inst: Instance) -> bool:
    """Hypothesis holds and conclusion fails.  Candidates whose predicates
    blow up (lost preconditions after projection) simply do not qualify."""
    try:
        return case.hypothesis(inst) and not case.conclusion(inst)
    except SoftTopoError:
        return False


def shrink_instance(
    case: TheoremCase, inst: Instance, config: GeneratorConfig
) -> tuple[Instance, tuple[str, ...]]:
    current = inst
    trace: list[str] = []
    while True:
        for label, cand in candidate_mutations(current, config):
            if still_falsifies(case, cand):
                current = cand
                trace.append(label)
                break
        else:
            return current, tuple(trace)


def is_minimal(case: TheoremCase, inst: Instance, config: GeneratorConfig) -> bool:
    """No single mutation keeps the instance a counterexample."""
    return not any(
        still_falsifies(case, cand) for _, cand in candidate_mutations(inst, config)
    )
