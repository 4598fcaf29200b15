"""Trial loop: build, gate on the hypothesis, check the conclusion, shrink.

Reports are pure data keyed only by (case, config); no timestamps, host
names, or other run-local noise, so byte-identical reruns are the expected
behavior, including under parallel trial execution (results are aggregated
by trial index, never by completion order).
"""

from __future__ import annotations

import concurrent.futures
import dataclasses as d
import json
import typing as t

from ..document import to_payload
from ..errors import InputError
from .generate import ALGORITHM_ID, GeneratorConfig, trial_rng, trial_seed
from .instances import instance_document
from .registry import REGISTRY, TheoremCase
from .shrink import shrink_instance

__all__ = [
    "CounterexampleRecord",
    "TrialReport",
    "report_payload",
    "report_text",
    "run_theorem",
    "serialize_report",
]


@d.dataclass(frozen=True)
class CounterexampleRecord:
    trial: int
    seed: int
    shrink_trace: tuple[str, ...]
    document: dict[str, t.Any]
    """Serialized minimal instance; re-parseable and re-checkable."""


@d.dataclass(frozen=True)
class TrialReport:
    case_id: str
    algorithm: str
    config: GeneratorConfig
    confirmed: int
    skipped: int
    counterexamples: tuple[CounterexampleRecord, ...]
    generator_stats: dict[str, int]

    @property
    def verdict(self) -> str:
        if self.counterexamples:
            return "counterexample"
        if self.confirmed:
            return "confirmed"
        return "all-skipped"


def _case_for(case_id: str) -> TheoremCase:
    try:
        return REGISTRY[case_id]
    except KeyError:
        known = ", ".join(sorted(REGISTRY))
        raise InputError(f"unknown case {case_id!r}; known cases: {known}") from None


_Outcome = tuple[str, t.Optional[CounterexampleRecord], dict[str, t.Any]]


def _run_trial(case: TheoremCase, config: GeneratorConfig, index: int) -> _Outcome:
    rng = trial_rng(config, index)
    inst = case.build(config, rng)
    notes = dict(inst.notes)
    if not case.hypothesis(inst):
        return ("skipped", None, notes)
    if case.conclusion(inst):
        return ("confirmed", None, notes)
    minimal, trace = shrink_instance(case, inst, config)
    block = {
        "case": case.case_id,
        "algorithm": ALGORITHM_ID,
        "master_seed": config.seed,
        "trial": index,
        "seed": trial_seed(config.seed, index),
        "shrink_trace": list(trace),
    }
    payload = to_payload(instance_document(minimal, block))
    record = CounterexampleRecord(
        trial=index,
        seed=trial_seed(config.seed, index),
        shrink_trace=trace,
        document=payload,
    )
    return ("counterexample", record, notes)


def run_theorem(
    case_id: str, config: GeneratorConfig, workers: int = 1
) -> TrialReport:
    case = _case_for(case_id)
    indices = range(config.trials)
    if workers <= 1:
        outcomes = [_run_trial(case, config, i) for i in indices]
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            # Executor.map yields in argument order, which pins aggregation
            # to trial index regardless of completion order.
            outcomes = list(pool.map(lambda i: _run_trial(case, config, i), indices))

    confirmed = skipped = 0
    records: list[CounterexampleRecord] = []
    stats = {"separated_draws": 0, "accepted_by_sampling": 0, "fallbacks": 0, "attempts": 0}
    for verdict, record, notes in outcomes:
        if verdict == "confirmed":
            confirmed += 1
        elif verdict == "skipped":
            skipped += 1
        else:
            assert record is not None
            records.append(record)
        if "hausdorff_attempts" in notes:
            stats["separated_draws"] += 1
            stats["attempts"] += notes["hausdorff_attempts"]
            if notes.get("hausdorff_sampled"):
                stats["accepted_by_sampling"] += 1
            else:
                stats["fallbacks"] += 1
    if stats["separated_draws"] == 0:
        stats = {}
    return TrialReport(
        case_id=case_id,
        algorithm=ALGORITHM_ID,
        config=config,
        confirmed=confirmed,
        skipped=skipped,
        counterexamples=tuple(records),
        generator_stats=stats,
    )


def report_payload(report: TrialReport) -> dict[str, t.Any]:
    payload: dict[str, t.Any] = {
        "algorithm": report.algorithm,
        "case": report.case_id,
        "config": {
            "points": report.config.points,
            "params": report.config.params,
            "seed": report.config.seed,
            "subbase_size": report.config.subbase_size,
            "max_topology": report.config.max_topology,
            "trials": report.config.trials,
        },
        "counts": {
            "trials": report.config.trials,
            "confirmed": report.confirmed,
            "skipped": report.skipped,
            "counterexamples": len(report.counterexamples),
        },
        "counterexamples": [
            {
                "trial": r.trial,
                "seed": r.seed,
                "shrink_trace": list(r.shrink_trace),
                "document": r.document,
            }
            for r in report.counterexamples
        ],
        "verdict": report.verdict,
    }
    if report.generator_stats:
        payload["generator"] = dict(report.generator_stats)
    return payload


def serialize_report(report: TrialReport) -> str:
    return json.dumps(report_payload(report), sort_keys=True, indent=2) + "\n"


def report_text(report: TrialReport) -> str:
    lines = [
        f"case {report.case_id}: {report.verdict}",
        f"  trials={report.config.trials} confirmed={report.confirmed} "
        f"skipped={report.skipped} counterexamples={len(report.counterexamples)}",
        f"  seed={report.config.seed} points={report.config.points} "
        f"params={report.config.params} algorithm={report.algorithm}",
    ]
    if report.generator_stats:
        s = report.generator_stats
        lines.append(
            f"  separated draws: {s['separated_draws']} "
            f"(sampled {s['accepted_by_sampling']}, fallbacks {s['fallbacks']}, "
            f"attempts {s['attempts']})"
        )
    for r in report.counterexamples[:5]:
        lines.append(
            f"  counterexample at trial {r.trial} (seed {r.seed}), "
            f"{len(r.shrink_trace)} shrink steps"
        )
    if len(report.counterexamples) > 5:
        lines.append(f"  ... {len(report.counterexamples) - 5} more")
    return "\n".join(lines) + "\n"
