"""Seeded random frameworks and assessments for property and oracle suites.

All numbers (values, weights, caps) are integers so the exact-rational
oracle sees them without representation error.
"""
from __future__ import annotations

import random
from itertools import count

from distaf.framework import (
    FrameworkTemplate,
    MandatoryCaps,
    Mechanism,
    Metric,
    MetricCode,
    MetricKind,
    Phase,
    Pillar,
)
from distaf.scoring import MetricValue, Origin
from distaf.store import AssessmentState

PILLAR_CODES = ["PA", "PB", "PC", "PD", "PE"]
MECH_CODES = ["MA", "MB", "MC", "MD", "ME", "MF"]

_template_seq = count(1)


def random_framework(
    rng: random.Random,
    max_pillars: int = 5,
    max_mechanisms: int = 6,
    max_metrics: int = 10,
    with_mandatory: bool = True,
    with_weights: bool = True,
) -> FrameworkTemplate:
    pillars = []
    for pcode in PILLAR_CODES[: rng.randint(1, max_pillars)]:
        mechanisms = []
        for mcode in MECH_CODES[: rng.randint(1, max_mechanisms)]:
            metrics = []
            for index in range(1, rng.randint(1, max_metrics) + 1):
                phase = rng.choice([Phase.DESIGN, Phase.OPERATIONAL])
                kind = rng.choice([MetricKind.BOOLEAN, MetricKind.PERCENTAGE])
                mandatory = None
                if with_mandatory and rng.random() < 0.15:
                    mandatory = MandatoryCaps(
                        mechanism_cap=rng.randrange(0, 105, 5),
                        pillar_cap=rng.randrange(0, 105, 5),
                        satisfied_when_at_least=rng.choice([50, 75, 100]),
                    )
                code = MetricCode(pcode, mcode, phase, index)
                metrics.append(
                    Metric(code=code, title=f"metric {code}", kind=kind, mandatory=mandatory)
                )
            weights = {}
            if with_weights and rng.random() < 0.5:
                weights = {m.code: rng.randint(0, 5) for m in metrics}
                for phase in Phase:
                    phase_metrics = [m for m in metrics if m.code.phase is phase]
                    if phase_metrics and all(weights[m.code] == 0 for m in phase_metrics):
                        weights[rng.choice(phase_metrics).code] = 1
            mechanisms.append(
                Mechanism(code=mcode, name=f"mech {mcode}", metrics=tuple(metrics),
                          metric_weights=weights)
            )
        mech_weights = {}
        if with_weights and rng.random() < 0.5:
            mech_weights = {m.code: rng.randint(0, 5) for m in mechanisms}
            if all(w == 0 for w in mech_weights.values()):
                mech_weights[rng.choice(mechanisms).code] = 1
        pillars.append(
            Pillar(code=pcode, name=f"pillar {pcode}", mechanisms=tuple(mechanisms),
                   mechanism_weights=mech_weights)
        )
    return FrameworkTemplate(
        id=f"random-{next(_template_seq)}", version="1", pillars=tuple(pillars)
    )


def random_value(rng: random.Random, metric: Metric) -> float:
    if metric.kind is MetricKind.BOOLEAN:
        return float(rng.choice([0, 100]))
    return float(rng.randint(0, 100))


def random_assessment(
    rng: random.Random,
    t: FrameworkTemplate,
    score_probability: float = 1.0,
    exclusion_probability: float = 0.15,
) -> AssessmentState:
    values = {}
    for _, _, metric in t.iter_metrics():
        if rng.random() < score_probability:
            values[metric.code] = MetricValue.scored(
                metric.code, random_value(rng, metric), Origin.DIRECT
            )
    excluded = set()
    for pillar in t.pillars:
        for mech in pillar.mechanisms:
            if rng.random() < exclusion_probability:
                excluded.add(f"{pillar.code}.{mech.code}")
    return AssessmentState(
        id=f"assess-{rng.randrange(10**9)}",
        description="randomized",
        template_id=t.id,
        template_version=t.version,
        created_at="2025-01-01T00:00:00+00:00",
        last_modified="2025-01-01T00:00:00+00:00",
        metric_values=values,
        excluded_mechanisms=excluded,
    )
