"""Deterministic scoring pipeline: normalization, propagation, aggregation, caps.

Everything here is a pure function of its inputs.  Scores flow through
three steps, independently per phase:

1. top-down: a chosen cluster answer writes its configuration onto the
   mechanism's metrics of that phase;
2. bottom-up: a mechanism's score is the weighted sum of its metrics;
3. bottom-up: a pillar's score is the weighted sum of its included
   mechanisms' capped scores.

A mandatory metric that is scored below its satisfaction threshold caps
its mechanism and pillar at the metric's two cap values; with several
violations the minimum cap wins.  Excluded mechanisms contribute nothing,
caps included, and the remaining weights are rescaled proportionally.
Pillars are never aggregated with each other.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Mapping

from .errors import (
    BadAnswerIndex,
    NoQuestionForPhase,
    NoScorableChildren,
    OutOfRange,
    TemplateMismatch,
    UnknownStandard,
)
from .framework import (
    FrameworkTemplate,
    Mechanism,
    Metric,
    MetricCode,
    MetricKind,
    Phase,
    Pillar,
    TransformForm,
)

if TYPE_CHECKING:  # pragma: no cover
    from .store import AssessmentState


class Origin(str, Enum):
    """How a metric value came to be set."""

    DIRECT = "direct"
    CLUSTER_ANSWER = "cluster_answer"
    STANDARD = "standard"
    INHERITED = "inherited"


class ValueState(str, Enum):
    UNSCORED = "unscored"
    SCORED = "scored"


@dataclass(frozen=True)
class MetricValue:
    code: MetricCode
    raw: float | bool | None
    normalized: float | None
    origin: Origin | None
    state: ValueState

    @classmethod
    def unscored(cls, code: MetricCode) -> "MetricValue":
        return cls(code=code, raw=None, normalized=None, origin=None, state=ValueState.UNSCORED)

    @classmethod
    def scored(
        cls, code: MetricCode, normalized: float, origin: Origin, raw: float | bool | None = None
    ) -> "MetricValue":
        return cls(code=code, raw=raw, normalized=normalized, origin=origin, state=ValueState.SCORED)

    @property
    def is_scored(self) -> bool:
        return self.state is ValueState.SCORED


def apply_transform(transform: TransformForm | None, value: float) -> float:
    if transform is TransformForm.COMPLEMENT:
        return 100.0 - value
    return value


def normalize_metric_value(metric: Metric, raw: float | bool) -> float:
    """Homogenize a raw input to the 0-100 scale where 100 is optimal.

    Booleans map to 100/0.  Percentages must lie in [0, 100] and get the
    metric's sanitization transform applied (e.g. complement for rates
    where 0 is the ideal).
    """
    if metric.kind is MetricKind.BOOLEAN:
        if isinstance(raw, bool):
            return 100.0 if raw else 0.0
        if isinstance(raw, (int, float)) and float(raw) in (0.0, 100.0):
            return float(raw)
        raise OutOfRange(f"{metric.code}: boolean metric accepts true/false (or 0/100), got {raw!r}")
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise OutOfRange(f"{metric.code}: percentage metric requires a number, got {raw!r}")
    value = float(raw)
    if not 0.0 <= value <= 100.0:
        raise OutOfRange(f"{metric.code}: raw value {value} outside [0, 100]")
    return apply_transform(metric.transform, value)


def apply_cluster_answer(
    mech: Mechanism, phase: Phase, answer_index: int
) -> dict[MetricCode, MetricValue]:
    """Score every metric of (mechanism, phase) from one chosen answer.

    The answer's configuration values are already normalized scores, so
    they are stored as-is.  Later direct edits may overwrite them.
    """
    question = mech.question_for(phase)
    if question is None:
        raise NoQuestionForPhase(f"mechanism {mech.code} has no {phase.value} cluster question")
    if not 0 <= answer_index < len(question.answers):
        raise BadAnswerIndex(
            f"answer index {answer_index} outside 0..{len(question.answers) - 1}"
        )
    answer = question.answers[answer_index]
    return {
        code: MetricValue.scored(code, float(value), Origin.CLUSTER_ANSWER)
        for code, value in answer.configuration.items()
    }


def apply_standard_compliance(
    t: FrameworkTemplate, standard_id: str
) -> dict[MetricCode, MetricValue]:
    """Score every metric mapped by a declared standard to full marks."""
    std = t.standard(standard_id)
    if std is None:
        raise UnknownStandard(f"no standard {standard_id!r} in template {t.id!r}")
    codes = sorted(std.satisfied_metrics, key=str)
    return {code: MetricValue.scored(code, 100.0, Origin.STANDARD) for code in codes}


# ---------------------------------------------------------------------------
# Aggregation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AppliedCap:
    metric: MetricCode
    cap: float


@dataclass(frozen=True)
class ScoreNode:
    """Computed score of one pillar or mechanism for one phase.

    ``raw_score``/``capped_score`` are None while nothing underneath is
    scored.  ``completeness`` is the scored fraction of the included
    metrics below this node; nodes below 1.0 are reported but do not take
    part in pillar aggregation.
    """

    subject: str  # pillar code, or pillar-qualified mechanism code
    phase: Phase
    raw_score: float | None
    capped_score: float | None
    applied_cap: AppliedCap | None
    mandatory_violations: frozenset[MetricCode]
    excluded: bool
    completeness: float


def _min_cap(
    candidates: list[tuple[float, MetricCode]], raw: float
) -> tuple[float, AppliedCap | None]:
    """Apply the minimum cap; a cap only 'applies' when it reduces raw."""
    if not candidates:
        return raw, None
    cap, code = min(candidates, key=lambda item: item[0])
    if cap < raw:
        return cap, AppliedCap(metric=code, cap=cap)
    return raw, None


def excluded_node(subject: str, phase: Phase) -> ScoreNode:
    return ScoreNode(
        subject=subject,
        phase=phase,
        raw_score=None,
        capped_score=None,
        applied_cap=None,
        mandatory_violations=frozenset(),
        excluded=True,
        completeness=1.0,
    )


def mechanism_score(
    pillar_code: str,
    mech: Mechanism,
    phase: Phase,
    values: Mapping[MetricCode, MetricValue],
) -> ScoreNode:
    """Aggregate one mechanism's phase metrics into a score node.

    Partially scored mechanisms get a score over the scored subset with
    proportionally rescaled weights, and completeness < 1.  Unscored
    mandatory metrics never cap (they can only exist in drafts); scored
    ones below their satisfaction threshold cap the mechanism at the
    minimum of their mechanism caps.
    """
    subject = f"{pillar_code}.{mech.code}"
    phase_metrics = mech.phase_metrics(phase)
    if not phase_metrics:
        raise NoScorableChildren(f"mechanism {subject} has no metrics for phase {phase.value}")
    scored = [
        m for m in phase_metrics
        if (v := values.get(m.code)) is not None and v.is_scored
    ]
    completeness = len(scored) / len(phase_metrics)
    if not scored:
        return ScoreNode(subject, phase, None, None, None, frozenset(), False, 0.0)

    # Single division keeps the weighted mean exact for equal values under
    # integer weights (all metrics at 100 aggregate to exactly 100).
    weights = {m.code: float(mech.metric_weights.get(m.code, 1.0)) for m in scored}
    total = sum(weights.values())
    if total <= 0.0:
        # Every scored metric carries zero weight; nothing to aggregate yet.
        return ScoreNode(subject, phase, None, None, None, frozenset(), False, completeness)
    raw = sum(values[m.code].normalized * weights[m.code] for m in scored) / total

    violations = []
    cap_candidates: list[tuple[float, MetricCode]] = []
    for m in scored:
        if m.mandatory is None:
            continue
        if values[m.code].normalized < m.mandatory.satisfied_when_at_least:
            violations.append(m.code)
            cap_candidates.append((float(m.mandatory.mechanism_cap), m.code))
    capped, applied = _min_cap(cap_candidates, raw)
    return ScoreNode(
        subject=subject,
        phase=phase,
        raw_score=raw,
        capped_score=capped,
        applied_cap=applied,
        mandatory_violations=frozenset(violations),
        excluded=False,
        completeness=completeness,
    )


def pillar_score(
    pillar: Pillar,
    phase: Phase,
    mechanism_nodes: Mapping[str, ScoreNode],
) -> ScoreNode:
    """Aggregate mechanism nodes (keyed by local mechanism code) into the
    pillar node for one phase.

    Only complete, non-excluded mechanisms feed the weighted sum of capped
    scores; their weights are renormalized.  Pillar caps come from the
    violations recorded on those same mechanisms -- an excluded mechanism
    takes its caps with it.
    """
    included = {
        code: node for code, node in mechanism_nodes.items() if not node.excluded
    }
    if not included:
        raise NoScorableChildren(
            f"pillar {pillar.code} has no included mechanisms for phase {phase.value}"
        )
    aggregable = {
        code: node
        for code, node in included.items()
        if node.completeness == 1.0 and node.capped_score is not None
    }

    metric_counts = {
        mech.code: len(mech.phase_metrics(phase))
        for mech in pillar.mechanisms
        if mech.code in included
    }
    total_metrics = sum(metric_counts.values())
    scored_metrics = sum(
        included[code].completeness * count for code, count in metric_counts.items()
    )
    completeness = scored_metrics / total_metrics if total_metrics else 0.0

    if not aggregable:
        return ScoreNode(pillar.code, phase, None, None, None, frozenset(), False, completeness)

    ordered = [m.code for m in pillar.mechanisms if m.code in aggregable]
    weights = {code: float(pillar.mechanism_weights.get(code, 1.0)) for code in ordered}
    total = sum(weights.values())
    if total <= 0.0:
        return ScoreNode(pillar.code, phase, None, None, None, frozenset(), False, completeness)
    raw = sum(aggregable[code].capped_score * weights[code] for code in ordered) / total

    metric_by_code = {m.code: m for mech in pillar.mechanisms for m in mech.metrics}
    violations: list[MetricCode] = []
    cap_candidates: list[tuple[float, MetricCode]] = []
    for code in ordered:
        for vcode in sorted(aggregable[code].mandatory_violations, key=str):
            violations.append(vcode)
            cap_candidates.append((float(metric_by_code[vcode].mandatory.pillar_cap), vcode))
    capped, applied = _min_cap(cap_candidates, raw)
    return ScoreNode(
        subject=pillar.code,
        phase=phase,
        raw_score=raw,
        capped_score=capped,
        applied_cap=applied,
        mandatory_violations=frozenset(violations),
        excluded=False,
        completeness=completeness,
    )


# ---------------------------------------------------------------------------
# Full scorecard
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseScores:
    pillars: dict[str, ScoreNode]
    mechanisms: dict[str, ScoreNode]  # keyed by qualified code, e.g. "S.AC"
    metrics: dict[MetricCode, MetricValue]
    completeness: float


@dataclass(frozen=True)
class Scorecard:
    assessment_id: str
    template_id: str
    template_version: str
    design: PhaseScores
    operational: PhaseScores
    warnings: tuple[str, ...] = ()

    def phase(self, phase: Phase) -> PhaseScores:
        return self.design if phase is Phase.DESIGN else self.operational


def effective_values(
    t: FrameworkTemplate, a: "AssessmentState"
) -> dict[MetricCode, MetricValue]:
    """Resolve the assessment's scored values in pipeline order.

    Cluster answers are applied first, declared standards second, and the
    stored per-metric values last, so a state that only records answers
    and standards (e.g. a hand-written import) scores the same as one
    whose edits were materialized as they happened.
    """
    resolved: dict[MetricCode, MetricValue] = {}
    for pillar in t.pillars:
        for mech in pillar.mechanisms:
            qcode = f"{pillar.code}.{mech.code}"
            for phase in Phase:
                idx = a.chosen_answers.get((qcode, phase))
                if idx is not None:
                    resolved.update(apply_cluster_answer(mech, phase, idx))
    for std in t.standards:
        if std.standard_id in a.declared_standards:
            resolved.update(apply_standard_compliance(t, std.standard_id))
    for code, value in a.metric_values.items():
        if value.is_scored:
            resolved[code] = value
    return resolved


def _check_references(t: FrameworkTemplate, a: "AssessmentState") -> None:
    if a.template_id != t.id:
        raise TemplateMismatch(
            f"assessment {a.id!r} is bound to template {a.template_id!r}, not {t.id!r}"
        )
    for code in a.metric_values:
        if t.metric(code) is None:
            raise TemplateMismatch(f"assessment references unknown metric code {code}")
    for qcode, phase in a.chosen_answers:
        resolved = t.mechanism(qcode)
        if resolved is None:
            raise TemplateMismatch(f"assessment references unknown mechanism {qcode!r}")
        _, mech = resolved
        if mech.question_for(phase) is None:
            raise TemplateMismatch(f"mechanism {qcode} has no {phase.value} cluster question")
    for std_id in a.declared_standards:
        if t.standard(std_id) is None:
            raise TemplateMismatch(f"assessment references unknown standard {std_id!r}")
    for qcode in a.excluded_mechanisms:
        if t.mechanism(qcode) is None:
            raise TemplateMismatch(f"assessment excludes unknown mechanism {qcode!r}")


def assessment_scorecard(t: FrameworkTemplate, a: "AssessmentState") -> Scorecard:
    """Compute the full per-phase scorecard for one assessment.

    Deterministic: identical inputs yield an identical scorecard.  The two
    phases are computed independently; a metric of one phase can never
    move a node of the other.
    """
    _check_references(t, a)
    values = effective_values(t, a)
    warnings: list[str] = []
    if a.template_version and a.template_version != t.version:
        warnings.append(
            f"assessment was made against template version {a.template_version}, "
            f"scoring with {t.version}"
        )
    by_phase: dict[Phase, PhaseScores] = {}

    for phase in Phase:
        pillar_nodes: dict[str, ScoreNode] = {}
        mech_nodes: dict[str, ScoreNode] = {}
        metric_map: dict[MetricCode, MetricValue] = {}
        included_total = 0
        included_scored = 0

        for pillar in t.pillars:
            phase_mechs = [m for m in pillar.mechanisms if m.phase_metrics(phase)]
            if not phase_mechs:
                warnings.append(
                    f"pillar {pillar.code} has no {phase.value} metrics; no node computed"
                )
                continue
            local_nodes: dict[str, ScoreNode] = {}
            for mech in phase_mechs:
                qcode = f"{pillar.code}.{mech.code}"
                if qcode in a.excluded_mechanisms:
                    node = excluded_node(qcode, phase)
                else:
                    for metric in mech.phase_metrics(phase):
                        value = values.get(metric.code, MetricValue.unscored(metric.code))
                        metric_map[metric.code] = value
                        included_total += 1
                        included_scored += 1 if value.is_scored else 0
                        if metric.mandatory is not None and not value.is_scored:
                            warnings.append(
                                f"mandatory metric {metric.code} is unscored; "
                                "caps apply once it is scored"
                            )
                    node = mechanism_score(pillar.code, mech, phase, values)
                    if 0.0 < node.completeness < 1.0:
                        warnings.append(
                            f"mechanism {qcode} ({phase.value}) is partially scored; "
                            "excluded from pillar aggregation until complete"
                        )
                mech_nodes[qcode] = node
                local_nodes[mech.code] = node
            try:
                pillar_nodes[pillar.code] = pillar_score(pillar, phase, local_nodes)
            except NoScorableChildren:
                warnings.append(
                    f"pillar {pillar.code} ({phase.value}): no scorable mechanisms "
                    "(all excluded)"
                )
                pillar_nodes[pillar.code] = ScoreNode(
                    subject=pillar.code,
                    phase=phase,
                    raw_score=None,
                    capped_score=None,
                    applied_cap=None,
                    mandatory_violations=frozenset(),
                    excluded=True,
                    completeness=1.0,
                )

        completeness = included_scored / included_total if included_total else 1.0
        by_phase[phase] = PhaseScores(
            pillars=pillar_nodes,
            mechanisms=mech_nodes,
            metrics=metric_map,
            completeness=completeness,
        )

    return Scorecard(
        assessment_id=a.id,
        template_id=t.id,
        template_version=t.version,
        design=by_phase[Phase.DESIGN],
        operational=by_phase[Phase.OPERATIONAL],
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# Plain-dict serialization (wire format / exports)
# ---------------------------------------------------------------------------

def metric_value_to_doc(value: MetricValue) -> dict:
    return {
        "raw": value.raw,
        "normalized": value.normalized,
        "origin": value.origin.value if value.origin else None,
        "state": value.state.value,
    }


def score_node_to_doc(node: ScoreNode) -> dict:
    return {
        "subject": node.subject,
        "phase": node.phase.value,
        "raw_score": node.raw_score,
        "capped_score": node.capped_score,
        "applied_cap": (
            {"metric": str(node.applied_cap.metric), "cap": node.applied_cap.cap}
            if node.applied_cap
            else None
        ),
        "mandatory_violations": sorted(str(c) for c in node.mandatory_violations),
        "excluded": node.excluded,
        "completeness": node.completeness,
    }


def scorecard_to_doc(card: Scorecard) -> dict:
    def phase_doc(scores: PhaseScores) -> dict:
        return {
            "pillars": {code: score_node_to_doc(n) for code, n in scores.pillars.items()},
            "mechanisms": {code: score_node_to_doc(n) for code, n in scores.mechanisms.items()},
            "metrics": {str(c): metric_value_to_doc(v) for c, v in scores.metrics.items()},
            "completeness": scores.completeness,
        }

    return {
        "assessment_id": card.assessment_id,
        "template_id": card.template_id,
        "template_version": card.template_version,
        "design": phase_doc(card.design),
        "operational": phase_doc(card.operational),
        "warnings": list(card.warnings),
    }
