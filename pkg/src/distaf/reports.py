"""Human-facing artifacts computed from scorecards: bands, fingerprints,
comparisons and exports.  Everything is recomputed on demand from the
stored state; nothing is cached."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from enum import Enum

from .errors import TemplateMismatch, UnknownPillar, UnsupportedFormat
from .framework import FrameworkTemplate, Metric, MetricCode, Phase
from .scoring import (
    MetricValue,
    Scorecard,
    ScoreNode,
    scorecard_to_doc,
)
from .store import AssessmentState, state_to_doc


class ColorBand(str, Enum):
    """Background color of a score cell.

    Transparent marks exclusion and dominates everything; DeepPink marks
    unsatisfied mandatory metrics and dominates the numeric bands.
    """

    DEEP_PINK = "DeepPink"
    TOMATO_RED = "TomatoRed"
    LEMON_CHIFFON = "LemonChiffon"
    LIGHT_GREEN = "LightGreen"
    TRANSPARENT = "Transparent"


def band_for_score(score: float) -> ColorBand:
    """Numeric banding: <=33 red, 33-66 yellow (66 inclusive), >66 green."""
    if score <= 33.0:
        return ColorBand.TOMATO_RED
    if score <= 66.0:
        return ColorBand.LEMON_CHIFFON
    return ColorBand.LIGHT_GREEN


def color_band(node: ScoreNode) -> ColorBand:
    if node.excluded:
        return ColorBand.TRANSPARENT
    if node.mandatory_violations:
        return ColorBand.DEEP_PINK
    if node.capped_score is None:
        return ColorBand.TRANSPARENT  # nothing scored yet, nothing to color
    return band_for_score(node.capped_score)


def metric_band(metric: Metric, value: MetricValue) -> ColorBand:
    if not value.is_scored:
        return ColorBand.TRANSPARENT
    if metric.mandatory is not None and value.normalized < metric.mandatory.satisfied_when_at_least:
        return ColorBand.DEEP_PINK
    return band_for_score(value.normalized)


# ---------------------------------------------------------------------------
# Fingerprints
# ---------------------------------------------------------------------------

class FingerprintLevel(str, Enum):
    PILLARS = "pillars"
    MECHANISMS_OF_PILLAR = "mechanisms"


@dataclass(frozen=True)
class FingerprintAxis:
    label: str
    value: float | None  # capped score; None while the node is unscored
    complete: bool


@dataclass(frozen=True)
class FingerprintSeries:
    phase: Phase
    level: FingerprintLevel
    axes: tuple[FingerprintAxis, ...]


def fingerprint_series(
    t: FrameworkTemplate,
    card: Scorecard,
    level: FingerprintLevel,
    phase: Phase,
    pillar_code: str | None = None,
) -> FingerprintSeries:
    """Polar-chart series: one axis per included pillar, or per included
    mechanism of one pillar.  Axis order follows the template."""
    scores = card.phase(phase)
    axes: list[FingerprintAxis] = []
    if level is FingerprintLevel.PILLARS:
        for pillar in t.pillars:
            node = scores.pillars.get(pillar.code)
            if node is None or node.excluded:
                continue
            axes.append(
                FingerprintAxis(pillar.name, node.capped_score, node.completeness == 1.0)
            )
    else:
        pillar = t.pillar(pillar_code) if pillar_code else None
        if pillar is None:
            raise UnknownPillar("mechanism-level fingerprint requires a pillar code")
        for mech in pillar.mechanisms:
            node = scores.mechanisms.get(f"{pillar.code}.{mech.code}")
            if node is None or node.excluded:
                continue
            axes.append(
                FingerprintAxis(mech.name, node.capped_score, node.completeness == 1.0)
            )
    return FingerprintSeries(phase=phase, level=level, axes=tuple(axes))


def fingerprint_to_doc(series: FingerprintSeries) -> dict:
    return {
        "phase": series.phase.value,
        "level": series.level.value,
        "axes": [
            {"label": a.label, "value": a.value, "complete": a.complete} for a in series.axes
        ],
    }


# ---------------------------------------------------------------------------
# Comparison (assessor-only at the API layer)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NodeDelta:
    subject: str
    kind: str  # "pillar" | "mechanism"
    phase: Phase
    capped_a: float | None
    capped_b: float | None
    delta: float | None
    band_a: ColorBand
    band_b: ColorBand
    newly_satisfied: frozenset[MetricCode]
    newly_unsatisfied: frozenset[MetricCode]

    @property
    def band_changed(self) -> bool:
        return self.band_a is not self.band_b


@dataclass(frozen=True)
class ComparisonReport:
    template_id: str
    assessment_a: str
    assessment_b: str
    entries: tuple[NodeDelta, ...]


def _node_delta(kind: str, a: ScoreNode, b: ScoreNode) -> NodeDelta:
    delta = None
    if a.capped_score is not None and b.capped_score is not None:
        delta = b.capped_score - a.capped_score
    return NodeDelta(
        subject=a.subject,
        kind=kind,
        phase=a.phase,
        capped_a=a.capped_score,
        capped_b=b.capped_score,
        delta=delta,
        band_a=color_band(a),
        band_b=color_band(b),
        newly_satisfied=frozenset(a.mandatory_violations - b.mandatory_violations),
        newly_unsatisfied=frozenset(b.mandatory_violations - a.mandatory_violations),
    )


def compare(a: Scorecard, b: Scorecard) -> ComparisonReport:
    if a.template_id != b.template_id:
        raise TemplateMismatch(
            f"cannot compare scorecards from templates {a.template_id!r} and {b.template_id!r}"
        )
    entries: list[NodeDelta] = []
    for phase in Phase:
        pa, pb = a.phase(phase), b.phase(phase)
        for code, node_a in pa.pillars.items():
            if code in pb.pillars:
                entries.append(_node_delta("pillar", node_a, pb.pillars[code]))
        for code, node_a in pa.mechanisms.items():
            if code in pb.mechanisms:
                entries.append(_node_delta("mechanism", node_a, pb.mechanisms[code]))
    return ComparisonReport(
        template_id=a.template_id,
        assessment_a=a.assessment_id,
        assessment_b=b.assessment_id,
        entries=tuple(entries),
    )


def comparison_to_doc(report: ComparisonReport) -> dict:
    return {
        "template_id": report.template_id,
        "assessment_a": report.assessment_a,
        "assessment_b": report.assessment_b,
        "entries": [
            {
                "subject": e.subject,
                "kind": e.kind,
                "phase": e.phase.value,
                "capped_a": e.capped_a,
                "capped_b": e.capped_b,
                "delta": e.delta,
                "band_a": e.band_a.value,
                "band_b": e.band_b.value,
                "band_changed": e.band_changed,
                "newly_satisfied": sorted(str(c) for c in e.newly_satisfied),
                "newly_unsatisfied": sorted(str(c) for c in e.newly_unsatisfied),
            }
            for e in report.entries
        ],
    }


# ---------------------------------------------------------------------------
# Exports
# ---------------------------------------------------------------------------

EXPORT_FORMATS = ("dump", "tabular", "summary")


def _format_score(value: float | None) -> str:
    if value is None:
        return ""
    return repr(float(value))  # shortest exact round-trip form


def _format_display(value: float | None) -> str:
    return "" if value is None else f"{value:.1f}"


def _tabular(t: FrameworkTemplate, a: AssessmentState, card: Scorecard) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["code", "phase", "value", "origin", "mechanism", "pillar", "band"])
    for pillar, mech, metric in t.iter_metrics():
        qcode = f"{pillar.code}.{mech.code}"
        if qcode in a.excluded_mechanisms:
            continue
        value = card.phase(metric.code.phase).metrics[metric.code]
        writer.writerow(
            [
                str(metric.code),
                metric.code.phase.value,
                _format_score(value.normalized),
                value.origin.value if value.origin else "",
                qcode,
                pillar.code,
                metric_band(metric, value).value if value.is_scored else "",
            ]
        )
    return buf.getvalue()


def _summary(t: FrameworkTemplate, a: AssessmentState, card: Scorecard) -> str:
    lines = [
        f"Assessment {a.id} ({a.status.value}) - template {t.id} v{t.version}",
        f"Description: {a.description}",
        "",
    ]
    for phase in Phase:
        scores = card.phase(phase)
        lines.append(f"== {phase.value.capitalize()} phase "
                     f"(completeness {scores.completeness * 100:.0f}%) ==")
        lines.append(f"{'Pillar':<8} {'Name':<24} {'Raw':>7} {'Capped':>7}  Band")
        for pillar in t.pillars:
            node = scores.pillars.get(pillar.code)
            if node is None:
                continue
            lines.append(
                f"{pillar.code:<8} {pillar.name:<24} "
                f"{_format_display(node.raw_score):>7} "
                f"{_format_display(node.capped_score):>7}  {color_band(node).value}"
            )
        fingerprint = fingerprint_series(t, card, FingerprintLevel.PILLARS, phase)
        values = ", ".join(
            f"{axis.label}={_format_display(axis.value)}" for axis in fingerprint.axes
        )
        lines.append(f"Fingerprint: {values}")
        lines.append("")
    if card.warnings:
        lines.append("Warnings:")
        lines.extend(f"  - {w}" for w in card.warnings)
        lines.append("")
    return "\n".join(lines)


def export_assessment(
    t: FrameworkTemplate, a: AssessmentState, card: Scorecard, fmt: str
) -> str:
    """Serialize an assessment and its scorecard.

    ``dump`` is the lossless JSON document (re-importable), ``tabular`` a
    CSV with one row per included metric, ``summary`` a printable pillar
    table with fingerprint values.
    """
    if fmt == "dump":
        return json.dumps(
            {"assessment": state_to_doc(a), "scorecard": scorecard_to_doc(card)},
            indent=2,
        ) + "\n"
    if fmt == "tabular":
        return _tabular(t, a, card)
    if fmt == "summary":
        return _summary(t, a, card)
    raise UnsupportedFormat(f"format {fmt!r} not one of {', '.join(EXPORT_FORMATS)}")
