"""Trustworthiness assessment platform for electronic identity systems.

A declarative framework template (pillars -> mechanisms -> metrics) is
loaded, assessors score a system at any granularity (standards
declarations, cluster questions or raw metrics), and a deterministic
hierarchical engine produces capped per-phase scores, color-banded
reports and polar fingerprints.
"""

from .framework import (
    FrameworkTemplate,
    MandatoryCaps,
    Mechanism,
    Metric,
    MetricCode,
    MetricKind,
    Phase,
    Pillar,
    TransformForm,
    load_template,
    parse_metric_code,
    validate_template,
)
from .scoring import (
    MetricValue,
    Origin,
    Scorecard,
    ScoreNode,
    assessment_scorecard,
    normalize_metric_value,
)
from .store import AssessmentState, AssessmentStore, Status, TemplateRepository, load_assessment

__version__ = "0.1.0"

__all__ = [
    "AssessmentState",
    "AssessmentStore",
    "FrameworkTemplate",
    "MandatoryCaps",
    "Mechanism",
    "Metric",
    "MetricCode",
    "MetricKind",
    "MetricValue",
    "Origin",
    "Phase",
    "Pillar",
    "Scorecard",
    "ScoreNode",
    "Status",
    "TemplateRepository",
    "TransformForm",
    "assessment_scorecard",
    "load_assessment",
    "load_template",
    "normalize_metric_value",
    "parse_metric_code",
    "validate_template",
]
