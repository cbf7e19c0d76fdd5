"""Versioned persistence and lifecycle of assessments.

Assessments are stored one JSON document per id under the data directory.
Writes go through a compare-and-set on the revision counter: the caller
supplies the revision it based its edit on, exactly one concurrent writer
per base revision succeeds, and every successful write bumps the revision
by one.  Reads are unrestricted.
"""
from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Callable, Mapping

from .errors import (
    DuplicateAssessment,
    IncompleteAssessment,
    NotDraft,
    RevisionConflict,
    TemplateFormatError,
    TemplateMismatch,
    UnknownAssessment,
    UnknownCode,
    UnknownMechanism,
    UnknownPredecessor,
    UnknownStandard,
    UnknownTemplate,
)
from .framework import FrameworkTemplate, MetricCode, Phase, load_template, parse_metric_code
from .scoring import (
    MetricValue,
    Origin,
    Scorecard,
    apply_cluster_answer,
    apply_standard_compliance,
    assessment_scorecard,
    effective_values,
    metric_value_to_doc,
    normalize_metric_value,
)


class Status(str, Enum):
    DRAFT = "draft"
    PRIVATE = "private"
    PUBLIC = "public"


@dataclass
class AssessmentState:
    """One scoring session bound to a template id+version."""

    id: str
    description: str
    template_id: str
    template_version: str
    created_at: str
    last_modified: str
    status: Status = Status.DRAFT
    predecessor: str | None = None
    metric_values: dict[MetricCode, MetricValue] = field(default_factory=dict)
    chosen_answers: dict[tuple[str, Phase], int] = field(default_factory=dict)
    declared_standards: set[str] = field(default_factory=set)
    excluded_mechanisms: set[str] = field(default_factory=set)
    revision: int = 1


def state_to_doc(state: AssessmentState) -> dict:
    """Export/import document mirroring the state field-for-field."""
    answers: dict[str, dict[str, int]] = {}
    for (qcode, phase), idx in sorted(
        state.chosen_answers.items(), key=lambda kv: (kv[0][0], kv[0][1].value)
    ):
        answers.setdefault(qcode, {})[phase.value] = idx
    return {
        "id": state.id,
        "description": state.description,
        "template_id": state.template_id,
        "template_version": state.template_version,
        "created_at": state.created_at,
        "last_modified": state.last_modified,
        "status": state.status.value,
        "predecessor": state.predecessor,
        "revision": state.revision,
        "metric_values": {
            str(code): metric_value_to_doc(value)
            for code, value in sorted(state.metric_values.items(), key=lambda kv: str(kv[0]))
        },
        "chosen_answers": answers,
        "declared_standards": sorted(state.declared_standards),
        "excluded_mechanisms": sorted(state.excluded_mechanisms),
    }


def state_from_doc(doc: Mapping) -> AssessmentState:
    try:
        values: dict[MetricCode, MetricValue] = {}
        for code_text, vdoc in doc.get("metric_values", {}).items():
            code = parse_metric_code(code_text)
            origin = Origin(vdoc["origin"]) if vdoc.get("origin") else None
            normalized = vdoc.get("normalized")
            if normalized is None:
                values[code] = MetricValue.unscored(code)
            else:
                values[code] = MetricValue.scored(
                    code, float(normalized), origin or Origin.DIRECT, raw=vdoc.get("raw")
                )
        answers: dict[tuple[str, Phase], int] = {}
        for qcode, per_phase in doc.get("chosen_answers", {}).items():
            for phase_text, idx in per_phase.items():
                answers[(qcode, Phase(phase_text))] = int(idx)
        return AssessmentState(
            id=doc["id"],
            description=doc.get("description", ""),
            template_id=doc["template_id"],
            template_version=doc.get("template_version", ""),
            created_at=doc.get("created_at", ""),
            last_modified=doc.get("last_modified", ""),
            status=Status(doc.get("status", "draft")),
            predecessor=doc.get("predecessor"),
            metric_values=values,
            chosen_answers=answers,
            declared_standards=set(doc.get("declared_standards", ())),
            excluded_mechanisms=set(doc.get("excluded_mechanisms", ())),
            revision=int(doc.get("revision", 1)),
        )
    except (KeyError, ValueError, TypeError) as exc:
        raise TemplateFormatError(f"invalid assessment document: {exc}") from exc


def load_assessment(path: str | Path) -> AssessmentState:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise TemplateFormatError(f"{path}: not valid JSON ({exc})") from exc
    # Accept both plain state documents and full dumps with an embedded scorecard.
    if "assessment" in doc and "id" not in doc:
        doc = doc["assessment"]
    return state_from_doc(doc)


def _revert_standard(t: FrameworkTemplate, state: AssessmentState, codes) -> None:
    # Values the un-declared standard wrote fall back to another declared
    # standard, then to the chosen answer configuration, then to unscored.
    # Later direct edits (origin != standard) are left alone.
    for code in sorted(codes, key=str):
        value = state.metric_values.get(code)
        if value is None or value.origin is not Origin.STANDARD:
            continue
        if any(
            code in t.standard(std_id).satisfied_metrics
            for std_id in state.declared_standards
        ):
            continue
        replacement = None
        idx = state.chosen_answers.get((code.qualified_mechanism, code.phase))
        if idx is not None:
            _, mech = t.mechanism(code.qualified_mechanism)
            question = mech.question_for(code.phase)
            config = question.answers[idx].configuration
            if code in config:
                replacement = MetricValue.scored(code, float(config[code]), Origin.CLUSTER_ANSWER)
        if replacement is not None:
            state.metric_values[code] = replacement
        else:
            state.metric_values.pop(code)


def apply_overlay(
    t: FrameworkTemplate,
    state: AssessmentState,
    values: Mapping[str, float | bool] | None = None,
    answers: Mapping[tuple[str, Phase], int] | None = None,
    standards: Mapping[str, bool] | None = None,
    exclusions: Mapping[str, bool] | None = None,
) -> AssessmentState:
    """Return a copy of ``state`` with unsaved edits applied, in the same
    order an interactive session would apply them: answers, standards,
    then direct values."""
    overlay = replace(
        state,
        metric_values=dict(state.metric_values),
        chosen_answers=dict(state.chosen_answers),
        declared_standards=set(state.declared_standards),
        excluded_mechanisms=set(state.excluded_mechanisms),
    )
    for (qcode, phase), idx in (answers or {}).items():
        resolved = t.mechanism(qcode)
        if resolved is None:
            raise UnknownMechanism(f"no mechanism {qcode!r} in template {t.id!r}")
        _, mech = resolved
        overlay.metric_values.update(apply_cluster_answer(mech, phase, idx))
        overlay.chosen_answers[(qcode, phase)] = idx
    for std_id, declared in (standards or {}).items():
        std = t.standard(std_id)
        if std is None:
            raise UnknownStandard(f"no standard {std_id!r} in template {t.id!r}")
        if declared:
            overlay.metric_values.update(apply_standard_compliance(t, std_id))
            overlay.declared_standards.add(std_id)
        else:
            overlay.declared_standards.discard(std_id)
            _revert_standard(t, overlay, std.satisfied_metrics)
    for code_text, raw in (values or {}).items():
        code = parse_metric_code(code_text)
        metric = t.metric(code)
        if metric is None:
            raise UnknownCode(f"no metric {code} in template {t.id!r}")
        overlay.metric_values[code] = MetricValue.scored(
            code, normalize_metric_value(metric, raw), Origin.DIRECT, raw=raw
        )
    for qcode, excluded in (exclusions or {}).items():
        if t.mechanism(qcode) is None:
            raise UnknownMechanism(f"no mechanism {qcode!r} in template {t.id!r}")
        if excluded:
            overlay.excluded_mechanisms.add(qcode)
        else:
            overlay.excluded_mechanisms.discard(qcode)
    return overlay


def included_unscored(t: FrameworkTemplate, a: AssessmentState) -> list[MetricCode]:
    """Included metrics (both phases) that still have no score."""
    values = effective_values(t, a)
    missing = []
    for pillar, mech, metric in t.iter_metrics():
        if f"{pillar.code}.{mech.code}" in a.excluded_mechanisms:
            continue
        value = values.get(metric.code)
        if value is None or not value.is_scored:
            missing.append(metric.code)
    return missing


class TemplateRepository:
    """Read-only set of framework templates, loaded from a directory and/or
    supplied directly."""

    def __init__(
        self,
        template_dir: str | Path | None = None,
        templates: tuple[FrameworkTemplate, ...] = (),
    ):
        self.template_dir = Path(template_dir) if template_dir is not None else None
        self._templates: dict[str, FrameworkTemplate] = {}
        if self.template_dir is not None and self.template_dir.is_dir():
            for path in sorted(self.template_dir.glob("*.json")):
                if path.name.endswith(".schema.json"):
                    continue
                template = load_template(path)
                self._templates[template.id] = template
        for template in templates:
            self._templates[template.id] = template

    def get(self, template_id: str) -> FrameworkTemplate:
        try:
            return self._templates[template_id]
        except KeyError:
            raise UnknownTemplate(f"no template {template_id!r}") from None

    def ids(self) -> list[str]:
        return sorted(self._templates)


def _utcnow_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="microseconds")


class AssessmentStore:
    """Assessment persistence with per-assessment optimistic locking."""

    def __init__(
        self,
        data_dir: str | Path,
        templates: TemplateRepository,
        clock: Callable[[], str] = _utcnow_iso,
    ):
        self.templates = templates
        self._clock = clock
        self._dir = Path(data_dir) / "assessments"
        self._dir.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()
        self._cache: dict[str, AssessmentState] = {}
        for path in sorted(self._dir.glob("*.json")):
            state = load_assessment(path)
            self._cache[state.id] = state

    # -- reads -------------------------------------------------------------

    def get(self, assessment_id: str) -> AssessmentState:
        try:
            return self._cache[assessment_id]
        except KeyError:
            raise UnknownAssessment(f"no assessment {assessment_id!r}") from None

    def list(self) -> list[AssessmentState]:
        return [self._cache[key] for key in sorted(self._cache)]

    def scorecard(self, assessment_id: str) -> Scorecard:
        state = self.get(assessment_id)
        return assessment_scorecard(self.templates.get(state.template_id), state)

    # -- creation ----------------------------------------------------------

    def create_assessment(
        self,
        template_id: str,
        description: str,
        from_id: str | None = None,
        assessment_id: str | None = None,
    ) -> AssessmentState:
        template = self.templates.get(template_id)
        now = self._clock()
        with self._lock:
            new_id = assessment_id or f"a-{uuid.uuid4().hex[:10]}"
            if new_id in self._cache:
                raise DuplicateAssessment(f"assessment id {new_id!r} already exists")
            state = AssessmentState(
                id=new_id,
                description=description,
                template_id=template.id,
                template_version=template.version,
                created_at=now,
                last_modified=now,
            )
            if from_id is not None:
                try:
                    source = self._cache[from_id]
                except KeyError:
                    raise UnknownPredecessor(f"no assessment {from_id!r}") from None
                if source.template_id != template.id:
                    raise TemplateMismatch(
                        f"predecessor {from_id!r} uses template {source.template_id!r}, "
                        f"not {template.id!r}"
                    )
                state.predecessor = from_id
                state.metric_values = {
                    code: replace(value, origin=Origin.INHERITED)
                    for code, value in source.metric_values.items()
                    if value.is_scored
                }
                state.chosen_answers = dict(source.chosen_answers)
                state.declared_standards = set(source.declared_standards)
                state.excluded_mechanisms = set(source.excluded_mechanisms)
            self._persist(state)
            return state

    def import_assessment(self, state: AssessmentState) -> AssessmentState:
        """Register an externally produced assessment document."""
        template = self.templates.get(state.template_id)
        assessment_scorecard(template, state)  # raises TemplateMismatch on bad refs
        with self._lock:
            if state.id in self._cache:
                raise DuplicateAssessment(f"assessment id {state.id!r} already exists")
            self._persist(state)
            return state

    # -- writes (compare-and-set) -------------------------------------------

    def _begin_write(self, assessment_id: str, revision: int, draft_only: bool) -> AssessmentState:
        try:
            current = self._cache[assessment_id]
        except KeyError:
            raise UnknownAssessment(f"no assessment {assessment_id!r}") from None
        if draft_only and current.status is not Status.DRAFT:
            raise NotDraft(f"assessment {assessment_id!r} is {current.status.value}, not draft")
        if current.revision != revision:
            raise RevisionConflict(
                f"assessment {assessment_id!r} is at revision {current.revision}, "
                f"write was based on {revision}"
            )
        return replace(
            current,
            metric_values=dict(current.metric_values),
            chosen_answers=dict(current.chosen_answers),
            declared_standards=set(current.declared_standards),
            excluded_mechanisms=set(current.excluded_mechanisms),
        )

    def _commit(self, state: AssessmentState) -> AssessmentState:
        state.revision += 1
        state.last_modified = self._clock()
        self._persist(state)
        return state

    def _persist(self, state: AssessmentState) -> None:
        path = self._dir / f"{state.id}.json"
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(json.dumps(state_to_doc(state), indent=2) + "\n", encoding="utf-8")
        os.replace(tmp, path)
        self._cache[state.id] = state

    def apply_metric_values(
        self, assessment_id: str, revision: int, raw_values: Mapping[str, float | bool]
    ) -> AssessmentState:
        """Set one or more metric values as direct edits in a single write."""
        with self._lock:
            state = self._begin_write(assessment_id, revision, draft_only=True)
            template = self.templates.get(state.template_id)
            normalized: dict[MetricCode, MetricValue] = {}
            for code_text, raw in raw_values.items():
                code = parse_metric_code(code_text) if isinstance(code_text, str) else code_text
                metric = template.metric(code)
                if metric is None:
                    raise UnknownCode(f"no metric {code} in template {template.id!r}")
                normalized[code] = MetricValue.scored(
                    code, normalize_metric_value(metric, raw), Origin.DIRECT, raw=raw
                )
            state.metric_values.update(normalized)
            return self._commit(state)

    def set_metric_value(
        self, assessment_id: str, revision: int, code: str | MetricCode, raw: float | bool
    ) -> AssessmentState:
        return self.apply_metric_values(assessment_id, revision, {str(code): raw})

    def choose_cluster_answer(
        self, assessment_id: str, revision: int, mechanism: str, phase: Phase, answer_index: int
    ) -> AssessmentState:
        with self._lock:
            state = self._begin_write(assessment_id, revision, draft_only=True)
            template = self.templates.get(state.template_id)
            resolved = template.mechanism(mechanism)
            if resolved is None:
                raise UnknownMechanism(f"no mechanism {mechanism!r} in template {template.id!r}")
            _, mech = resolved
            state.metric_values.update(apply_cluster_answer(mech, phase, answer_index))
            state.chosen_answers[(mechanism, phase)] = answer_index
            return self._commit(state)

    def declare_standard(
        self, assessment_id: str, revision: int, standard_id: str, declared: bool = True
    ) -> AssessmentState:
        with self._lock:
            state = self._begin_write(assessment_id, revision, draft_only=True)
            template = self.templates.get(state.template_id)
            std = template.standard(standard_id)
            if std is None:
                raise UnknownStandard(f"no standard {standard_id!r} in template {template.id!r}")
            if declared:
                state.metric_values.update(apply_standard_compliance(template, standard_id))
                state.declared_standards.add(standard_id)
            else:
                state.declared_standards.discard(standard_id)
                _revert_standard(template, state, std.satisfied_metrics)
            return self._commit(state)

    def set_mechanism_exclusion(
        self, assessment_id: str, revision: int, mechanism: str, excluded: bool
    ) -> AssessmentState:
        with self._lock:
            state = self._begin_write(assessment_id, revision, draft_only=True)
            template = self.templates.get(state.template_id)
            if template.mechanism(mechanism) is None:
                raise UnknownMechanism(f"no mechanism {mechanism!r} in template {template.id!r}")
            if excluded:
                state.excluded_mechanisms.add(mechanism)
            else:
                state.excluded_mechanisms.discard(mechanism)
            return self._commit(state)

    def preview(
        self,
        assessment_id: str,
        values: Mapping[str, float | bool] | None = None,
        answers: Mapping[tuple[str, Phase], int] | None = None,
        standards: Mapping[str, bool] | None = None,
        exclusions: Mapping[str, bool] | None = None,
    ) -> Scorecard:
        """Scorecard of a transient overlay on a draft; nothing is persisted."""
        state = self.get(assessment_id)
        if state.status is not Status.DRAFT:
            raise NotDraft(f"assessment {assessment_id!r} is {state.status.value}, not draft")
        template = self.templates.get(state.template_id)
        overlay = apply_overlay(template, state, values, answers, standards, exclusions)
        return assessment_scorecard(template, overlay)

    def transition_status(self, assessment_id: str, revision: int, to: Status) -> AssessmentState:
        with self._lock:
            state = self._begin_write(assessment_id, revision, draft_only=False)
            if to in (Status.PRIVATE, Status.PUBLIC) and state.status is Status.DRAFT:
                template = self.templates.get(state.template_id)
                missing = included_unscored(template, state)
                if missing:
                    raise IncompleteAssessment(
                        f"{len(missing)} included metric(s) unscored, e.g. {missing[0]}"
                    )
            state.status = to
            return self._commit(state)
