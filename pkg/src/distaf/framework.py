"""Framework data model: pillars, mechanisms, metrics and template validation.

A framework template is the immutable catalog an assessment is scored
against.  Everything in this module is pure data plus validation; no
scoring happens here.  Templates are never mutated after load -- a new
version is a new template object.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import (
    MalformedCode,
    NoScorableChildren,
    TemplateFormatError,
    UnknownPillar,
)


class Phase(str, Enum):
    """Lifecycle stage a metric belongs to.  Scores never cross phases."""

    DESIGN = "design"
    OPERATIONAL = "operational"

    @property
    def letter(self) -> str:
        return "D" if self is Phase.DESIGN else "O"

    @classmethod
    def from_letter(cls, letter: str) -> "Phase":
        if letter == "D":
            return cls.DESIGN
        if letter == "O":
            return cls.OPERATIONAL
        raise MalformedCode(f"phase letter must be D or O, got {letter!r}")


class MetricKind(str, Enum):
    BOOLEAN = "boolean"
    PERCENTAGE = "percentage"


class TransformForm(str, Enum):
    """Sanitization applied to a raw percentage so 100 is always optimal."""

    IDENTITY = "identity"
    COMPLEMENT = "complement"  # score = 100 - raw


_CODE_RE = re.compile(r"^([A-Z]{1,8})\.([A-Z]{1,8})\.([DO])([1-9][0-9]*)$")


@dataclass(frozen=True)
class MetricCode:
    """Structured form of a metric identifier such as ``S.AC.D8``."""

    pillar_code: str
    mechanism_code: str
    phase: Phase
    index: int

    def __str__(self) -> str:
        return f"{self.pillar_code}.{self.mechanism_code}.{self.phase.letter}{self.index}"

    @property
    def qualified_mechanism(self) -> str:
        """Pillar-qualified mechanism reference, e.g. ``S.AC``."""
        return f"{self.pillar_code}.{self.mechanism_code}"


def parse_metric_code(text: str) -> MetricCode:
    """Parse ``<PILLAR>.<MECH>.<D|O><index>`` into a MetricCode.

    Input is trimmed and uppercased first; re-serializing the result
    reproduces that normalized form exactly (so e.g. zero-padded indices
    are rejected rather than silently rewritten).
    """
    if not isinstance(text, str):
        raise MalformedCode(f"metric code must be a string, got {type(text).__name__}")
    normalized = text.strip().upper()
    m = _CODE_RE.match(normalized)
    if m is None:
        raise MalformedCode(f"malformed metric code {text!r}")
    pillar, mech, letter, index = m.groups()
    return MetricCode(pillar, mech, Phase.from_letter(letter), int(index))


@dataclass(frozen=True)
class MandatoryCaps:
    """Caps enforced when a mandatory metric is not satisfied.

    A cap of 100 is equivalent to the metric not being mandatory at that
    level.  ``satisfied_when_at_least`` is the normalized score at which
    the metric counts as satisfied (default: full marks).
    """

    mechanism_cap: float
    pillar_cap: float
    satisfied_when_at_least: float = 100.0


@dataclass(frozen=True)
class Metric:
    """One assessable property of the system under evaluation."""

    code: MetricCode
    title: str
    kind: MetricKind
    description: str = ""
    transform: TransformForm | None = None
    mandatory: MandatoryCaps | None = None
    references: tuple[str, ...] = ()


@dataclass(frozen=True)
class Answer:
    """One option of a cluster question: a full score configuration."""

    label: str
    configuration: Mapping[MetricCode, float]


@dataclass(frozen=True)
class ClusterQuestion:
    """Per-phase multiple-choice question whose answers configure every
    metric of the owning mechanism in that phase."""

    phase: Phase
    prompt: str
    answers: tuple[Answer, ...]


@dataclass(frozen=True)
class Mechanism:
    code: str
    name: str
    metrics: tuple[Metric, ...]
    metric_weights: Mapping[MetricCode, float] = field(default_factory=dict)
    cluster_questions: tuple[ClusterQuestion, ...] = ()

    def phase_metrics(self, phase: Phase) -> tuple[Metric, ...]:
        return tuple(m for m in self.metrics if m.code.phase is phase)

    def question_for(self, phase: Phase) -> ClusterQuestion | None:
        for q in self.cluster_questions:
            if q.phase is phase:
                return q
        return None


@dataclass(frozen=True)
class Pillar:
    code: str
    name: str
    mechanisms: tuple[Mechanism, ...]
    mechanism_weights: Mapping[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class StandardsMapping:
    """Standard/regulation whose declared compliance auto-scores metrics."""

    standard_id: str
    display_name: str
    satisfied_metrics: frozenset[MetricCode]


@dataclass
class FrameworkTemplate:
    """The full immutable catalog: pillars -> mechanisms -> metrics."""

    id: str
    version: str
    pillars: tuple[Pillar, ...]
    standards: tuple[StandardsMapping, ...] = ()

    def __post_init__(self) -> None:
        # Lookup indexes; with invalid (duplicate) templates later entries
        # win, which is fine because validation walks the tree, not these.
        self._metrics: dict[MetricCode, Metric] = {}
        self._mechanisms: dict[str, tuple[Pillar, Mechanism]] = {}
        self._pillars: dict[str, Pillar] = {}
        for pillar in self.pillars:
            self._pillars[pillar.code] = pillar
            for mech in pillar.mechanisms:
                self._mechanisms[f"{pillar.code}.{mech.code}"] = (pillar, mech)
                for metric in mech.metrics:
                    self._metrics[metric.code] = metric
        self._standards = {s.standard_id: s for s in self.standards}

    def iter_metrics(self) -> Iterator[tuple[Pillar, Mechanism, Metric]]:
        for pillar in self.pillars:
            for mech in pillar.mechanisms:
                for metric in mech.metrics:
                    yield pillar, mech, metric

    def metric(self, code: MetricCode) -> Metric | None:
        return self._metrics.get(code)

    def mechanism(self, qualified_code: str) -> tuple[Pillar, Mechanism] | None:
        """Resolve a pillar-qualified mechanism reference like ``S.AC``."""
        return self._mechanisms.get(qualified_code)

    def pillar(self, code: str) -> Pillar:
        try:
            return self._pillars[code]
        except KeyError:
            raise UnknownPillar(f"no pillar {code!r} in template {self.id!r}") from None

    def standard(self, standard_id: str) -> StandardsMapping | None:
        return self._standards.get(standard_id)


# ---------------------------------------------------------------------------
# Effective weights
# ---------------------------------------------------------------------------

def effective_metric_weights(
    mech: Mechanism,
    phase: Phase,
    included: Iterable[MetricCode] | None = None,
) -> dict[MetricCode, float]:
    """Normalized weights over a mechanism's metrics of one phase.

    Weights missing from the template default to 1, so an empty weight map
    yields the uniform 1/n split.  When ``included`` restricts the metric
    set (exclusions, partially scored drafts) the remaining weights are
    rescaled proportionally to sum to 1.
    """
    metrics = mech.phase_metrics(phase)
    if included is not None:
        keep = set(included)
        metrics = tuple(m for m in metrics if m.code in keep)
    if not metrics:
        raise NoScorableChildren(
            f"mechanism {mech.code} has no scorable metrics for phase {phase.value}"
        )
    raw = {m.code: float(mech.metric_weights.get(m.code, 1.0)) for m in metrics}
    total = sum(raw.values())
    if total <= 0.0:
        raise NoScorableChildren(
            f"mechanism {mech.code} has zero total weight for phase {phase.value}"
        )
    return {code: w / total for code, w in raw.items()}


def effective_mechanism_weights(
    pillar: Pillar,
    included: Iterable[str] | None = None,
) -> dict[str, float]:
    """Normalized weights over a pillar's mechanisms (local codes).

    ``included`` names the mechanisms that take part in the aggregation
    (exclusions and phase participation already applied by the caller).
    """
    mechs = pillar.mechanisms
    if included is not None:
        keep = set(included)
        mechs = tuple(m for m in mechs if m.code in keep)
    if not mechs:
        raise NoScorableChildren(f"pillar {pillar.code} has no included mechanisms")
    raw = {m.code: float(pillar.mechanism_weights.get(m.code, 1.0)) for m in mechs}
    total = sum(raw.values())
    if total <= 0.0:
        raise NoScorableChildren(f"pillar {pillar.code} has zero total mechanism weight")
    return {code: w / total for code, w in raw.items()}


# ---------------------------------------------------------------------------
# Template parsing (JSON document -> data model)
# ---------------------------------------------------------------------------

def _require(data: Mapping, key: str, where: str):
    if key not in data:
        raise TemplateFormatError(f"{where}: missing required key {key!r}")
    return data[key]


def _parse_number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TemplateFormatError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _parse_metric(data: Mapping, where: str) -> Metric:
    code = parse_metric_code(_require(data, "code", where))
    kind_raw = _require(data, "kind", where)
    try:
        kind = MetricKind(kind_raw)
    except ValueError:
        raise TemplateFormatError(f"{where}: unknown metric kind {kind_raw!r}") from None
    transform = None
    if data.get("transform") is not None:
        try:
            transform = TransformForm(data["transform"])
        except ValueError:
            raise TemplateFormatError(
                f"{where}: unknown transform {data['transform']!r}"
            ) from None
    mandatory = None
    if data.get("mandatory") is not None:
        mraw = data["mandatory"]
        mandatory = MandatoryCaps(
            mechanism_cap=_parse_number(_require(mraw, "mechanism_cap", where), where),
            pillar_cap=_parse_number(_require(mraw, "pillar_cap", where), where),
            satisfied_when_at_least=_parse_number(
                mraw.get("satisfied_when_at_least", 100.0), where
            ),
        )
    return Metric(
        code=code,
        title=_require(data, "title", where),
        kind=kind,
        description=data.get("description", ""),
        transform=transform,
        mandatory=mandatory,
        references=tuple(data.get("references", ())),
    )


def _parse_question(data: Mapping, where: str) -> ClusterQuestion:
    try:
        phase = Phase(_require(data, "phase", where))
    except ValueError:
        raise TemplateFormatError(f"{where}: unknown phase {data.get('phase')!r}") from None
    answers = []
    for i, araw in enumerate(_require(data, "answers", where)):
        aw = f"{where}.answers[{i}]"
        config = {
            parse_metric_code(code_text): _parse_number(v, aw)
            for code_text, v in _require(araw, "configuration", aw).items()
        }
        answers.append(Answer(label=_require(araw, "label", aw), configuration=config))
    return ClusterQuestion(phase=phase, prompt=_require(data, "prompt", where), answers=tuple(answers))


def _parse_mechanism(data: Mapping, where: str) -> Mechanism:
    metrics = tuple(
        _parse_metric(mraw, f"{where}.metrics[{i}]")
        for i, mraw in enumerate(_require(data, "metrics", where))
    )
    weights = {
        parse_metric_code(code_text): _parse_number(v, f"{where}.metric_weights")
        for code_text, v in data.get("metric_weights", {}).items()
    }
    questions = tuple(
        _parse_question(qraw, f"{where}.cluster_questions[{i}]")
        for i, qraw in enumerate(data.get("cluster_questions", ()))
    )
    return Mechanism(
        code=_require(data, "code", where),
        name=_require(data, "name", where),
        metrics=metrics,
        metric_weights=weights,
        cluster_questions=questions,
    )


def parse_template(data: Mapping) -> FrameworkTemplate:
    """Build a FrameworkTemplate from a parsed JSON document.

    Raises TemplateFormatError when the document cannot be represented at
    all (missing keys, malformed codes).  Semantic problems -- duplicates,
    coverage gaps, bad weights -- survive parsing and are reported by
    :func:`validate_template` instead.
    """
    if not isinstance(data, Mapping):
        raise TemplateFormatError("template document must be a JSON object")
    pillars = []
    for i, praw in enumerate(_require(data, "pillars", "template")):
        where = f"pillars[{i}]"
        mechanisms = tuple(
            _parse_mechanism(mraw, f"{where}.mechanisms[{j}]")
            for j, mraw in enumerate(_require(praw, "mechanisms", where))
        )
        weights = {
            str(code): _parse_number(v, f"{where}.mechanism_weights")
            for code, v in praw.get("mechanism_weights", {}).items()
        }
        pillars.append(
            Pillar(
                code=_require(praw, "code", where),
                name=_require(praw, "name", where),
                mechanisms=mechanisms,
                mechanism_weights=weights,
            )
        )
    standards = []
    for i, sraw in enumerate(data.get("standards", ())):
        where = f"standards[{i}]"
        standards.append(
            StandardsMapping(
                standard_id=_require(sraw, "standard_id", where),
                display_name=_require(sraw, "display_name", where),
                satisfied_metrics=frozenset(
                    parse_metric_code(c) for c in _require(sraw, "satisfied_metrics", where)
                ),
            )
        )
    return FrameworkTemplate(
        id=_require(data, "id", "template"),
        version=_require(data, "version", "template"),
        pillars=tuple(pillars),
        standards=tuple(standards),
    )


def load_template(path: str | Path) -> FrameworkTemplate:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise TemplateFormatError(f"{path}: not valid JSON ({exc})") from exc
    return parse_template(data)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"^[A-Z]{1,8}$")


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" | "warning"
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity}: {self.path}: {self.message}"


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)

    @property
    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "error"]

    @property
    def warnings(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def error(self, path: str, message: str) -> None:
        self.findings.append(Finding("error", path, message))

    def warning(self, path: str, message: str) -> None:
        self.findings.append(Finding("warning", path, message))


def _validate_value_for_kind(kind: MetricKind, value: float) -> str | None:
    if not 0.0 <= value <= 100.0:
        return f"value {value} outside [0, 100]"
    if kind is MetricKind.BOOLEAN and value not in (0.0, 100.0):
        return f"boolean metric requires 0 or 100, got {value}"
    return None


def validate_template(t: FrameworkTemplate) -> ValidationReport:
    """Check every structural invariant a template must satisfy.

    Returns a report of error/warning findings; an empty report means the
    template is safe to score against.
    """
    report = ValidationReport()
    if not t.id:
        report.error("id", "template id must not be empty")
    if not t.version:
        report.error("version", "template version must not be empty")

    seen_pillars: set[str] = set()
    seen_codes: dict[MetricCode, str] = {}
    for pillar in t.pillars:
        ppath = f"pillars[{pillar.code}]"
        if not _TOKEN_RE.match(pillar.code):
            report.error(ppath, f"pillar code {pillar.code!r} is not 1-8 uppercase letters")
        if pillar.code in seen_pillars:
            report.error(ppath, f"duplicate pillar code {pillar.code!r}")
        seen_pillars.add(pillar.code)

        seen_mechs: set[str] = set()
        for mech in pillar.mechanisms:
            mpath = f"{ppath}.mechanisms[{mech.code}]"
            if not _TOKEN_RE.match(mech.code):
                report.error(mpath, f"mechanism code {mech.code!r} is not 1-8 uppercase letters")
            if mech.code in seen_mechs:
                report.error(mpath, f"duplicate mechanism code {mech.code!r} in pillar {pillar.code}")
            seen_mechs.add(mech.code)
            _validate_mechanism(report, pillar, mech, mpath, seen_codes)

        for code, weight in pillar.mechanism_weights.items():
            wpath = f"{ppath}.mechanism_weights[{code}]"
            if code not in seen_mechs:
                report.error(wpath, f"weight references unknown mechanism {code!r}")
            if weight < 0:
                report.error(wpath, f"negative weight {weight}")
        included = [m.code for m in pillar.mechanisms]
        if included and sum(float(pillar.mechanism_weights.get(c, 1.0)) for c in included) <= 0:
            report.error(ppath, "no positive mechanism weight in pillar")

    for i, std in enumerate(t.standards):
        spath = f"standards[{std.standard_id or i}]"
        if not std.standard_id:
            report.error(spath, "standard_id must not be empty")
        if not std.satisfied_metrics:
            report.error(spath, "satisfied_metrics must not be empty")
        for code in sorted(std.satisfied_metrics, key=str):
            if code not in seen_codes:
                report.error(spath, f"references unknown metric code {code}")
    std_ids = [s.standard_id for s in t.standards]
    for dup in {s for s in std_ids if std_ids.count(s) > 1}:
        report.error(f"standards[{dup}]", f"duplicate standard id {dup!r}")

    return report


def _validate_mechanism(
    report: ValidationReport,
    pillar: Pillar,
    mech: Mechanism,
    mpath: str,
    seen_codes: dict[MetricCode, str],
) -> None:
    local_codes: set[MetricCode] = set()
    for metric in mech.metrics:
        code = metric.code
        cpath = f"{mpath}.metrics[{code}]"
        if code in seen_codes:
            report.error(cpath, f"duplicate metric code {code} (also in {seen_codes[code]})")
        else:
            seen_codes[code] = mpath
        if code in local_codes:
            report.error(cpath, f"duplicate metric code {code} within mechanism")
        local_codes.add(code)
        if code.pillar_code != pillar.code or code.mechanism_code != mech.code:
            report.error(
                cpath,
                f"metric code {code} does not match its container {pillar.code}.{mech.code}",
            )
        if metric.mandatory is not None:
            caps = metric.mandatory
            for name, value in (
                ("mechanism_cap", caps.mechanism_cap),
                ("pillar_cap", caps.pillar_cap),
                ("satisfied_when_at_least", caps.satisfied_when_at_least),
            ):
                if not 0.0 <= value <= 100.0:
                    report.error(cpath, f"mandatory {name} {value} outside [0, 100]")
        if metric.kind is MetricKind.BOOLEAN and metric.transform is TransformForm.COMPLEMENT:
            report.warning(cpath, "complement transform has no effect on a boolean metric")

    for code, weight in mech.metric_weights.items():
        wpath = f"{mpath}.metric_weights[{code}]"
        if code not in local_codes:
            report.error(wpath, f"weight references unknown metric {code}")
        if weight < 0:
            report.error(wpath, f"negative weight {weight}")
    if mech.metric_weights and len(mech.metric_weights) < len(mech.metrics):
        report.warning(mpath, "metric_weights partially specified; missing metrics default to weight 1")
    for phase in Phase:
        phase_codes = [m.code for m in mech.phase_metrics(phase)]
        if phase_codes:
            total = sum(float(mech.metric_weights.get(c, 1.0)) for c in phase_codes)
            if total <= 0:
                report.error(mpath, f"no positive metric weight for phase {phase.value}")

    by_phase: dict[Phase, int] = {}
    for i, question in enumerate(mech.cluster_questions):
        qpath = f"{mpath}.cluster_questions[{i}]"
        by_phase[question.phase] = by_phase.get(question.phase, 0) + 1
        if by_phase[question.phase] > 1:
            report.error(qpath, f"more than one cluster question for phase {question.phase.value}")
        if not question.answers:
            report.error(qpath, "cluster question has no answers")
        expected = {m.code for m in mech.phase_metrics(question.phase)}
        kind_by_code = {m.code: m.kind for m in mech.metrics}
        for answer in question.answers:
            apath = f"{qpath}.answers[{answer.label}]"
            got = set(answer.configuration)
            missing = expected - got
            extra = got - expected
            if missing:
                report.error(
                    apath,
                    "answer configuration incomplete: missing "
                    + ", ".join(sorted(str(c) for c in missing)),
                )
            if extra:
                report.error(
                    apath,
                    "answer configuration covers metrics outside the mechanism/phase: "
                    + ", ".join(sorted(str(c) for c in extra)),
                )
            for code, value in answer.configuration.items():
                if code in kind_by_code:
                    problem = _validate_value_for_kind(kind_by_code[code], value)
                    if problem:
                        report.error(f"{apath}[{code}]", problem)
