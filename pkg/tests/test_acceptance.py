"""Acceptance suite: one test per release criterion, at its stated tolerance.

Run with ``pytest tests/test_acceptance.py -v`` for one pass/fail line per
criterion.  Randomized suites are fully seeded and deterministic.
"""
from __future__ import annotations

import functools
import random
import time
from dataclasses import replace

import pytest

from distaf.access import Role, authz_check
from distaf.framework import (
    FrameworkTemplate,
    MandatoryCaps,
    Mechanism,
    Metric,
    MetricCode,
    MetricKind,
    Phase,
    Pillar,
    parse_metric_code,
)
from distaf.reports import ColorBand, color_band
from distaf.scoring import (
    MetricValue,
    Origin,
    ScoreNode,
    apply_cluster_answer,
    apply_standard_compliance,
    assessment_scorecard,
    mechanism_score,
    normalize_metric_value,
    pillar_score,
)
from distaf.store import AssessmentStore, Status, TemplateRepository

from .oracle import assert_matches_engine
from .randgen import random_assessment, random_framework
from .test_api import EXPECTED_MATRIX, _create_assessment, _login, _score_everything

pytestmark = pytest.mark.acceptance


def _passed(label: str) -> None:
    print(f"[PASS] {label}")


# ---------------------------------------------------------------------------
# Criterion 1: cap semantics, tolerance 0, runtime < 1 s
# ---------------------------------------------------------------------------

def _res_cap_template() -> FrameworkTemplate:
    """RES pillar where the recovery mechanism carries the 40/80-capped
    mandatory metric and a weight split that pushes the pillar above 80."""
    o6 = MetricCode("RES", "IDR", Phase.OPERATIONAL, 6)
    o1 = MetricCode("RES", "IDR", Phase.OPERATIONAL, 1)
    rs1 = MetricCode("RES", "RS", Phase.OPERATIONAL, 1)
    idr = Mechanism(
        code="IDR", name="Identity Recovery",
        metrics=(
            Metric(code=o1, title="fallback channel", kind=MetricKind.PERCENTAGE),
            Metric(code=o6, title="automated password recovery", kind=MetricKind.BOOLEAN,
                   mandatory=MandatoryCaps(mechanism_cap=40, pillar_cap=80)),
        ),
    )
    rs = Mechanism(
        code="RS", name="Recovery Services",
        metrics=(Metric(code=rs1, title="contingency", kind=MetricKind.PERCENTAGE),),
    )
    pillar = Pillar(code="RES", name="Resiliency", mechanisms=(rs, idr),
                    mechanism_weights={"RS": 9, "IDR": 1})
    return FrameworkTemplate(id="caps", version="1", pillars=(pillar,))


def test_cap_semantics_mechanism_40_pillar_80():
    started = time.perf_counter()
    t = _res_cap_template()
    o1 = parse_metric_code("RES.IDR.O1")
    o6 = parse_metric_code("RES.IDR.O6")
    rs1 = parse_metric_code("RES.RS.O1")
    values = {
        o1: MetricValue.scored(o1, 100.0, Origin.DIRECT),
        o6: MetricValue.scored(o6, 0.0, Origin.DIRECT, raw=False),
        rs1: MetricValue.scored(rs1, 100.0, Origin.DIRECT),
    }
    pillar = t.pillar("RES")
    _, idr = t.mechanism("RES.IDR")[0], t.mechanism("RES.IDR")[1]

    mech_node = mechanism_score("RES", idr, Phase.OPERATIONAL, values)
    assert mech_node.raw_score > 40.0
    assert mech_node.capped_score == 40.0  # tolerance 0

    rs_node = mechanism_score("RES", t.mechanism("RES.RS")[1], Phase.OPERATIONAL, values)
    pillar_node = pillar_score(pillar, Phase.OPERATIONAL, {"RS": rs_node, "IDR": mech_node})
    assert pillar_node.raw_score > 80.0
    assert pillar_node.capped_score == 80.0  # tolerance 0

    # same formula on synthetic nodes: three mechanisms at 90, one violated
    uniform = Pillar(code="RES", name="Resiliency",
                     mechanisms=(t.pillar("RES").mechanisms + (Mechanism(
                         code="MX", name="x",
                         metrics=(Metric(code=MetricCode("RES", "MX", Phase.OPERATIONAL, 1),
                                         title="x", kind=MetricKind.PERCENTAGE),)),)))
    nodes = {
        code: ScoreNode(subject=f"RES.{code}", phase=Phase.OPERATIONAL,
                        raw_score=90.0, capped_score=90.0, applied_cap=None,
                        mandatory_violations=frozenset({o6} if code == "IDR" else ()),
                        excluded=False, completeness=1.0)
        for code in ("RS", "IDR", "MX")
    }
    synthetic = pillar_score(uniform, Phase.OPERATIONAL, nodes)
    assert synthetic.capped_score == 80.0

    elapsed = time.perf_counter() - started
    assert elapsed < 1.0, f"cap semantics took {elapsed:.3f}s"
    _passed("cap semantics: mechanism capped at exactly 40, pillar at exactly 80")


# ---------------------------------------------------------------------------
# Criterion 2: cluster propagation, tolerance 0
# ---------------------------------------------------------------------------

def test_cluster_propagation_exact_configurations(sample_template):
    _, mech = sample_template.mechanism("S.AC")
    d8, d9 = parse_metric_code("S.AC.D8"), parse_metric_code("S.AC.D9")
    expected = [(0.0, 0.0), (0.0, 25.0), (0.0, 75.0), (100.0, 100.0)]
    for index, (v8, v9) in enumerate(expected):
        values = apply_cluster_answer(mech, Phase.DESIGN, index)
        assert set(values) == {d8, d9}
        assert values[d8].normalized == v8  # tolerance 0
        assert values[d9].normalized == v9
    _passed("cluster propagation: answers a-d produce (0,0) (0,25) (0,75) (100,100)")


# ---------------------------------------------------------------------------
# Criterion 3: sanitization, tolerance 0
# ---------------------------------------------------------------------------

def test_sanitization_frr_complement(sample_template):
    frr = sample_template.metric(parse_metric_code("S.SAA.O10"))
    for raw in (0, 5, 50, 100):
        assert normalize_metric_value(frr, raw) == 100.0 - raw  # tolerance 0
    _passed("sanitization: normalized FRR score equals 100 - raw exactly")


# ---------------------------------------------------------------------------
# Criterion 4: color table boundaries and dominance
# ---------------------------------------------------------------------------

def _band_node(score, violations=frozenset(), excluded=False):
    return ScoreNode(subject="X", phase=Phase.DESIGN, raw_score=score,
                     capped_score=score, applied_cap=None,
                     mandatory_violations=violations, excluded=excluded,
                     completeness=1.0)


def test_color_table():
    assert color_band(_band_node(33.0)) is ColorBand.TOMATO_RED
    assert color_band(_band_node(33.01)) is ColorBand.LEMON_CHIFFON
    assert color_band(_band_node(66.0)) is ColorBand.LEMON_CHIFFON
    assert color_band(_band_node(66.01)) is ColorBand.LIGHT_GREEN
    violated = frozenset({parse_metric_code("RES.IDR.O6")})
    assert color_band(_band_node(90.0, violations=violated)) is ColorBand.DEEP_PINK
    assert color_band(_band_node(90.0, violations=violated, excluded=True)) \
        is ColorBand.TRANSPARENT
    _passed("color table: 33/33.01/66/66.01 -> Red/Yellow/Yellow/Green; "
            "violation -> DeepPink; exclusion -> Transparent")


# ---------------------------------------------------------------------------
# Criterion 5: standards auto-scoring
# ---------------------------------------------------------------------------

def test_standards_auto_scoring_exactly_seven(sample_template, store):
    values = apply_standard_compliance(sample_template, "CIS-Controls")
    declared = sample_template.standard("CIS-Controls").satisfied_metrics
    assert len(values) == 7
    assert set(values) == set(declared)
    assert all(v.normalized == 100.0 for v in values.values())

    state = store.create_assessment("distaf-sample", "std")
    state = store.declare_standard(state.id, state.revision, "CIS-Controls")
    assert set(state.metric_values) == set(declared)  # and no others
    _passed("standards auto-scoring: CIS-Controls scores exactly 7 metrics to 100")


# ---------------------------------------------------------------------------
# Criterion 6: oracle equivalence, 1000 random frameworks, < 60 s
# ---------------------------------------------------------------------------

def test_oracle_equivalence_1000_random_frameworks():
    started = time.perf_counter()
    rng = random.Random(0xD15A)
    for case in range(1000):
        t = random_framework(rng)
        a = random_assessment(
            rng, t,
            score_probability=rng.choice([1.0, 1.0, 0.8]),
            exclusion_probability=rng.choice([0.0, 0.15, 0.4]),
        )
        card = assessment_scorecard(t, a)
        scored = {c: v for c, v in a.metric_values.items() if v.is_scored}
        assert_matches_engine(t, card, scored, a.excluded_mechanisms, tol=1e-9)
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0, f"oracle equivalence took {elapsed:.1f}s"
    _passed(f"oracle equivalence: 1000 random frameworks within 1e-9 ({elapsed:.1f}s)")


# ---------------------------------------------------------------------------
# Criterion 7: property suites, >= 500 cases each, < 120 s total
# ---------------------------------------------------------------------------

_SUITE_CASES = 500
_suite_clock = {"total": 0.0}


def _timed(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        started = time.perf_counter()
        fn(*args, **kwargs)
        _suite_clock["total"] += time.perf_counter() - started

    return wrapper


def _all_nodes(card):
    for phase in Phase:
        scores = card.phase(phase)
        yield from scores.pillars.values()
        yield from scores.mechanisms.values()


@_timed
def test_property_range():
    rng = random.Random(1001)
    for _ in range(_SUITE_CASES):
        t = random_framework(rng, max_pillars=3, max_mechanisms=4, max_metrics=6)
        a = random_assessment(rng, t, score_probability=rng.choice([1.0, 0.6]))
        for node in _all_nodes(assessment_scorecard(t, a)):
            if node.raw_score is not None:
                assert 0.0 <= node.raw_score <= 100.0
                assert 0.0 <= node.capped_score <= 100.0
    _passed("property: every raw/capped score within [0, 100] (500 cases)")


@_timed
def test_property_cap_dominance():
    rng = random.Random(1002)
    for _ in range(_SUITE_CASES):
        t = random_framework(rng, max_pillars=3, max_mechanisms=4, max_metrics=6)
        a = random_assessment(rng, t, score_probability=1.0)
        card = assessment_scorecard(t, a)
        for node in _all_nodes(card):
            if node.raw_score is None:
                continue
            assert node.capped_score <= node.raw_score
            for code in node.mandatory_violations:
                caps = t.metric(code).mandatory
                bound = caps.mechanism_cap if "." in node.subject else caps.pillar_cap
                assert node.capped_score <= bound
    _passed("property: capped <= raw and capped <= every violated cap (500 cases)")


@_timed
def test_property_monotonicity():
    rng = random.Random(1003)
    for _ in range(_SUITE_CASES):
        t = random_framework(rng, max_pillars=2, max_mechanisms=3, max_metrics=5)
        a = random_assessment(rng, t, score_probability=1.0)
        before = assessment_scorecard(t, a)
        candidates = [
            (code, value) for code, value in a.metric_values.items()
            if value.normalized < 100.0
        ]
        if not candidates:
            continue
        code, value = rng.choice(candidates)
        metric = t.metric(code)
        if metric.kind is MetricKind.BOOLEAN:
            bumped = 100.0
        else:
            bumped = float(rng.randint(int(value.normalized) + 1, 100))
        mutated = replace(a, metric_values=dict(a.metric_values))
        mutated.metric_values[code] = MetricValue.scored(code, bumped, Origin.DIRECT)
        after = assessment_scorecard(t, mutated)
        for phase in Phase:
            for kind in ("pillars", "mechanisms"):
                for subject, node_b in getattr(before.phase(phase), kind).items():
                    node_a = getattr(after.phase(phase), kind)[subject]
                    if node_b.capped_score is not None and node_a.capped_score is not None:
                        assert node_a.capped_score >= node_b.capped_score, (
                            f"{subject}/{phase.value}: {node_b.capped_score} -> "
                            f"{node_a.capped_score} after raising {code}"
                        )
    _passed("property: raising one metric never lowers any capped score (500 cases)")


@_timed
def test_property_phase_isolation():
    rng = random.Random(1004)
    checked = 0
    while checked < _SUITE_CASES:
        t = random_framework(rng, max_pillars=3, max_mechanisms=3, max_metrics=6)
        a = random_assessment(rng, t, score_probability=0.9)
        design_codes = [
            c for c in a.metric_values if c.phase is Phase.DESIGN
        ]
        if not design_codes:
            continue
        before = assessment_scorecard(t, a)
        code = rng.choice(design_codes)
        mutated = replace(a, metric_values=dict(a.metric_values))
        mutated.metric_values[code] = MetricValue.scored(
            code, float(rng.choice([0, 25, 50, 75, 100])), Origin.DIRECT
        )
        after = assessment_scorecard(t, mutated)
        assert after.operational == before.operational
        checked += 1
    _passed("property: design edits never move operational nodes (500 cases)")


@_timed
def test_property_exclusion_involution(tmp_path_factory):
    rng = random.Random(1005)
    base = tmp_path_factory.mktemp("involution")
    for case in range(_SUITE_CASES):
        t = random_framework(rng, max_pillars=2, max_mechanisms=3, max_metrics=4)
        repo = TemplateRepository(templates=(t,))
        store = AssessmentStore(base / str(case), repo)
        a = random_assessment(rng, t, score_probability=1.0, exclusion_probability=0.0)
        store.import_assessment(a)
        baseline = store.scorecard(a.id)
        pillar = rng.choice(t.pillars)
        mech = rng.choice(pillar.mechanisms)
        qcode = f"{pillar.code}.{mech.code}"
        rev = store.get(a.id).revision
        rev = store.set_mechanism_exclusion(a.id, rev, qcode, True).revision
        store.set_mechanism_exclusion(a.id, rev, qcode, False)
        assert store.scorecard(a.id) == baseline
    _passed("property: exclude then re-include restores the scorecard (500 cases)")


@_timed
def test_property_persistence_round_trip(tmp_path_factory):
    rng = random.Random(1006)
    base = tmp_path_factory.mktemp("roundtrip")
    for case in range(_SUITE_CASES):
        t = random_framework(rng, max_pillars=2, max_mechanisms=3, max_metrics=5)
        repo = TemplateRepository(templates=(t,))
        data_dir = base / str(case)
        store = AssessmentStore(data_dir, repo)
        a = random_assessment(rng, t, score_probability=rng.choice([1.0, 0.5]))
        store.import_assessment(a)
        card = store.scorecard(a.id)
        reloaded = AssessmentStore(data_dir, repo)
        assert reloaded.get(a.id) == store.get(a.id)
        assert reloaded.scorecard(a.id) == card
    _passed("property: store -> reload -> scorecard is identical (500 cases)")


@_timed
def test_property_derived_deep_equality(tmp_path_factory):
    rng = random.Random(1007)
    base = tmp_path_factory.mktemp("derived")
    for case in range(_SUITE_CASES):
        t = random_framework(rng, max_pillars=2, max_mechanisms=3, max_metrics=5)
        repo = TemplateRepository(templates=(t,))
        store = AssessmentStore(base / str(case), repo)
        a = random_assessment(rng, t, score_probability=rng.choice([1.0, 0.7]))
        store.import_assessment(a)
        derived = store.create_assessment(t.id, "next", from_id=a.id)
        assert derived.predecessor == a.id
        assert set(derived.metric_values) == set(a.metric_values)
        for code, value in derived.metric_values.items():
            original = a.metric_values[code]
            assert value.normalized == original.normalized
            assert value.raw == original.raw
            assert value.origin is Origin.INHERITED
        assert derived.chosen_answers == a.chosen_answers
        assert derived.declared_standards == a.declared_standards
        assert derived.excluded_mechanisms == a.excluded_mechanisms
        card_a, card_b = store.scorecard(a.id), store.scorecard(derived.id)
        for phase in Phase:
            assert card_a.phase(phase).pillars == card_b.phase(phase).pillars
            assert card_a.phase(phase).mechanisms == card_b.phase(phase).mechanisms
    _passed("property: derived assessments equal their predecessor (500 cases)")


def test_property_suites_total_runtime():
    total = _suite_clock["total"]
    assert total < 120.0, f"property suites took {total:.1f}s in total"
    _passed(f"property suites total runtime {total:.1f}s < 120s")


# ---------------------------------------------------------------------------
# Criterion 8: authorization matrix and leak fuzz
# ---------------------------------------------------------------------------

def test_authorization_matrix_full():
    actions = ["manage_users", "create_assessment", "edit_assessment",
               "read_assessment", "compare", "export"]
    cells = 0
    for role in Role:
        for action in actions:
            for status in Status:
                allowed_statuses = EXPECTED_MATRIX[(role, action)]
                expected = allowed_statuses == "*" or status in allowed_statuses
                decision = authz_check(role, action, status)
                assert decision.allowed is expected, (role, action, status)
                cells += 1
    assert cells == 54
    _passed("authorization matrix: all 3 roles x 6 actions x 3 statuses as specified")


def test_no_private_content_reaches_externals(client):
    rng = random.Random(77)
    assessor = _login(client, "alice")
    external = _login(client, "eve")
    sentinel = "SENTINEL-7f3a"

    draft = _create_assessment(client, assessor, sentinel + " draft")
    _score_everything(client, assessor, draft["id"])
    private = _create_assessment(client, assessor, sentinel + " private")
    _score_everything(client, assessor, private["id"])
    doc = client.get(f"/assessments/{private['id']}", headers=assessor).json()
    client.post(
        f"/assessments/{private['id']}/status",
        json={"revision": doc["revision"], "status": "private"},
        headers=assessor,
    )

    suffixes = ["", "/scorecard", "/fingerprint", "/export",
                "/export?format=dump", "/export?format=tabular",
                "/export?format=summary", "/fingerprint?level=pillars&phase=design",
                "/fingerprint?level=mechanisms&phase=operational&pillar=S"]
    for _ in range(150):
        target = rng.choice([draft["id"], private["id"]])
        response = client.get(
            f"/assessments/{target}{rng.choice(suffixes)}", headers=external
        )
        assert response.status_code in (400, 403, 404, 422)
        assert sentinel not in response.text
    assert sentinel not in client.get("/assessments", headers=external).text
    _passed("authorization: no draft/private content leaks to externals under fuzz")


# ---------------------------------------------------------------------------
# Criterion 9: lifecycle
# ---------------------------------------------------------------------------

def test_lifecycle_rules(store):
    created = store.create_assessment("distaf-sample", "lifecycle")
    assert created.status is Status.DRAFT  # draft by default

    rev = store.set_metric_value(created.id, created.revision, "S.AC.D8", True).revision
    with pytest.raises(Exception) as exc:
        store.transition_status(created.id, rev, Status.PUBLIC)
    from distaf.errors import IncompleteAssessment

    assert isinstance(exc.value, IncompleteAssessment)

    derived = store.create_assessment("distaf-sample", "copy", from_id=created.id)
    assert derived.metric_values.keys() == store.get(created.id).metric_values.keys()
    for code, value in derived.metric_values.items():
        assert value.normalized == store.get(created.id).metric_values[code].normalized
    _passed("lifecycle: draft default, incomplete publication blocked, "
            "derivation copies all scores")
