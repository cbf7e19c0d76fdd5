#!/usr/bin/env python3
"""Regenerate the frontend test fixtures from the server implementation.

Three files under frontend/tests/fixtures/:
  band_cases.json   score nodes with the band the report engine assigns,
                    so the browser's color mapping is checked byte-for-byte;
  editor_flow.json  HTTP payloads captured from a real editing session
                    (choose an answer, then override one metric);
  report_demo.json  template, scorecard and fingerprint documents for the
                    bundled demo assessment.
"""
from __future__ import annotations

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from distaf.access import Role, UserStore
from distaf.api import AppConfig, _template_doc, create_app
from distaf.framework import Phase, load_template, parse_metric_code
from distaf.reports import FingerprintLevel, color_band, fingerprint_series, fingerprint_to_doc
from distaf.scoring import (
    ScoreNode,
    assessment_scorecard,
    score_node_to_doc,
    scorecard_to_doc,
)
from distaf.store import load_assessment

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "frontend" / "tests" / "fixtures"


def band_cases() -> list[dict]:
    violation = frozenset({parse_metric_code("RES.IDR.O6")})
    cases = []
    for score in (0.0, 12.5, 33.0, 33.01, 50.0, 66.0, 66.01, 80.0, 99.9, 100.0):
        cases.append(ScoreNode("S", Phase.DESIGN, score, score, None,
                               frozenset(), False, 1.0))
    cases.append(ScoreNode("RES.IDR", Phase.OPERATIONAL, 50.0, 40.0, None,
                           violation, False, 1.0))
    cases.append(ScoreNode("RES", Phase.OPERATIONAL, 90.0, 80.0, None,
                           violation, False, 1.0))
    cases.append(ScoreNode("S.SC", Phase.DESIGN, None, None, None,
                           frozenset(), True, 1.0))
    cases.append(ScoreNode("S.SC", Phase.DESIGN, 90.0, 90.0, None,
                           violation, True, 1.0))  # exclusion dominates
    cases.append(ScoreNode("P", Phase.DESIGN, None, None, None,
                           frozenset(), False, 0.0))  # unscored
    return [
        {"node": score_node_to_doc(node), "band": color_band(node).value}
        for node in cases
    ]


def editor_flow() -> dict:
    with tempfile.TemporaryDirectory() as tmp:
        data_dir = Path(tmp)
        users = UserStore(data_dir / "users.json")
        admin, temp = users.bootstrap_admin("root")
        users.change_password("root", temp, "rootpw-1")
        _, temp = users.create_user(users.get("root"), "alice", Role.ASSESSOR)
        users.change_password("alice", temp, "alicepw-1")

        app = create_app(AppConfig(data_dir=data_dir, template_dir=ROOT / "templates"))
        with TestClient(app) as client:
            token = client.post(
                "/login", json={"username": "alice", "password": "alicepw-1"}
            ).json()["token"]
            auth = {"Authorization": f"Bearer {token}"}

            template = client.get("/templates/distaf-sample", headers=auth).json()
            created = client.post(
                "/assessments",
                json={"template_id": "distaf-sample", "description": "editor flow"},
                headers=auth,
            ).json()
            aid = created["id"]
            scorecard_initial = client.get(
                f"/assessments/{aid}/scorecard", headers=auth
            ).json()

            after_answer = client.post(
                f"/assessments/{aid}/answers",
                json={"revision": created["revision"], "mechanism": "S.AC",
                      "phase": "design", "answer_index": 3},
                headers=auth,
            ).json()
            scorecard_after_answer = client.get(
                f"/assessments/{aid}/scorecard", headers=auth
            ).json()

            after_override = client.patch(
                f"/assessments/{aid}/metrics",
                json={"revision": after_answer["revision"], "values": {"S.AC.D9": 75}},
                headers=auth,
            ).json()
            scorecard_after_override = client.get(
                f"/assessments/{aid}/scorecard", headers=auth
            ).json()

    return {
        "template": template,
        "created": created,
        "scorecard_initial": scorecard_initial,
        "after_answer": after_answer,
        "scorecard_after_answer": scorecard_after_answer,
        "after_override": after_override,
        "scorecard_after_override": scorecard_after_override,
    }


def report_demo() -> dict:
    template = load_template(ROOT / "templates" / "distaf-sample.json")
    state = load_assessment(ROOT / "fixtures" / "turing-demo.json")
    card = assessment_scorecard(template, state)
    return {
        "template": _template_doc(template),
        "scorecard": scorecard_to_doc(card),
        "fingerprints": {
            phase.value: fingerprint_to_doc(
                fingerprint_series(template, card, FingerprintLevel.PILLARS, phase)
            )
            for phase in Phase
        },
    }


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, payload in (
        ("band_cases.json", band_cases()),
        ("editor_flow.json", editor_flow()),
        ("report_demo.json", report_demo()),
    ):
        path = OUT / name
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
