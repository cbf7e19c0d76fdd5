#!/usr/bin/env python3
"""Score the bundled demo assessment and print the full summary report."""
from __future__ import annotations

from pathlib import Path

from distaf.framework import load_template
from distaf.reports import export_assessment
from distaf.scoring import assessment_scorecard
from distaf.store import load_assessment

ROOT = Path(__file__).resolve().parent.parent


def main() -> None:
    template = load_template(ROOT / "templates" / "distaf-sample.json")
    state = load_assessment(ROOT / "fixtures" / "turing-demo.json")
    card = assessment_scorecard(template, state)
    print(export_assessment(template, state, card, "summary"))


if __name__ == "__main__":
    main()
