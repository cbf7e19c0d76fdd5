#!/usr/bin/env python3
"""Draw polar fingerprint charts for an assessment (requires matplotlib).

Usage:
    python3 scripts/render_fingerprint.py [template.json assessment.json] [out.png]

Defaults to the bundled sample template and demo assessment, writing
fingerprint.png with one radar per phase at the pillar level.
"""
from __future__ import annotations

import math
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from distaf.framework import Phase, load_template
from distaf.reports import FingerprintLevel, fingerprint_series
from distaf.scoring import assessment_scorecard
from distaf.store import load_assessment

ROOT = Path(__file__).resolve().parent.parent


def main(argv: list[str]) -> None:
    if len(argv) >= 2:
        template_path, assessment_path = argv[0], argv[1]
    else:
        template_path = ROOT / "templates" / "distaf-sample.json"
        assessment_path = ROOT / "fixtures" / "turing-demo.json"
    out_path = Path(argv[2]) if len(argv) >= 3 else Path("fingerprint.png")

    template = load_template(template_path)
    state = load_assessment(assessment_path)
    card = assessment_scorecard(template, state)

    fig, axes = plt.subplots(
        1, 2, figsize=(11, 5.5), subplot_kw={"projection": "polar"}
    )
    for ax, phase in zip(axes, Phase):
        series = fingerprint_series(template, card, FingerprintLevel.PILLARS, phase)
        labels = [a.label for a in series.axes]
        values = [a.value if a.value is not None else 0.0 for a in series.axes]
        angles = [i * 2 * math.pi / len(labels) for i in range(len(labels))]
        ax.plot(angles + angles[:1], values + values[:1], color="#2463a8")
        ax.fill(angles + angles[:1], values + values[:1], color="#2463a8", alpha=0.25)
        ax.set_xticks(angles)
        ax.set_xticklabels(labels, fontsize=8)
        ax.set_ylim(0, 100)
        ax.set_title(f"{phase.value.capitalize()} phase", pad=18)
    fig.suptitle(f"Trustworthiness fingerprint: {state.id}")
    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    print(f"wrote {out_path}")


if __name__ == "__main__":
    main(sys.argv[1:])
