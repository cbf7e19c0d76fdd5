#!/usr/bin/env python3
"""Regenerate fixtures/turing-demo.json: a complete public assessment of a
deliberately minimal identity-system testbed against the bundled template.

The demo exercises every scoring path: cluster answers, a declared
standard, direct edits, a mechanism exclusion, and one violated mandatory
metric (no automated password recovery), which caps and pink-flags the
resiliency pillar.
"""
from __future__ import annotations

import json
import tempfile
from datetime import datetime, timedelta, timezone
from pathlib import Path

from distaf.framework import Phase
from distaf.store import AssessmentStore, Status, TemplateRepository, state_to_doc

ROOT = Path(__file__).resolve().parent.parent

ANSWERS = [
    ("S.AC", Phase.DESIGN, 1),       # b) simple level of configurability
    ("S.AC", Phase.OPERATIONAL, 1),  # b) periodic manual reviews
    ("P.PIA", Phase.DESIGN, 2),      # c) assessment per recognised guidelines
]

DIRECT_VALUES = {
    # Security: solid design-time work, patchy operations
    "S.SAA.D1": True, "S.SAA.D2": True, "S.SAA.D5": False,
    "S.SAA.D6": True, "S.SAA.D7": False, "S.SAA.O10": 12,
    "S.AAA.D6": True, "S.AAA.D7": False,
    "S.PEP.D1": True,
    "S.RC.D1": True, "S.RC.D3": True, "S.RC.O8": False, "S.RC.O9": False,
    "S.RC.O10": True, "S.RC.O11": False, "S.RC.O13": False, "S.RC.O14": False,
    "S.CP.D3": True,
    "S.MLP.D7": False,
    "S.RR.D1": True, "S.RR.D4": True, "S.RR.O1": False, "S.RR.O15": True,
    # Privacy
    "P.CDM.O1": False, "P.CDM.O2": True, "P.CDM.O3": False,
    "P.UC.D3": True, "P.UC.D4": False, "P.UC.D7": True, "P.UC.D8": True,
    "P.UC.O1": False, "P.UC.O4": False, "P.UC.O7": True,
    "P.LAR.D1": True, "P.LAR.O7": True,
    "P.RIP.D1": False, "P.RIP.D2": True, "P.RIP.D3": True, "P.RIP.D4": False,
    "P.RIP.O2": 35, "P.RIP.O3": False,
    "P.UL.D1": False, "P.UL.O1": False,
    "P.IDA.D2": True, "P.IDA.D3": True, "P.IDA.D4": True,
    "P.PIA.O1": True, "P.PIA.O3": False, "P.PIA.O4": False, "P.PIA.O6": False,
    "P.PRMP.O5": False,
    "P.WDPP.O4": False,
    "P.SU.O2": True, "P.SU.O3": False,
    "P.PS.D1": True, "P.PS.O1": False, "P.PS.O2": True, "P.PS.O3": False,
    "P.PS.O4": False, "P.PS.O5": False,
    # Ethics
    "E.OP.D1": True, "E.OP.O1": 45,
    # Resiliency: no automated password recovery in the testbed
    "RES.RS.O1": False,
    "RES.IDR.D1": True, "RES.IDR.O1": 70, "RES.IDR.O6": False,
    # Robustness
    "ROB.CT.D1": True, "ROB.CT.D2": True, "ROB.CT.O1": 62,
    # Reliability
    "REL.SUS.D1": True,
    "REL.AL.D1": False, "REL.AL.O7": True, "REL.AL.O8": False,
    "REL.AL.O9": False, "REL.AL.O10": False,
    "REL.GA.O1": False,
    "REL.HUT.D1": True,
}


class TickClock:
    """Fixed, monotonically increasing timestamps so regeneration is stable."""

    def __init__(self) -> None:
        self.now = datetime(2025, 6, 2, 9, 0, 0, tzinfo=timezone.utc)

    def __call__(self) -> str:
        stamp = self.now.isoformat(timespec="microseconds")
        self.now += timedelta(minutes=1)
        return stamp


def main() -> None:
    templates = TemplateRepository(ROOT / "templates")
    with tempfile.TemporaryDirectory() as tmp:
        store = AssessmentStore(tmp, templates, clock=TickClock())
        state = store.create_assessment(
            "distaf-sample",
            "Demonstration assessment of a minimal MOSIP-based identity system "
            "(Turing's ID system): basic testbed without SOC integration or "
            "advanced resilience mechanisms.",
            assessment_id="turing-demo",
        )
        rev = state.revision
        rev = store.set_mechanism_exclusion("turing-demo", rev, "S.SC", True).revision
        for mechanism, phase, index in ANSWERS:
            rev = store.choose_cluster_answer("turing-demo", rev, mechanism, phase, index).revision
        rev = store.declare_standard("turing-demo", rev, "GDPR").revision
        rev = store.apply_metric_values("turing-demo", rev, DIRECT_VALUES).revision
        state = store.transition_status("turing-demo", rev, Status.PUBLIC)

    out = ROOT / "fixtures" / "turing-demo.json"
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(state_to_doc(state), indent=2) + "\n", encoding="utf-8")
    print(f"wrote {out} (revision {state.revision})")


if __name__ == "__main__":
    main()
