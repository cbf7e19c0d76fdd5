"""Exact-rational brute-force recomputation of mechanism and pillar scores.

Test-only reference path: everything is recomputed with Fraction
arithmetic straight from the aggregation rules, independently of the
floating-point engine.  Results are (raw, capped, violations) triples
with None standing for "nothing aggregable".
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from distaf.framework import FrameworkTemplate, Phase
from distaf.scoring import MetricValue


@dataclass
class OracleNode:
    raw: Fraction | None
    capped: Fraction | None
    violations: frozenset


def _exact(value: float) -> Fraction:
    # Fraction(float) is the float's exact binary value, so the oracle sees
    # the very same numbers the engine does.
    return Fraction(value)


def oracle_phase(
    t: FrameworkTemplate,
    values: dict,
    excluded: set[str],
    phase: Phase,
) -> tuple[dict[str, OracleNode], dict[str, OracleNode]]:
    """Recompute all (pillar, mechanism) nodes of one phase.

    ``values`` maps MetricCode -> MetricValue (only scored entries count);
    ``excluded`` holds pillar-qualified mechanism codes.
    """
    mech_nodes: dict[str, OracleNode] = {}
    pillar_nodes: dict[str, OracleNode] = {}

    for pillar in t.pillars:
        per_mech: dict[str, OracleNode] = {}
        complete: dict[str, bool] = {}
        for mech in pillar.mechanisms:
            phase_metrics = mech.phase_metrics(phase)
            if not phase_metrics:
                continue
            qcode = f"{pillar.code}.{mech.code}"
            if qcode in excluded:
                continue
            scored = [
                m for m in phase_metrics
                if (v := values.get(m.code)) is not None and v.is_scored
            ]
            complete[mech.code] = len(scored) == len(phase_metrics)
            if not scored:
                node = OracleNode(None, None, frozenset())
            else:
                weights = {
                    m.code: Fraction(mech.metric_weights.get(m.code, 1)) for m in scored
                }
                total = sum(weights.values())
                if total == 0:
                    node = OracleNode(None, None, frozenset())
                else:
                    raw = sum(
                        _exact(values[m.code].normalized) * weights[m.code] / total
                        for m in scored
                    )
                    violations = frozenset(
                        m.code
                        for m in scored
                        if m.mandatory is not None
                        and _exact(values[m.code].normalized)
                        < _exact(m.mandatory.satisfied_when_at_least)
                    )
                    caps = [
                        _exact(t.metric(c).mandatory.mechanism_cap) for c in violations
                    ]
                    capped = min([raw] + caps) if caps else raw
                    node = OracleNode(raw, capped, violations)
            per_mech[mech.code] = node
            mech_nodes[qcode] = node

        if not per_mech:
            continue
        aggregable = {
            code: node
            for code, node in per_mech.items()
            if complete.get(code) and node.capped is not None
        }
        if not aggregable:
            pillar_nodes[pillar.code] = OracleNode(None, None, frozenset())
            continue
        weights = {code: Fraction(pillar.mechanism_weights.get(code, 1)) for code in aggregable}
        total = sum(weights.values())
        if total == 0:
            pillar_nodes[pillar.code] = OracleNode(None, None, frozenset())
            continue
        raw = sum(node.capped * weights[code] / total for code, node in aggregable.items())
        violations = frozenset().union(*(node.violations for node in aggregable.values()))
        caps = [_exact(t.metric(c).mandatory.pillar_cap) for c in violations]
        capped = min([raw] + caps) if caps else raw
        pillar_nodes[pillar.code] = OracleNode(raw, capped, violations)

    return pillar_nodes, mech_nodes


def assert_matches_engine(t, card, values, excluded, tol: float = 1e-9) -> None:
    """Compare an engine scorecard against the oracle on every node."""
    for phase in Phase:
        pillars, mechs = oracle_phase(t, values, excluded, phase)
        scores = card.phase(phase)
        for qcode, expected in mechs.items():
            node = scores.mechanisms[qcode]
            _assert_node(qcode, phase, node, expected, tol)
        for code, expected in pillars.items():
            node = scores.pillars[code]
            _assert_node(code, phase, node, expected, tol)


def _assert_node(subject, phase, node, expected, tol) -> None:
    where = f"{subject}/{phase.value}"
    if expected.raw is None:
        assert node.raw_score is None, f"{where}: engine raw {node.raw_score}, oracle None"
        assert node.capped_score is None, f"{where}: engine capped set, oracle None"
        return
    assert node.raw_score is not None, f"{where}: engine raw None, oracle {expected.raw}"
    assert abs(node.raw_score - float(expected.raw)) <= tol, (
        f"{where}: raw {node.raw_score} vs oracle {float(expected.raw)}"
    )
    assert abs(node.capped_score - float(expected.capped)) <= tol, (
        f"{where}: capped {node.capped_score} vs oracle {float(expected.capped)}"
    )
    assert node.mandatory_violations == expected.violations, (
        f"{where}: violations {node.mandatory_violations} vs oracle {expected.violations}"
    )
