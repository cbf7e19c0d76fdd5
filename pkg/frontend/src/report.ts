/**
 * Report view building blocks: banded score tables and radar chart
 * configurations, both derived purely from server responses.  The chart
 * config builder is a pure function so tests can assert the rendered data
 * without a canvas.
 */
import type { ChartConfiguration } from "chart.js";

import { BAND_CSS, bandTextCss, colorBand, type ColorBand } from "./bands";
import type {
  FingerprintDoc,
  Phase,
  ScorecardDoc,
  ScoreNodeDoc,
  TemplateDoc,
} from "./types";

export interface ScoreTableRow {
  code: string;
  name: string;
  raw: number | null;
  capped: number | null;
  band: ColorBand;
  backgroundCss: string;
  textCss: string;
  violations: string[];
  excluded: boolean;
}

function row(code: string, name: string, node: ScoreNodeDoc | undefined): ScoreTableRow {
  const band: ColorBand = node ? colorBand(node) : "Transparent";
  return {
    code,
    name,
    raw: node ? node.raw_score : null,
    capped: node ? node.capped_score : null,
    band,
    backgroundCss: BAND_CSS[band],
    textCss: bandTextCss(band),
    violations: node ? node.mandatory_violations : [],
    excluded: node ? node.excluded : false,
  };
}

/** One row per pillar, in template order. */
export function pillarTable(
  template: TemplateDoc,
  scorecard: ScorecardDoc,
  phase: Phase,
): ScoreTableRow[] {
  const nodes = scorecard[phase].pillars;
  return template.pillars
    .filter((p) => p.code in nodes)
    .map((p) => row(p.code, p.name, nodes[p.code]));
}

/** One row per mechanism of a pillar (excluded ones included, rendered
 * transparent), in template order. */
export function mechanismTable(
  template: TemplateDoc,
  scorecard: ScorecardDoc,
  phase: Phase,
  pillarCode: string,
): ScoreTableRow[] {
  const pillar = template.pillars.find((p) => p.code === pillarCode);
  if (!pillar) throw new Error(`unknown pillar ${pillarCode}`);
  const nodes = scorecard[phase].mechanisms;
  return pillar.mechanisms
    .map((m) => {
      const qcode = `${pillar.code}.${m.code}`;
      return qcode in nodes ? row(qcode, m.name, nodes[qcode]) : null;
    })
    .filter((r): r is ScoreTableRow => r !== null);
}

/** Radar configuration straight from a fingerprint series: axis order is the
 * server's, values are server capped scores, scale fixed to 0-100. */
export function radarConfig(
  series: FingerprintDoc,
  title?: string,
): ChartConfiguration<"radar"> {
  return {
    type: "radar",
    data: {
      labels: series.axes.map((a) => a.label),
      datasets: [
        {
          label: title ?? `${series.phase} phase`,
          data: series.axes.map((a) => (a.value === null ? 0 : a.value)),
          fill: true,
          backgroundColor: "rgba(36, 99, 168, 0.25)",
          borderColor: "rgb(36, 99, 168)",
          pointBackgroundColor: series.axes.map((a) =>
            a.complete ? "rgb(36, 99, 168)" : "rgb(200, 120, 40)",
          ),
        },
      ],
    },
    options: {
      responsive: false,
      animation: false,
      scales: { r: { min: 0, max: 100, ticks: { stepSize: 25 } } },
    },
  };
}
