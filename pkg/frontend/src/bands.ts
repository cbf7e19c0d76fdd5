/**
 * Score background bands, mirroring the server's report engine exactly.
 * Parity is enforced by tests/bands.spec.ts against a fixture generated
 * from the server implementation.
 */
import type { ScoreNodeDoc } from "./types";

export type ColorBand =
  | "DeepPink"
  | "TomatoRed"
  | "LemonChiffon"
  | "LightGreen"
  | "Transparent";

export function bandForScore(score: number): ColorBand {
  if (score <= 33.0) return "TomatoRed";
  if (score <= 66.0) return "LemonChiffon";
  return "LightGreen";
}

/** Exclusion dominates everything; violations dominate numeric bands. */
export function colorBand(node: ScoreNodeDoc): ColorBand {
  if (node.excluded) return "Transparent";
  if (node.mandatory_violations.length > 0) return "DeepPink";
  if (node.capped_score === null) return "Transparent";
  return bandForScore(node.capped_score);
}

export const BAND_CSS: Record<ColorBand, string> = {
  DeepPink: "rgb(255, 20, 147)",
  TomatoRed: "rgb(255, 99, 71)",
  LemonChiffon: "rgb(255, 250, 205)",
  LightGreen: "rgb(143, 237, 143)",
  Transparent: "transparent",
};

/** Bands with a dark background need light text. */
export function bandTextCss(band: ColorBand): string {
  return band === "DeepPink" || band === "TomatoRed" ? "#ffffff" : "#1a1a1a";
}
