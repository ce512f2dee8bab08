/** Score glyph: the at-a-glance square shown next to every publication.
 *
 * Large final score in the middle, outgoing link count lower-left,
 * incoming link count lower-right, one chevron per matched keyword
 * group capped at three. The background darkens with the score, scaled
 * against the 95th percentile of the scores currently on screen so one
 * outlier cannot wash out the rest.
 */

import type { Breakdown } from "./types.js";

/** p-th percentile (linear interpolation) of a non-empty list. */
export function percentile(values: number[], p: number): number {
  if (values.length === 0) return 0;
  const sorted = [...values].sort((a, b) => a - b);
  const rank = (p / 100) * (sorted.length - 1);
  const low = Math.floor(rank);
  const high = Math.ceil(rank);
  if (low === high) return sorted[low];
  return sorted[low] + (sorted[high] - sorted[low]) * (rank - low);
}

export function grayClamp(scores: number[]): number {
  return Math.max(1, percentile(scores, 95));
}

/** 0 (white) .. 1 (full gray) for a score under the given clamp. */
export function grayLevel(score: number, clamp: number): number {
  if (clamp <= 0) return 0;
  return Math.min(1, Math.max(0, score / clamp));
}

/** CSS background for a glyph; white at 0 toward var-driven gray at 1. */
export function glyphBackground(score: number, clamp: number): string {
  const level = grayLevel(score, clamp);
  // 255 -> 120 keeps the score digit readable at the dark end
  const channel = Math.round(255 - level * 135);
  return `rgb(${channel}, ${channel}, ${channel})`;
}

export function chevronCount(glyphLevel: number): number {
  return Math.max(0, Math.min(3, glyphLevel));
}

export function formulaTooltip(breakdown: Breakdown): string {
  const { s, o, i, b } = breakdown;
  const base = `${o} outgoing + ${i} incoming = ${o + i}`;
  if (b === 0) return `score ${s}: ${base}, no keyword boost`;
  return `score ${s}: (${base}) x 2^${b} for ${b} matched keyword group${b === 1 ? "" : "s"}`;
}

export function renderScoreGlyph(
  breakdown: Breakdown,
  glyphLevel: number,
  clamp: number,
  doc: Document = document,
): HTMLElement {
  const root = doc.createElement("div");
  root.className = "score-glyph";
  root.style.background = glyphBackground(breakdown.s, clamp);
  root.title = formulaTooltip(breakdown);

  const score = doc.createElement("span");
  score.className = "glyph-score";
  score.textContent = String(breakdown.s);
  root.appendChild(score);

  const outgoing = doc.createElement("span");
  outgoing.className = "glyph-outgoing";
  outgoing.textContent = String(breakdown.o);
  root.appendChild(outgoing);

  const incoming = doc.createElement("span");
  incoming.className = "glyph-incoming";
  incoming.textContent = String(breakdown.i);
  root.appendChild(incoming);

  const chevrons = chevronCount(glyphLevel);
  if (chevrons > 0) {
    const badge = doc.createElement("span");
    badge.className = "glyph-chevrons";
    badge.textContent = "›".repeat(chevrons);
    root.appendChild(badge);
  }
  return root;
}
