/** Accents drill: note symbols sized by loudness (quantized to large/small
 * or continuous), with the quantized duration text and pattern mismatches. */

import type { Theme } from "../colors.js";
import { scene, Scene } from "../scene.js";
import type { RhythmSection } from "../types.js";
import type { ViewState } from "../view.js";

const MARGIN = 40;

export function renderRhythm(
  section: RhythmSection,
  view: ViewState,
  theme: Theme,
): Scene {
  const out = scene(view.width, view.height, theme.background);
  const notes = section.notes;
  if (!notes.length) {
    out.nodes.push({
      type: "text", x: view.width / 2, y: view.height / 2,
      text: "play at least two notes to see intervals", fill: theme.faint,
      size: 14, align: "center",
    });
    return out;
  }
  const stepX = (view.width - 2 * MARGIN) / Math.max(notes.length, 1);
  const baseline = view.height * 0.4;
  const mismatches = new Set(section.mismatches);
  const maxVelocity = Math.max(...notes.map((n) => n.velocity));

  notes.forEach((note, i) => {
    const cx = MARGIN + (i + 0.5) * stepX;
    if (mismatches.has(i)) {
      out.nodes.push({
        type: "rect", x: cx - stepX / 2, y: baseline - 60, w: stepX, h: 120,
        fill: theme.warn, alpha: 0.15,
      });
    }
    let r: number;
    if (view.accentSize === "quantized") {
      // Two sizes only: accents vs everything else.
      r = note.accent ? 18 : 9;
    } else {
      r = 6 + 14 * (note.velocity / maxVelocity);
    }
    out.nodes.push({
      type: "circle", cx, cy: baseline, r,
      fill: note.accent ? theme.accent : theme.fill,
      alpha: note.accent ? 1 : 0.75,
    });
    out.nodes.push({
      type: "text", x: cx, y: baseline + 40, text: note.symbol,
      fill: Math.abs(note.error_beats) > 1e-9 ? theme.warn : theme.ink,
      size: 11, align: "center",
    });
  });

  // IOI bars along the bottom: exact values for those who want them.
  const barTop = view.height * 0.62;
  const barH = view.height * 0.3;
  const maxIoi = Math.max(...notes.map((n) => n.ioi_beats));
  notes.forEach((note, i) => {
    const h = (note.ioi_beats / maxIoi) * barH;
    out.nodes.push({
      type: "rect",
      x: MARGIN + (i + 0.15) * stepX,
      y: barTop + barH - h,
      w: stepX * 0.7,
      h,
      fill: theme.faint,
    });
    const targetH = ((note.ioi_beats - note.error_beats) / maxIoi) * barH;
    out.nodes.push({
      type: "line",
      x1: MARGIN + (i + 0.1) * stepX,
      y1: barTop + barH - targetH,
      x2: MARGIN + (i + 0.9) * stepX,
      y2: barTop + barH - targetH,
      stroke: theme.warn,
      width: 1,
    });
  });
  return out;
}
