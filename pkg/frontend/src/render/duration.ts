/** Duration drill: one pie (or bar) per released note, overflow past a whole
 * note refilled in a darker color, tick marks at eighths of a revolution. */

import type { Theme } from "../colors.js";
import { scene, Scene, TOP_ANGLE, TWO_PI } from "../scene.js";
import type { DurationSection } from "../types.js";
import type { ViewState } from "../view.js";

const GAP = 24;
const LABEL_H = 36;

export function renderDuration(
  section: DurationSection,
  view: ViewState,
  theme: Theme,
): Scene {
  const d = view.pieDiameter;
  const r = d / 2;
  const verdicts = section.verdicts;
  const perRow = Math.max(1, Math.floor(view.width / (d + GAP)));
  const rows = Math.max(1, Math.ceil(verdicts.length / perRow));
  const out = scene(view.width, rows * (d + LABEL_H + GAP) + GAP, theme.background);

  verdicts.forEach((verdict, i) => {
    const col = i % perRow;
    const row = Math.floor(i / perRow);
    const cx = GAP + col * (d + GAP) + r;
    const cy = GAP + row * (d + LABEL_H + GAP) + r;

    if (view.durationEncoding === "bar") {
      // The glass-of-water variant: height is the fraction of a whole note.
      const barW = d * 0.4;
      const x = cx - barW / 2;
      verdict.pie_layers.forEach((layer, k) => {
        out.nodes.push({
          type: "rect",
          x,
          y: cy + r - layer * d,
          w: barW,
          h: layer * d,
          fill: k === 0 ? theme.fill : theme.overflow,
          alpha: k === 0 ? 1 : 0.95,
        });
      });
      for (let tick = 0; tick < 8; tick++) {
        const y = cy + r - (tick / 8) * d;
        out.nodes.push({
          type: "line", x1: x - 6, y1: y, x2: x, y2: y,
          stroke: theme.ink, width: 1,
        });
      }
      out.nodes.push({
        type: "rect", x, y: cy - r, w: barW, h: d, stroke: theme.faint,
        width: 1.5,
      });
    } else {
      out.nodes.push({
        type: "circle", cx, cy, r, stroke: theme.faint, width: 1.5,
      });
      verdict.pie_layers.forEach((layer, k) => {
        out.nodes.push({
          type: "arc",
          cx,
          cy,
          r: r - 3 * k, // overflow layers sit just inside the first
          start: TOP_ANGLE,
          end: TOP_ANGLE + layer * TWO_PI,
          fill: k === 0 ? theme.fill : theme.overflow,
        });
      });
      for (let tick = 0; tick < 8; tick++) {
        const angle = TOP_ANGLE + (tick / 8) * TWO_PI;
        out.nodes.push({
          type: "line",
          x1: cx + 0.9 * r * Math.cos(angle),
          y1: cy + 0.9 * r * Math.sin(angle),
          x2: cx + r * Math.cos(angle),
          y2: cy + r * Math.sin(angle),
          stroke: theme.ink,
          width: 1,
        });
      }
    }

    const label = verdict.verdict.replace("_", " ");
    out.nodes.push({
      type: "text",
      x: cx,
      y: cy + r + 16,
      text: `${label} — ${verdict.nearest} (${verdict.held_beats.toFixed(2)})`,
      fill: verdict.verdict === "good" ? theme.fit.chord : theme.warn,
      size: 12,
      align: "center",
    });
  });
  return out;
}
