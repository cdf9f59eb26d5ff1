/** Chord-progression drill: waffle facets, one per repetition, one column
 * per bar, squares colored by chord/scale/outside fit or by the secondary
 * duration scheme. */

import type { Theme } from "../colors.js";
import { scene, Scene } from "../scene.js";
import type { HarmonySection, NoteFit } from "../types.js";
import type { ViewState } from "../view.js";

const MARGIN = 32;
const CELL = 14;
const FIT_ORDER: NoteFit[] = ["chord", "scale", "outside"];

export function renderHarmony(
  section: HarmonySection,
  view: ViewState,
  theme: Theme,
): Scene {
  const out = scene(view.width, view.height, theme.background);
  const bars = section.chords.length || 1;
  const repetitions = [
    ...new Set(section.waffle.map((c) => c.repetition)),
  ].sort((a, b) => a - b);
  if (!repetitions.length) repetitions.push(0);

  const facetW = bars * (CELL + 4) + 24;
  repetitions.forEach((rep, facetIndex) => {
    const x0 = MARGIN + facetIndex * (facetW + 16);
    const y0 = MARGIN + 8;
    const facetH = view.height - 2 * MARGIN - 40;
    out.nodes.push({
      type: "rect", x: x0 - 8, y: y0 - 8, w: facetW, h: facetH + 16,
      stroke: theme.faint, width: 1,
    });
    out.nodes.push({
      type: "text", x: x0 - 8 + facetW / 2, y: y0 - 14,
      text: `repetition ${rep}`, fill: theme.ink, size: 11, align: "center",
    });

    for (let bar = 0; bar < bars; bar++) {
      const cx = x0 + bar * (CELL + 4);
      out.nodes.push({
        type: "text", x: cx + CELL / 2, y: y0 + facetH + 14,
        text: section.chords[bar] ?? "", fill: theme.ink, size: 10,
        align: "center",
      });
      if (view.harmonyColors === "duration") {
        const notes = section.notes
          .filter((n) => n.repetition === rep && n.bar === bar)
          .sort((a, b) => a.onset_beats - b.onset_beats);
        notes.forEach((note, level) => {
          out.nodes.push({
            type: "rect",
            x: cx,
            y: y0 + facetH - (level + 1) * (CELL + 2),
            w: CELL,
            h: CELL,
            fill: note.duration_class
              ? theme.durationClass[note.duration_class] ?? theme.faint
              : theme.faint,
          });
        });
        continue;
      }
      const cells = section.waffle
        .filter((c) => c.repetition === rep && c.bar === bar)
        .sort(
          (a, b) =>
            FIT_ORDER.indexOf(a.fit) - FIT_ORDER.indexOf(b.fit) ||
            a.pitch_class - b.pitch_class,
        );
      let level = 0;
      for (const cell of cells) {
        for (let k = 0; k < cell.count; k++) {
          out.nodes.push({
            type: "rect",
            x: cx,
            y: y0 + facetH - (level + 1) * (CELL + 2),
            w: CELL,
            h: CELL,
            fill: theme.fit[cell.fit],
          });
          level += 1;
        }
      }
    }
  });
  return out;
}
