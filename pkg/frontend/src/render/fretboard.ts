/** Fretboard drill: per-facet scatterplots on a simplified fretboard grid,
 * dots sized by loudness and colored by temporal order; open strings stand
 * out, detected octave shifts are annotated. */

import { temporalColor, type Theme } from "../colors.js";
import { scene, Scene } from "../scene.js";
import type { FretboardSection } from "../types.js";
import type { ViewState } from "../view.js";

const MARGIN = 40;
const MAX_FRET = 22;
const JITTER_SCALE = 0.22;

export function renderFretboard(
  section: FretboardSection,
  view: ViewState,
  theme: Theme,
): Scene {
  const out = scene(view.width, view.height, theme.background);
  const facets = section.facets.length
    ? section.facets
    : [{ bar_index: 0, note_count: 0, movement: "stationary", notes: [],
         fret_min: null, fret_max: null, fret_centroid: null,
         string_min: null, string_max: null, string_centroid: null,
         open_string_count: 0 } as FretboardSection["facets"][number]];
  const facetH = Math.min(
    130,
    (view.height - MARGIN) / facets.length,
  );
  const plotW = view.width - 2 * MARGIN;
  const xOf = (fret: number) => MARGIN + ((fret + 0.5) / (MAX_FRET + 1)) * plotW;

  const shiftsByFacet = new Map<number, string>();
  for (const shift of section.octave_shifts) {
    shiftsByFacet.set(
      shift.to_facet,
      `same notes as facet ${shift.from_facet}, ${shift.offset > 0 ? "+" : ""}${shift.offset} frets`,
    );
  }

  facets.forEach((facet, i) => {
    const y0 = 8 + i * facetH;
    const innerH = facetH - 34;
    const yOf = (stringNo: number) => y0 + ((stringNo - 0.5) / 6) * innerH;

    for (let fret = 0; fret <= MAX_FRET; fret++) {
      out.nodes.push({
        type: "line", x1: xOf(fret), y1: y0, x2: xOf(fret), y2: y0 + innerH,
        stroke: theme.faint, width: fret === 0 ? 2 : 0.5,
      });
    }
    for (let s = 1; s <= 6; s++) {
      out.nodes.push({
        type: "line", x1: xOf(0), y1: yOf(s), x2: xOf(MAX_FRET), y2: yOf(s),
        stroke: theme.faint, width: 0.75,
      });
    }

    for (const note of facet.notes) {
      const [jx, jy] = view.jitter ? note.jitter : [0, 0];
      out.nodes.push({
        type: "circle",
        cx: xOf(note.fret + jx * JITTER_SCALE),
        cy: yOf(note.string + jy * JITTER_SCALE),
        r: 3 + 6 * ((note.velocity - 1) / 126),
        fill: note.fret === 0 ? theme.openString : temporalColor(note.order),
        alpha: 0.75,
      });
    }

    const annotation = shiftsByFacet.get(i);
    out.nodes.push({
      type: "text",
      x: MARGIN,
      y: y0 + innerH + 14,
      text:
        `bars from ${facet.bar_index} — ${facet.movement}` +
        (annotation ? ` — ${annotation}` : ""),
      fill: annotation ? theme.warn : theme.ink,
      size: 11,
      align: "left",
    });
  });
  return out;
}
