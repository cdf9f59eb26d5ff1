/** Timing drill: tick rows (or the circular variant) over gray tolerance
 * zones, topped by the chosen aggregation and the within-tolerance score. */

import type { Theme } from "../colors.js";
import { scene, Scene, SceneNode, TOP_ANGLE, TWO_PI } from "../scene.js";
import type { TimingRow, TimingSection } from "../types.js";
import type { ViewState } from "../view.js";

const MARGIN = 48;
const AGG_H = 120;

function tickWidth(velocity: number): number {
  return 0.75 + 2.5 * ((velocity - 1) / 126);
}

function cycleOf(section: TimingSection): { cycle: number; slots: number[] } {
  // The grid's slot positions are recoverable from the rows themselves; an
  // empty take falls back to one bar of eighths.
  const beats = section.rows.map((r) => r.beat_in_cycle);
  const slots = [...new Set(beats)].sort((a, b) => a - b);
  if (slots.length < 2) {
    return { cycle: 4, slots: [0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5] };
  }
  const step = slots.length > 1 ? slots[1] - slots[0] : 0.5;
  const cycle = Math.max(...slots) + step;
  const all: number[] = [];
  for (let b = 0; b < cycle - 1e-9; b += step) all.push(b);
  return { cycle, slots: all };
}

export function renderTiming(
  section: TimingSection,
  view: ViewState,
  theme: Theme,
): Scene {
  const out = scene(view.width, view.height, theme.background);
  const { cycle, slots } = cycleOf(section);
  out.nodes.push({
    type: "text",
    x: MARGIN,
    y: 22,
    text: `${section.score_percent.toFixed(1)}% inside ±${section.tolerance_beats} beats`,
    fill: theme.ink,
    size: 14,
    align: "left",
  });

  const plotX = (beat: number) =>
    MARGIN + ((beat + 0.25) / (cycle + 0.5)) * (view.width - 2 * MARGIN);

  aggregation(section, view, theme, out.nodes, plotX);

  if (view.layout === "circular") {
    circularRows(section.rows, view, theme, out.nodes, cycle, slots,
      section.tolerance_beats);
  } else {
    linearRows(section.rows, view, theme, out.nodes, slots,
      section.tolerance_beats, plotX);
  }
  return out;
}

function aggregation(
  section: TimingSection,
  view: ViewState,
  theme: Theme,
  nodes: SceneNode[],
  plotX: (beat: number) => number,
): void {
  const top = 36;
  if (view.aggregation === "overplot") {
    for (const row of section.rows) {
      nodes.push({
        type: "line",
        x1: plotX(row.beat_in_cycle + row.deviation_beats),
        y1: top,
        x2: plotX(row.beat_in_cycle + row.deviation_beats),
        y2: top + AGG_H - 20,
        stroke: theme.ink,
        width: tickWidth(row.velocity),
        alpha: 0.3,
      });
    }
    return;
  }
  if (view.aggregation === "histogram") {
    const { edges, counts } = section.histogram;
    const peak = Math.max(1, ...counts);
    counts.forEach((count, i) => {
      const x0 = plotX(edges[i] + 1);
      const x1 = plotX(edges[i + 1] + 1);
      const h = ((AGG_H - 20) * count) / peak;
      nodes.push({
        type: "rect", x: x0, y: top + (AGG_H - 20) - h, w: x1 - x0, h,
        fill: theme.fill, alpha: 0.8,
      });
    });
    return;
  }
  const { x, y } = section.density;
  if (!x.length) return;
  const peak = Math.max(...y, 1e-9);
  const points: [number, number][] = x.map((xi, i) => [
    plotX(xi + 1),
    top + (AGG_H - 20) * (1 - y[i] / peak),
  ]);
  points.push([points[points.length - 1][0], top + AGG_H - 20]);
  points.push([points[0][0], top + AGG_H - 20]);
  nodes.push({ type: "polyline", points, fill: theme.fill, alpha: 0.5 });
}

function linearRows(
  rows: TimingRow[],
  view: ViewState,
  theme: Theme,
  nodes: SceneNode[],
  slots: number[],
  tolerance: number,
  plotX: (beat: number) => number,
): void {
  const top = 36 + AGG_H + 12;
  const repetitions = [...new Set(rows.map((r) => r.repetition))].sort(
    (a, b) => a - b,
  );
  const rowH = Math.min(26, (view.height - top - 16) / Math.max(1, repetitions.length));
  const yOf = new Map(repetitions.map((rep, i) => [rep, top + i * rowH]));

  for (const slot of slots) {
    nodes.push({
      type: "rect",
      x: plotX(slot - tolerance),
      y: top,
      w: plotX(slot + tolerance) - plotX(slot - tolerance),
      h: Math.max(rowH * repetitions.length, rowH),
      fill: theme.tolerance,
    });
  }
  for (const row of rows) {
    const y = yOf.get(row.repetition) ?? top;
    nodes.push({
      type: "line",
      x1: plotX(row.beat_in_cycle + row.deviation_beats),
      y1: y + rowH * 0.12,
      x2: plotX(row.beat_in_cycle + row.deviation_beats),
      y2: y + rowH * 0.88,
      stroke: theme.ink,
      width: tickWidth(row.velocity),
    });
  }
}

function circularRows(
  rows: TimingRow[],
  view: ViewState,
  theme: Theme,
  nodes: SceneNode[],
  cycle: number,
  slots: number[],
  tolerance: number,
): void {
  const top = 36 + AGG_H + 12;
  const cx = view.width / 2;
  const cy = top + (view.height - top) / 2;
  const maxR = Math.min(view.width, view.height - top) / 2 - 12;
  const minR = maxR * 0.35;
  const repetitions = [...new Set(rows.map((r) => r.repetition))].sort(
    (a, b) => a - b,
  );
  const ringW = (maxR - minR) / Math.max(1, repetitions.length);
  const rOf = new Map(repetitions.map((rep, i) => [rep, minR + (i + 0.5) * ringW]));
  const angleOf = (beat: number) =>
    TOP_ANGLE + TWO_PI * (((beat % cycle) + cycle) % cycle) / cycle;

  for (const slot of slots) {
    nodes.push({
      type: "arc",
      cx, cy, r: maxR,
      start: angleOf(slot - tolerance),
      end: angleOf(slot - tolerance) + (TWO_PI * 2 * tolerance) / cycle,
      fill: theme.tolerance,
    });
    const a = angleOf(slot);
    nodes.push({
      type: "line",
      x1: cx + minR * 0.8 * Math.cos(a),
      y1: cy + minR * 0.8 * Math.sin(a),
      x2: cx + maxR * Math.cos(a),
      y2: cy + maxR * Math.sin(a),
      stroke: theme.faint,
      width: 1,
    });
  }
  for (const row of rows) {
    const r = rOf.get(row.repetition) ?? minR;
    const a = angleOf(row.beat_in_cycle + row.deviation_beats);
    const half = ringW * 0.4;
    nodes.push({
      type: "line",
      x1: cx + (r - half) * Math.cos(a),
      y1: cy + (r - half) * Math.sin(a),
      x2: cx + (r + half) * Math.cos(a),
      y2: cy + (r + half) * Math.sin(a),
      stroke: theme.ink,
      width: tickWidth(row.velocity),
    });
  }
}
