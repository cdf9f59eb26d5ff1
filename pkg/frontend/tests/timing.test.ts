/** Timing view geometry: tolerance bands, out-of-band ticks, layouts. */
import { describe, expect, it } from "vitest";

import { render } from "../src/render/index.js";
import type { LineNode, RectNode, TextNode } from "../src/scene.js";
import type { TimingSection } from "../src/types.js";
import { defaultView } from "../src/view.js";
import { loadKindFixtures, makeFrame } from "./helpers.js";

const fixtures = loadKindFixtures();

function section(overrides: Partial<TimingSection> = {}): TimingSection {
  return {
    score_percent: 0,
    tolerance_beats: 0.05,
    rows: [
      { repetition: 0, slot: 0, beat_in_cycle: 0, deviation_beats: -0.2,
        velocity: 80, voice: "keyboard" },
      { repetition: 0, slot: 2, beat_in_cycle: 1, deviation_beats: 0,
        velocity: 80, voice: "keyboard" },
      { repetition: 0, slot: 4, beat_in_cycle: 2, deviation_beats: 0,
        velocity: 80, voice: "keyboard" },
      { repetition: 0, slot: 6, beat_in_cycle: 3, deviation_beats: 0,
        velocity: 80, voice: "keyboard" },
    ],
    row_means: [{ repetition: 0, mean_deviation_beats: -0.05 }],
    histogram: { edges: [-0.25, -0.125, 0.0625], counts: [1, 3] },
    density: { x: [-0.3, -0.2, -0.1, 0, 0.1], y: [0.1, 2, 0.4, 3, 0.2] },
    voices: [],
    ...overrides,
  };
}

describe("timing rows", () => {
  it("places a -0.2 deviation tick outside the gray tolerance band", () => {
    const frame = makeFrame("timing", section());
    const nodes = render(frame, defaultView("timing")).nodes;
    const bands = nodes.filter(
      (n): n is RectNode => n.type === "rect" && n.fill === "#e3e3e3",
    );
    expect(bands.length).toBeGreaterThan(0);
    // Row ticks are full-opacity vertical lines below the aggregation strip.
    const ticks = nodes.filter(
      (n): n is LineNode => n.type === "line" && n.alpha === undefined
        && n.y1 > 160,
    );
    expect(ticks.length).toBe(4);
    const early = ticks.reduce((a, b) => (a.x1 < b.x1 ? a : b));
    const inAnyBand = (x: number) =>
      bands.some((b) => x >= b.x && x <= b.x + b.w);
    expect(inAnyBand(early.x1)).toBe(false);
    for (const tick of ticks) {
      if (tick !== early) expect(inAnyBand(tick.x1)).toBe(true);
    }
  });

  it("shows the within-tolerance score as text", () => {
    const frame = fixtures["timing"];
    const nodes = render(frame, defaultView("timing")).nodes;
    const texts = nodes.filter((n): n is TextNode => n.type === "text");
    const summary = frame.summary as TimingSection;
    expect(
      texts.some((t) => t.text.includes(`${summary.score_percent.toFixed(1)}%`)),
    ).toBe(true);
  });

  it("velocity maps to tick thickness", () => {
    const quietLoud = section({
      rows: [
        { repetition: 0, slot: 0, beat_in_cycle: 0, deviation_beats: 0,
          velocity: 10, voice: "keyboard" },
        { repetition: 0, slot: 2, beat_in_cycle: 1, deviation_beats: 0,
          velocity: 120, voice: "keyboard" },
      ],
    });
    const nodes = render(makeFrame("timing", quietLoud), defaultView("timing")).nodes;
    const ticks = nodes.filter(
      (n): n is LineNode => n.type === "line" && n.alpha === undefined
        && n.y1 > 160,
    );
    expect(ticks[0].width).toBeLessThan(ticks[1].width);
  });

  it("circular layout wraps the same records around one ring per repetition", () => {
    const view = { ...defaultView("timing"), layout: "circular" as const };
    const nodes = render(makeFrame("timing", section()), view).nodes;
    const arcs = nodes.filter((n) => n.type === "arc");
    expect(arcs.length).toBeGreaterThan(0); // tolerance wedges
    const ticks = nodes.filter(
      (n): n is LineNode => n.type === "line" && n.alpha === undefined
        && n.width >= 0.75,
    );
    expect(ticks.length).toBeGreaterThanOrEqual(4);
  });

  it("aggregation choice changes the overview panel only", () => {
    const frame = fixtures["timing"];
    const histogram = render(
      frame, { ...defaultView("timing"), aggregation: "histogram" });
    const density = render(
      frame, { ...defaultView("timing"), aggregation: "density" });
    expect(histogram.nodes.some((n) => n.type === "polyline")).toBe(false);
    expect(density.nodes.some((n) => n.type === "polyline")).toBe(true);
  });
});

describe("pause and warning frames", () => {
  it("pause frame keeps the summary on screen with a freeze banner", () => {
    const frame = fixtures["timing-pause"];
    const nodes = render(frame, defaultView("timing")).nodes;
    const texts = nodes.filter((n): n is TextNode => n.type === "text");
    expect(texts.some((t) => t.text.includes("paused"))).toBe(true);
    expect(nodes.filter((n) => n.type === "line").length).toBeGreaterThan(0);
  });

  it("schema mismatch renders a banner instead of a stale scene", () => {
    const frame = { ...fixtures["timing"], schema_version: "2" };
    const nodes = render(frame, defaultView("timing")).nodes;
    const texts = nodes.filter((n): n is TextNode => n.type === "text");
    expect(texts.length).toBe(1);
    expect(texts[0].text).toContain("schema 2");
  });

  it("warning frames surface their reason", () => {
    const nodes = render(fixtures["warning"], defaultView("timing")).nodes;
    const texts = nodes.filter((n): n is TextNode => n.type === "text");
    expect(texts[0].text).toContain("malformed");
  });
});
