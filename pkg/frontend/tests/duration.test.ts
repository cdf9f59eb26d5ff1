/** The pie acceptance criteria: fill fractions in pixels, overflow layers. */
import { describe, expect, it } from "vitest";

import { render } from "../src/render/index.js";
import { ArcNode, arcFraction, arcLengthPx, TWO_PI } from "../src/scene.js";
import type { DurationSection } from "../src/types.js";
import { defaultView } from "../src/view.js";
import { loadKindFixtures, makeFrame } from "./helpers.js";

const fixtures = loadKindFixtures();

function arcsOf(frame: Parameters<typeof render>[0], view = defaultView("duration")) {
  return render(frame, view).nodes.filter(
    (n): n is ArcNode => n.type === "arc",
  );
}

describe("duration pies", () => {
  it("renders a held quarter as a 0.25 fill within 1 px at 200 px diameter", () => {
    const frame = fixtures["duration"];
    const section = frame.summary as DurationSection;
    const quarter = section.verdicts.find((v) => v.nearest === "quarter")!;
    expect(quarter.pie_layers).toEqual([0.25]);

    const view = { ...defaultView("duration"), pieDiameter: 200 };
    const arcs = arcsOf(frame, view);
    expect(arcs.length).toBeGreaterThan(0);
    const arc = arcs[0];
    expect(arc.r).toBe(100);
    // One pixel of arc at r=100 is 1/(2*pi*100) of a revolution.
    const fullCircumference = TWO_PI * arc.r;
    expect(
      Math.abs(arcFraction(arc) - 0.25) * fullCircumference,
    ).toBeLessThanOrEqual(1);
    expect(Math.abs(arcLengthPx(arc) - 0.25 * fullCircumference))
      .toBeLessThanOrEqual(1);
  });

  it("renders an overflowing note as two layers, the second darker", () => {
    const frame = fixtures["duration-overflow"];
    const section = frame.summary as DurationSection;
    expect(section.verdicts[0].pie_layers.length).toBe(2);

    const arcs = arcsOf(frame);
    expect(arcs.length).toBe(2);
    expect(arcFraction(arcs[0])).toBeCloseTo(1.0, 6);
    expect(arcFraction(arcs[1])).toBeCloseTo(0.15, 6);
    expect(arcs[0].fill).not.toBe(arcs[1].fill);
  });

  it("draws pie tick marks at eighths of the circle", () => {
    const view = { ...defaultView("duration"), pieDiameter: 200 };
    const nodes = render(fixtures["duration"], view).nodes;
    const ticks = nodes.filter((n) => n.type === "line");
    // Two pies in the fixture, eight ticks each.
    expect(ticks.length).toBe(16);
  });

  it("bar variant fills to the same fraction by height", () => {
    const section: DurationSection = {
      threshold: 0.1,
      verdicts: [{
        held_beats: 1.0, nearest: "quarter", nearest_beats: 1.0,
        deviation_fraction: 0, verdict: "good", pie_layers: [0.25],
      }],
    };
    const view = {
      ...defaultView("duration"),
      durationEncoding: "bar" as const,
      pieDiameter: 200,
    };
    const nodes = render(makeFrame("duration", section), view).nodes;
    const fills = nodes.filter((n) => n.type === "rect" && n.fill);
    expect(fills.length).toBe(1);
    expect((fills[0] as { h: number }).h).toBeCloseTo(0.25 * 200, 6);
  });
});
