/** View legality, steering actions, and the control channel contract. */
import { describe, expect, it } from "vitest";

import { applyViewAction, ControlChannel, controlMessage } from "../src/control.js";
import { defaultView, sanitizeView, viewWithFrame } from "../src/view.js";
import { loadKindFixtures } from "./helpers.js";

const fixtures = loadKindFixtures();

describe("view legality", () => {
  it("resets parameters that are illegal for the active drill", () => {
    const view = {
      ...defaultView("duration"),
      layout: "circular" as const,
      aggregation: "overplot" as const,
    };
    const clean = sanitizeView(view);
    expect(clean.layout).toBe("rows");
    expect(clean.aggregation).toBe("density");
    expect(clean.durationEncoding).toBe("pie"); // legal param survives
  });

  it("keeps legal parameters for the drill untouched", () => {
    const view = { ...defaultView("timing"), layout: "circular" as const };
    expect(sanitizeView(view).layout).toBe("circular");
  });

  it("switching drill kind via a frame sanitizes the view", () => {
    const view = { ...defaultView("timing"), layout: "circular" as const };
    const next = viewWithFrame(view, fixtures["duration"]);
    expect(next.kind).toBe("duration");
    expect(next.layout).toBe("rows");
  });

  it("pause and final frames freeze the view; frames unfreeze it", () => {
    let view = defaultView("timing");
    view = viewWithFrame(view, fixtures["timing-pause"]);
    expect(view.frozen).toBe(true);
    view = viewWithFrame(view, fixtures["timing"]);
    expect(view.frozen).toBe(false);
    view = viewWithFrame(view, fixtures["timing-final"]);
    expect(view.frozen).toBe(true);
  });
});

describe("control messages", () => {
  it("builds the engine's control verbs", () => {
    expect(controlMessage({ action: "set_tolerance", tolerance_beats: 0.1 }))
      .toEqual({ control: { tolerance_beats: 0.1 } });
    expect(controlMessage({ action: "set_bpm", bpm: 90 }))
      .toEqual({ control: { bpm: 90 } });
    expect(controlMessage({
      action: "set_progression", chords: "C Am F G", key: "C", mode: "major",
    })).toEqual({ control: { chords: "C Am F G", key: "C", mode: "major" } });
    expect(controlMessage({ action: "set_facet_size", bars_per_facet: 2 }))
      .toEqual({ control: { bars_per_facet: 2 } });
  });

  it("sends immediately while connected", () => {
    const sent: string[] = [];
    const channel = new ControlChannel((line) => {
      sent.push(line);
      return true;
    });
    const view = { ...defaultView("timing"), connection: "connected" as const };
    const result = channel.dispatch(view, {
      action: "set_tolerance", tolerance_beats: 0.1,
    });
    expect(result.sent).toBe(true);
    expect(sent).toEqual(['{"control":{"tolerance_beats":0.1}}']);
    expect(channel.pending).toBe(0);
  });

  it("queues while disconnected and flushes on reconnect, with a banner", () => {
    const sent: string[] = [];
    const channel = new ControlChannel((line) => {
      sent.push(line);
      return true;
    });
    let view: ReturnType<typeof defaultView> = {
      ...defaultView("timing"), connection: "disconnected",
    };
    const result = channel.dispatch(view, { action: "set_bpm", bpm: 100 });
    expect(result.sent).toBe(false);
    expect(result.queued).toBe(true);
    expect(result.view.banner).toContain("queued");
    expect(channel.pending).toBe(1);
    expect(sent).toEqual([]);

    view = { ...result.view, connection: "connected" };
    view = channel.flush(view);
    expect(sent).toEqual(['{"control":{"bpm":100}}']);
    expect(channel.pending).toBe(0);
    expect(view.banner).toBeNull();
  });

  it("view actions apply instantly and stay legal", () => {
    const view = defaultView("timing");
    const next = applyViewAction(view, { action: "set_layout", layout: "circular" });
    expect(next.layout).toBe("circular");
    const other = applyViewAction(
      { ...view, kind: "duration" },
      { action: "set_layout", layout: "circular" },
    );
    expect(other.layout).toBe("rows"); // illegal for duration, sanitized away
  });
});
