/** Frame-replay determinism: the same log renders the same scenes, twice. */
import { describe, expect, it } from "vitest";

import { render } from "../src/render/index.js";
import { sceneKey } from "../src/scene.js";
import { defaultView } from "../src/view.js";
import { loadReplayLog } from "./helpers.js";

describe("frame replay", () => {
  it("renders a 100-frame log to identical scene graphs on both passes", () => {
    const log = loadReplayLog();
    expect(log.length).toBe(100);
    const view = defaultView("timing");

    const first = log.map((frame) => sceneKey(render(frame, view)));
    const second = log.map((frame) => sceneKey(render(frame, view)));
    expect(second).toEqual(first);
  });

  it("is deterministic across every drill kind and layout variant", () => {
    const log = loadReplayLog().slice(0, 10);
    for (const layout of ["rows", "circular"] as const) {
      for (const aggregation of ["overplot", "histogram", "density"] as const) {
        const view = { ...defaultView("timing"), layout, aggregation };
        const a = log.map((f) => sceneKey(render(f, view)));
        const b = log.map((f) => sceneKey(render(f, view)));
        expect(b).toEqual(a);
      }
    }
  });

  it("scene output depends only on (frame, view), not call history", () => {
    const log = loadReplayLog();
    const view = defaultView("timing");
    const isolated = sceneKey(render(log[57], view));
    // Render a pile of other frames in between, then the same one again.
    for (const frame of log.slice(0, 30)) render(frame, view);
    expect(sceneKey(render(log[57], view))).toBe(isolated);
  });
});
