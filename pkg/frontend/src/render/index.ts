/** render(frame, view) -> Scene: pure, deterministic, schema-checked. */

import { THEMES, COLORBLIND_SAFE } from "../colors.js";
import { scene, Scene } from "../scene.js";
import {
  AnalysisFrame,
  DurationSection,
  FretboardSection,
  HarmonySection,
  RhythmSection,
  SUPPORTED_SCHEMA_VERSION,
  TimingSection,
} from "../types.js";
import { sanitizeView, ViewState } from "../view.js";
import { renderDuration } from "./duration.js";
import { renderFretboard } from "./fretboard.js";
import { renderHarmony } from "./harmony.js";
import { renderRhythm } from "./rhythm.js";
import { renderTiming } from "./timing.js";

function banner(view: ViewState, theme: typeof COLORBLIND_SAFE, text: string): Scene {
  const out = scene(view.width, view.height, theme.background);
  out.nodes.push({
    type: "rect", x: 0, y: 0, w: view.width, h: 36, fill: theme.warn,
    alpha: 0.9,
  });
  out.nodes.push({
    type: "text", x: view.width / 2, y: 23, text, fill: "#ffffff", size: 13,
    align: "center",
  });
  return out;
}

export function render(frame: AnalysisFrame, rawView: ViewState): Scene {
  const view = sanitizeView({ ...rawView, kind: frame.kind });
  const theme = THEMES[view.theme] ?? COLORBLIND_SAFE;

  if (frame.schema_version !== SUPPORTED_SCHEMA_VERSION) {
    return banner(
      view, theme,
      `engine speaks schema ${frame.schema_version}; this client understands ${SUPPORTED_SCHEMA_VERSION}`,
    );
  }
  if (frame.type === "warning" || frame.summary === undefined) {
    return banner(view, theme, frame.reason ?? "warning");
  }

  let out: Scene;
  switch (frame.kind) {
    case "duration":
      out = renderDuration(frame.summary as DurationSection, view, theme);
      break;
    case "timing":
      out = renderTiming(frame.summary as TimingSection, view, theme);
      break;
    case "accents":
      out = renderRhythm(frame.summary as RhythmSection, view, theme);
      break;
    case "chord-progression":
      out = renderHarmony(frame.summary as HarmonySection, view, theme);
      break;
    case "fretboard":
      out = renderFretboard(frame.summary as FretboardSection, view, theme);
      break;
  }

  if (frame.type === "pause" || frame.type === "final") {
    // Freeze-on-pause: the completed take stays up with a quiet banner.
    out.nodes.push({
      type: "rect", x: 0, y: out.height - 28, w: out.width, h: 28,
      fill: theme.ink, alpha: 0.85,
    });
    out.nodes.push({
      type: "text", x: out.width / 2, y: out.height - 10,
      text: frame.type === "final"
        ? "take complete"
        : `paused (${frame.reason ?? "silence"}) — showing the finished exercise`,
      fill: "#ffffff", size: 12, align: "center",
    });
  }
  return out;
}
