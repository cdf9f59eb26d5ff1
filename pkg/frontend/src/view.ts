/** View state: the render parameters the musician can steer, with per-drill
 * legality (a circular layout is a timing thing, accent sizing an accents
 * thing, and so on). */

import type { AnalysisFrame, DrillKind } from "./types.js";

export type ConnectionStatus = "connecting" | "connected" | "disconnected";

export interface ViewState {
  kind: DrillKind;
  theme: string;
  layout: "rows" | "circular";
  aggregation: "overplot" | "histogram" | "density";
  accentSize: "quantized" | "continuous";
  durationEncoding: "pie" | "bar";
  harmonyColors: "fit" | "duration";
  jitter: boolean;
  pieDiameter: number;
  width: number;
  height: number;
  connection: ConnectionStatus;
  frozen: boolean;
  latest: AnalysisFrame | null;
  banner: string | null;
}

export function defaultView(kind: DrillKind = "timing"): ViewState {
  return {
    kind,
    theme: "colorblind-safe",
    layout: "rows",
    aggregation: "density",
    accentSize: "quantized",
    durationEncoding: "pie",
    harmonyColors: "fit",
    jitter: true,
    pieDiameter: 200,
    width: 960,
    height: 640,
    connection: "connecting",
    frozen: false,
    latest: null,
    banner: null,
  };
}

/** Which render parameters each drill actually uses. */
export const LEGAL_PARAMS: Record<DrillKind, (keyof ViewState)[]> = {
  duration: ["durationEncoding", "pieDiameter"],
  timing: ["layout", "aggregation"],
  accents: ["accentSize"],
  "chord-progression": ["harmonyColors"],
  fretboard: ["jitter"],
};

const DRILL_DEFAULTS = defaultView();

/** Reset parameters that are illegal for the view's drill to their defaults,
 * so a stale control (say, circular layout after switching to a duration
 * drill) can never leak into a renderer. */
export function sanitizeView(view: ViewState): ViewState {
  const legal = new Set<keyof ViewState>(LEGAL_PARAMS[view.kind]);
  const out = { ...view };
  const steerable: (keyof ViewState)[] = [
    "layout", "aggregation", "accentSize", "durationEncoding",
    "harmonyColors", "jitter", "pieDiameter",
  ];
  for (const param of steerable) {
    if (!legal.has(param)) {
      (out as Record<string, unknown>)[param] = DRILL_DEFAULTS[param];
    }
  }
  return out;
}

export function viewWithFrame(view: ViewState, frame: AnalysisFrame): ViewState {
  const next = { ...view, latest: frame };
  if (frame.type === "pause" || frame.type === "final") {
    // The display stops moving once the musician pauses.
    next.frozen = true;
  } else if (frame.type === "frame") {
    next.frozen = false;
  }
  if (frame.kind !== view.kind) {
    next.kind = frame.kind;
    return sanitizeView(next);
  }
  return next;
}
