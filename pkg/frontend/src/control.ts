/** User steering: local view changes apply instantly; drill-parameter
 * changes become control messages for the service, applied optimistically
 * and reconciled by the acknowledging frame.  While disconnected, control
 * messages queue (bounded) and the banner says so. */

import type { ViewState } from "./view.js";
import { sanitizeView } from "./view.js";

export type ControlAction =
  | { action: "set_tolerance"; tolerance_beats: number }
  | { action: "set_bpm"; bpm: number }
  | { action: "set_subdivision"; subdivision: number }
  | { action: "set_cycle"; cycle_beats: number }
  | { action: "set_progression"; chords: string; key?: string; mode?: string }
  | { action: "set_facet_size"; bars_per_facet: number };

export type ViewAction =
  | { action: "set_layout"; layout: ViewState["layout"] }
  | { action: "set_aggregation"; aggregation: ViewState["aggregation"] }
  | { action: "set_accent_size"; accentSize: ViewState["accentSize"] }
  | { action: "set_duration_encoding"; durationEncoding: ViewState["durationEncoding"] }
  | { action: "set_harmony_colors"; harmonyColors: ViewState["harmonyColors"] }
  | { action: "set_jitter"; jitter: boolean }
  | { action: "set_theme"; theme: string };

/** The wire message for a drill-parameter change. */
export function controlMessage(action: ControlAction): { control: Record<string, unknown> } {
  switch (action.action) {
    case "set_tolerance":
      return { control: { tolerance_beats: action.tolerance_beats } };
    case "set_bpm":
      return { control: { bpm: action.bpm } };
    case "set_subdivision":
      return { control: { subdivision: action.subdivision } };
    case "set_cycle":
      return { control: { cycle_beats: action.cycle_beats } };
    case "set_progression": {
      const control: Record<string, unknown> = { chords: action.chords };
      if (action.key) control.key = action.key;
      if (action.mode) control.mode = action.mode;
      return { control };
    }
    case "set_facet_size":
      return { control: { bars_per_facet: action.bars_per_facet } };
  }
}

export function applyViewAction(view: ViewState, action: ViewAction): ViewState {
  const next = { ...view } as ViewState;
  switch (action.action) {
    case "set_layout":
      next.layout = action.layout;
      break;
    case "set_aggregation":
      next.aggregation = action.aggregation;
      break;
    case "set_accent_size":
      next.accentSize = action.accentSize;
      break;
    case "set_duration_encoding":
      next.durationEncoding = action.durationEncoding;
      break;
    case "set_harmony_colors":
      next.harmonyColors = action.harmonyColors;
      break;
    case "set_jitter":
      next.jitter = action.jitter;
      break;
    case "set_theme":
      next.theme = action.theme;
      break;
  }
  return sanitizeView(next);
}

export interface SendResult {
  sent: boolean;
  queued: boolean;
  view: ViewState;
}

const QUEUE_LIMIT = 32;

/** Queues drill controls while the connection is down; flushes on demand. */
export class ControlChannel {
  private queue: ControlAction[] = [];

  constructor(private send: (line: string) => boolean) {}

  dispatch(view: ViewState, action: ControlAction): SendResult {
    const line = JSON.stringify(controlMessage(action));
    if (view.connection === "connected" && this.send(line)) {
      return { sent: true, queued: false, view };
    }
    if (this.queue.length >= QUEUE_LIMIT) {
      this.queue.shift();
    }
    this.queue.push(action);
    return {
      sent: false,
      queued: true,
      view: { ...view, banner: "offline: change queued until reconnect" },
    };
  }

  flush(view: ViewState): ViewState {
    if (view.connection !== "connected") {
      return view;
    }
    while (this.queue.length) {
      const action = this.queue.shift()!;
      if (!this.send(JSON.stringify(controlMessage(action)))) {
        this.queue.unshift(action);
        break;
      }
    }
    return this.queue.length ? view : { ...view, banner: null };
  }

  get pending(): number {
    return this.queue.length;
  }
}
