/** Browser entry point: connect to the bridge, draw the newest frame, wire
 * the steering controls and local MIDI capture. */

import { drawScene } from "./canvas.js";
import { connectWebSocket, FrameFeed, LineTransport } from "./connection.js";
import { ControlChannel, applyViewAction, ViewAction } from "./control.js";
import { render } from "./render/index.js";
import { scene } from "./scene.js";
import { captureMidi } from "./midi.js";
import { defaultView, viewWithFrame, ViewState } from "./view.js";

const WS_URL = (window as unknown as { TACTUS_WS?: string }).TACTUS_WS
  ?? "ws://127.0.0.1:9601";

let view: ViewState = defaultView();
let consumer: LineTransport | null = null;
let producer: LineTransport | null = null;

const canvas = document.getElementById("stage") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const status = document.getElementById("status")!;

const feed = new FrameFeed({
  onFrame: (frame) => {
    view = viewWithFrame(view, frame);
  },
  onError: (message) => {
    view = { ...view, banner: message };
  },
});

const controls = new ControlChannel((line) => consumer?.send(line) ?? false);

function loop(): void {
  const frame = feed.take();
  if (frame !== null) {
    drawScene(ctx, render(frame, view));
  } else if (view.latest === null) {
    const empty = scene(view.width, view.height);
    empty.nodes.push({
      type: "text", x: view.width / 2, y: view.height / 2,
      text: `waiting for frames (${view.connection})`,
      fill: "#999999", size: 14, align: "center",
    });
    drawScene(ctx, empty);
  }
  requestAnimationFrame(loop);
}

function redraw(): void {
  if (view.latest) drawScene(ctx, render(view.latest, view));
}

function onViewAction(action: ViewAction): void {
  view = applyViewAction(view, action);
  redraw();
}

function bind(id: string, handler: (value: string) => void): void {
  const el = document.getElementById(id) as HTMLInputElement | HTMLSelectElement;
  el?.addEventListener("change", () => handler(el.value));
}

bind("layout", (v) => onViewAction({ action: "set_layout", layout: v as ViewState["layout"] }));
bind("aggregation", (v) => onViewAction({ action: "set_aggregation", aggregation: v as ViewState["aggregation"] }));
bind("accent-size", (v) => onViewAction({ action: "set_accent_size", accentSize: v as ViewState["accentSize"] }));
bind("duration-encoding", (v) => onViewAction({ action: "set_duration_encoding", durationEncoding: v as ViewState["durationEncoding"] }));
bind("harmony-colors", (v) => onViewAction({ action: "set_harmony_colors", harmonyColors: v as ViewState["harmonyColors"] }));
bind("theme", (v) => onViewAction({ action: "set_theme", theme: v }));
bind("jitter", (v) => onViewAction({ action: "set_jitter", jitter: v === "on" }));

bind("tolerance", (v) => {
  const result = controls.dispatch(view, {
    action: "set_tolerance", tolerance_beats: Number(v),
  });
  view = result.view;
});
bind("bpm", (v) => {
  view = controls.dispatch(view, { action: "set_bpm", bpm: Number(v) }).view;
});
bind("subdivision", (v) => {
  view = controls.dispatch(view, {
    action: "set_subdivision", subdivision: Number(v),
  }).view;
});
bind("progression", (v) => {
  view = controls.dispatch(view, { action: "set_progression", chords: v }).view;
});
bind("facet-size", (v) => {
  view = controls.dispatch(view, {
    action: "set_facet_size", bars_per_facet: Number(v),
  }).view;
});

document.getElementById("capture")?.addEventListener("click", async () => {
  producer ??= connectWebSocket(WS_URL, "producer", new FrameFeed());
  try {
    const capture = await captureMidi(producer);
    status.textContent = `forwarding: ${capture.inputs.join(", ") || "no devices"}`;
  } catch (err) {
    view = { ...view, banner: String(err) };
  }
});

consumer = connectWebSocket(WS_URL, "consumer", feed, {
  onStatus: (s) => {
    view = { ...view, connection: s };
    status.textContent = s;
    if (s === "connected") view = controls.flush(view);
  },
});
loop();
