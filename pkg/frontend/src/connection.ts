/** Frame transport: newline-delimited JSON over any line-oriented channel.
 *
 * The UI never blocks on the engine: frames overwrite `latest`, and the
 * render loop draws whatever is newest when it gets around to it.
 */

import { AnalysisFrame, parseFrame } from "./types.js";

export interface LineTransport {
  send(line: string): boolean;
  close(): void;
}

export interface ConnectionEvents {
  onFrame?: (frame: AnalysisFrame) => void;
  onStatus?: (status: "connecting" | "connected" | "disconnected") => void;
  onError?: (message: string) => void;
}

export class FrameFeed {
  latest: AnalysisFrame | null = null;
  dropped = 0;
  private dirty = false;
  private buffer = "";

  constructor(private events: ConnectionEvents = {}) {}

  /** Feed raw transport data; emits whole lines as frames. */
  push(data: string): void {
    this.buffer += data;
    let at: number;
    while ((at = this.buffer.indexOf("\n")) >= 0) {
      const line = this.buffer.slice(0, at).trim();
      this.buffer = this.buffer.slice(at + 1);
      if (line) this.pushLine(line);
    }
  }

  pushLine(line: string): void {
    let frame: AnalysisFrame;
    try {
      frame = parseFrame(line);
    } catch (err) {
      this.events.onError?.(`unreadable frame: ${String(err)}`);
      return;
    }
    if (this.latest !== null && this.dirty) {
      this.dropped += 1; // newest wins; the skipped frame is gone
    }
    this.latest = frame;
    this.dirty = true;
    this.events.onFrame?.(frame);
  }

  /** The newest frame if one arrived since the last take, else null. */
  take(): AnalysisFrame | null {
    if (!this.dirty) return null;
    this.dirty = false;
    return this.latest;
  }
}

/** Browser transport: WebSocket to the TCP bridge in front of the engine. */
export function connectWebSocket(
  url: string,
  role: "consumer" | "producer",
  feed: FrameFeed,
  events: ConnectionEvents = {},
): LineTransport {
  const ws = new WebSocket(url);
  events.onStatus?.("connecting");
  ws.onopen = () => {
    ws.send(JSON.stringify({ hello: role }) + "\n");
    events.onStatus?.("connected");
  };
  ws.onmessage = (msg) => feed.push(String(msg.data));
  ws.onclose = () => events.onStatus?.("disconnected");
  ws.onerror = () => events.onError?.("websocket error");
  return {
    send: (line: string) => {
      if (ws.readyState !== WebSocket.OPEN) return false;
      ws.send(line.endsWith("\n") ? line : line + "\n");
      return true;
    },
    close: () => ws.close(),
  };
}
