/** Web MIDI capture: forward raw channel-voice messages to the engine as
 * producer events with timestamps in seconds. */

import type { LineTransport } from "./connection.js";

export interface MidiCapture {
  inputs: string[];
  stop(): void;
}

export async function captureMidi(
  transport: LineTransport,
  onDevice?: (names: string[]) => void,
): Promise<MidiCapture> {
  if (!("requestMIDIAccess" in navigator)) {
    throw new Error("this browser has no MIDI capability");
  }
  const access = await navigator.requestMIDIAccess({ sysex: false });
  const started = performance.now();
  const names: string[] = [];
  const handlers: [MIDIInput, (e: Event) => void][] = [];

  for (const input of access.inputs.values()) {
    names.push(input.name ?? "unnamed device");
    const handler = (event: Event) => {
      const data = (event as MIDIMessageEvent).data;
      if (!data || data.length < 3) return;
      const [status, data1, data2] = data;
      if (status < 0x80 || status > 0xef) return;
      transport.send(JSON.stringify({
        status,
        data1,
        data2,
        timestamp: (performance.now() - started) / 1000,
      }));
    };
    input.addEventListener("midimessage", handler);
    handlers.push([input, handler]);
  }
  onDevice?.(names);
  return {
    inputs: names,
    stop: () => {
      for (const [input, handler] of handlers) {
        input.removeEventListener("midimessage", handler);
      }
    },
  };
}
