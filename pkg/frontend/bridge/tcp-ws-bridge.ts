/** TCP <-> WebSocket bridge.
 *
 * Browsers cannot open raw TCP sockets, so each WebSocket client gets its
 * own TCP connection to the engine's session service; lines pass through
 * unchanged in both directions.
 *
 * Usage: node tcp-ws-bridge.js [--tcp-port 9600] [--ws-port 9601]
 */

import net from "node:net";
import process from "node:process";
import { WebSocketServer, WebSocket } from "ws";

function argValue(name: string, fallback: number): number {
  const at = process.argv.indexOf(`--${name}`);
  if (at >= 0 && process.argv[at + 1]) {
    const value = Number(process.argv[at + 1]);
    if (!Number.isFinite(value)) {
      console.error(`bad value for --${name}`);
      process.exit(2);
    }
    return value;
  }
  return fallback;
}

const tcpPort = argValue("tcp-port", 9600);
const wsPort = argValue("ws-port", 9601);
const tcpHost = "127.0.0.1";

const server = new WebSocketServer({ host: "127.0.0.1", port: wsPort });
console.log(`bridge: ws://127.0.0.1:${wsPort} <-> tcp ${tcpHost}:${tcpPort}`);

server.on("connection", (ws: WebSocket) => {
  const tcp = net.createConnection({ host: tcpHost, port: tcpPort });
  const pendingLines: string[] = [];
  let tcpReady = false;

  tcp.on("connect", () => {
    tcpReady = true;
    for (const line of pendingLines.splice(0)) tcp.write(line);
  });
  tcp.on("data", (chunk) => {
    if (ws.readyState === WebSocket.OPEN) ws.send(chunk.toString("utf-8"));
  });
  tcp.on("error", (err) => {
    if (ws.readyState === WebSocket.OPEN) {
      ws.send(JSON.stringify({ error: `engine unreachable: ${err.message}` }) + "\n");
    }
    ws.close();
  });
  tcp.on("close", () => ws.close());

  ws.on("message", (data) => {
    const text = data.toString();
    const line = text.endsWith("\n") ? text : text + "\n";
    if (tcpReady) tcp.write(line);
    else pendingLines.push(line);
  });
  ws.on("close", () => tcp.destroy());
});
