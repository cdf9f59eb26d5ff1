"""Live session service: one producer of raw MIDI events, many frame readers.

Wire protocol (newline-delimited JSON over a local TCP socket):

- A client's first line declares its role: ``{"hello": "producer"}`` or
  ``{"hello": "consumer"}``.
- The producer then sends one event per line as
  ``{"status": int, "data1": int, "data2": int, "timestamp": seconds}``.
- Consumers receive AnalysisFrame lines.  A frame goes out on every note
  release, at most every 100 ms while notes are held, as a pause frame
  after 2 s of silence, and as a final frame when the producer leaves.
- Any client may send ``{"control": {...}}`` to steer the drill mid-session
  (tolerance_beats, bpm, subdivision, cycle_beats, bars_per_facet, chords);
  the next frame is recomputed under the new configuration and doubles as
  the acknowledgment.

Malformed producer lines never kill the session; they surface as warning
frames.  A slow consumer drops old frames but always gets the newest.
"""
from __future__ import annotations

import dataclasses
import json
import socket
import threading
import time
from collections import deque

from ..errors import TactusError
from ..harmony import ChordProgression
from ..midi.events import LivePairer, decode_live_event
from .analyze import analyze_stream
from .config import DrillConfig
from .frames import AnalysisFrame, event_to_dict

HELD_FRAME_INTERVAL = 0.100
SILENCE_PAUSE_AFTER = 2.0
_TICK = 0.025
CONSUMER_QUEUE_FRAMES = 64


class PortBusy(TactusError, OSError):
    pass


class _Consumer:
    def __init__(self, sock: socket.socket):
        self.sock = sock
        self.queue: deque[str] = deque(maxlen=CONSUMER_QUEUE_FRAMES)
        self.ready = threading.Condition()
        self.alive = True

    def push(self, line: str) -> None:
        with self.ready:
            self.queue.append(line)  # maxlen evicts the oldest when full
            self.ready.notify()

    def run(self) -> None:
        try:
            while True:
                with self.ready:
                    while not self.queue and self.alive:
                        self.ready.wait(timeout=0.5)
                    if not self.alive and not self.queue:
                        return
                    line = self.queue.popleft()
                self.sock.sendall(line.encode() + b"\n")
        except OSError:
            pass
        finally:
            self.sock.close()

    def stop(self) -> None:
        with self.ready:
            self.alive = False
            self.ready.notify()


class SessionServer:
    """A drill session bound to a local port.  Use as a context manager."""

    def __init__(self, config: DrillConfig, port: int = 0, host: str = "127.0.0.1"):
        self.config = config
        self._listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        self._listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        try:
            self._listener.bind((host, port))
        except OSError as err:
            self._listener.close()
            raise PortBusy(f"cannot bind to {host}:{port}: {err}") from None
        self._listener.listen()
        self.host, self.port = self._listener.getsockname()

        self._lock = threading.Lock()
        self._pairer = LivePairer(profile=config.instrument)
        self._consumers: list[_Consumer] = []
        self._threads: list[threading.Thread] = []
        self._seq = 0
        self._delta: list[dict] = []
        self._producer_connected = False
        self._last_frame_at = 0.0
        self._last_event_at = time.monotonic()
        self._paused = True  # nothing played yet; no pause frame before first note
        self._closing = False
        self._latest_frame: str | None = None

        self._spawn(self._accept_loop)
        self._spawn(self._ticker)

    # -- lifecycle ---------------------------------------------------------

    def __enter__(self) -> "SessionServer":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def close(self) -> None:
        self._closing = True
        try:
            self._listener.close()
        except OSError:
            pass
        with self._lock:
            consumers = list(self._consumers)
        for consumer in consumers:
            consumer.stop()
        for thread in self._threads:
            thread.join(timeout=2.0)

    def _spawn(self, target, *args) -> None:
        thread = threading.Thread(target=target, args=args, daemon=True)
        thread.start()
        self._threads.append(thread)

    # -- frame emission ----------------------------------------------------

    def _emit(self, frame_type: str, reason: str | None = None) -> None:
        with self._lock:
            snapshot = self._pairer.snapshot()
            delta, self._delta = self._delta, []
            seq = self._seq
            self._seq += 1
        frame = AnalysisFrame(
            seq=seq,
            wall_time=time.time(),
            kind=self.config.kind,
            frame_type=frame_type,
            summary=analyze_stream(self.config, snapshot),
            events_delta=tuple(delta),
            reason=reason,
        )
        self._broadcast(frame.encode())
        self._last_frame_at = time.monotonic()

    def _emit_warning(self, reason: str) -> None:
        with self._lock:
            seq = self._seq
            self._seq += 1
        frame = AnalysisFrame(
            seq=seq, wall_time=time.time(), kind=self.config.kind,
            frame_type="warning", reason=reason,
        )
        self._broadcast(frame.encode())

    def _broadcast(self, line: str) -> None:
        with self._lock:
            self._latest_frame = line
            consumers = list(self._consumers)
        for consumer in consumers:
            consumer.push(line)

    # -- socket handling ---------------------------------------------------

    def _accept_loop(self) -> None:
        # A timeout lets the loop notice close(); a blocking accept would not
        # reliably wake when another thread closes the listener.
        self._listener.settimeout(0.25)
        while not self._closing:
            try:
                sock, _ = self._listener.accept()
            except socket.timeout:
                continue
            except OSError:
                return
            self._spawn(self._handle_client, sock)

    def _handle_client(self, sock: socket.socket) -> None:
        reader = sock.makefile("r", encoding="utf-8", newline="\n")
        hello_line = reader.readline()
        try:
            role = json.loads(hello_line).get("hello")
        except (json.JSONDecodeError, AttributeError):
            role = None
        if role == "consumer":
            consumer = _Consumer(sock)
            with self._lock:
                self._consumers.append(consumer)
                latest = self._latest_frame
            if latest is not None:
                consumer.push(latest)  # late joiners still get current state
            self._spawn(self._control_reader, reader)
            consumer.run()
            with self._lock:
                if consumer in self._consumers:
                    self._consumers.remove(consumer)
        elif role == "producer":
            with self._lock:
                if self._producer_connected:
                    sock.sendall(b'{"error":"producer already connected"}\n')
                    sock.close()
                    return
                self._producer_connected = True
            try:
                self._producer_loop(reader)
            finally:
                self._emit("final", reason="producer disconnected")
                sock.close()
        else:
            sock.sendall(b'{"error":"first line must declare a role"}\n')
            sock.close()

    def _control_reader(self, reader) -> None:
        """Consumers may steer the session; anything else they send warns."""
        try:
            for line in reader:
                line = line.strip()
                if not line or self._closing:
                    continue
                try:
                    doc = json.loads(line)
                except json.JSONDecodeError as err:
                    self._emit_warning(f"malformed control dropped: {err}")
                    continue
                if isinstance(doc, dict) and "control" in doc:
                    self._apply_control(doc["control"])
                else:
                    self._emit_warning("unexpected message from consumer dropped")
        except OSError:
            pass

    def _apply_control(self, changes) -> None:
        """Rebuild the drill configuration and acknowledge with a fresh frame."""
        if not isinstance(changes, dict):
            self._emit_warning("control payload must be an object")
            return
        config = self.config
        try:
            grid_fields = {
                k: changes[k] for k in
                ("bpm", "subdivision", "cycle_beats", "tolerance_beats",
                 "beats_per_bar") if k in changes
            }
            if grid_fields:
                config = dataclasses.replace(
                    config, grid=dataclasses.replace(config.grid, **grid_fields))
            if "bars_per_facet" in changes:
                config = dataclasses.replace(
                    config, fretboard=dataclasses.replace(
                        config.fretboard,
                        bars_per_facet=int(changes["bars_per_facet"])))
            if "chords" in changes:
                progression = ChordProgression.parse(
                    changes.get("key", "C"), changes.get("mode", "major"),
                    changes["chords"])
                config = dataclasses.replace(config, harmony=progression)
            unknown = set(changes) - {
                "bpm", "subdivision", "cycle_beats", "tolerance_beats",
                "beats_per_bar", "bars_per_facet", "chords", "key", "mode"}
            if unknown:
                raise ValueError(f"unknown control fields {sorted(unknown)}")
        except (TypeError, ValueError) as err:
            self._emit_warning(f"control rejected: {err}")
            return
        with self._lock:
            self.config = config
        self._emit("frame", reason="control")

    def _producer_loop(self, reader) -> None:
        for line in reader:
            if self._closing:
                return
            line = line.strip()
            if not line:
                continue
            try:
                doc = json.loads(line)
            except json.JSONDecodeError as err:
                self._emit_warning(f"malformed event dropped: {err}")
                continue
            if isinstance(doc, dict) and "control" in doc:
                self._apply_control(doc["control"])
                continue
            try:
                raw = decode_live_event(
                    doc["status"], doc["data1"], doc["data2"], doc["timestamp"])
            except (KeyError, TypeError, ValueError) as err:
                self._emit_warning(f"malformed event dropped: {err}")
                continue
            if raw is None:
                continue  # valid but not a note message
            with self._lock:
                closed = self._pairer.feed(raw)
                if closed is not None:
                    self._delta.append(event_to_dict(closed))
                elif raw[0] == "on":
                    self._delta.append({
                        "onset": raw[4], "release": None, "pitch": raw[1],
                        "velocity": raw[2], "channel": raw[3],
                        "voice": self._pairer.profile.voice_for(raw[1], raw[3]).text,
                    })
                self._last_event_at = time.monotonic()
                self._paused = False
            if closed is not None:
                self._emit("frame")

    def _ticker(self) -> None:
        while not self._closing:
            time.sleep(_TICK)
            now = time.monotonic()
            with self._lock:
                open_notes = self._pairer.open_count
                idle = now - self._last_event_at
                paused = self._paused
            if open_notes and now - self._last_frame_at >= HELD_FRAME_INTERVAL:
                self._emit("frame")
            elif not paused and idle >= SILENCE_PAUSE_AFTER:
                with self._lock:
                    self._paused = True
                self._emit("pause", reason="silence")


def serve(config: DrillConfig, port: int = 0) -> SessionServer:
    """Start a session service; returns the running server (bind errors raise
    PortBusy)."""
    return SessionServer(config, port=port)
