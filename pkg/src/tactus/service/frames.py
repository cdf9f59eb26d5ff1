"""Analysis frames: the newline-delimited JSON packets streamed to clients.

Every frame is a self-describing snapshot (drill kind, schema version, full
current summary), never a delta a client must replay, so slow consumers can
drop intermediate frames and still render the newest one.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import TactusError
from ..midi.events import NoteEvent, VoiceTag
from .report import SCHEMA_VERSION

FRAME_TYPES = ("frame", "pause", "warning", "final")


class FrameError(TactusError, ValueError):
    pass


def event_to_dict(event: NoteEvent) -> dict:
    return {
        "onset": event.onset,
        "release": event.release,
        "pitch": event.pitch,
        "velocity": event.velocity,
        "channel": event.channel,
        "voice": event.voice.text,
    }


def event_from_dict(doc: dict) -> NoteEvent:
    return NoteEvent(
        onset=doc["onset"],
        release=doc.get("release"),
        pitch=doc["pitch"],
        velocity=doc["velocity"],
        channel=doc["channel"],
        voice=VoiceTag.parse(doc.get("voice", "keyboard")),
    )


@dataclass(frozen=True)
class AnalysisFrame:
    seq: int
    wall_time: float
    kind: str
    frame_type: str = "frame"
    summary: dict | None = None
    events_delta: tuple[dict, ...] = ()
    reason: str | None = None
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self) -> None:
        if self.frame_type not in FRAME_TYPES:
            raise FrameError(f"unknown frame type {self.frame_type!r}")
        if self.seq < 0:
            raise FrameError(f"seq must be >= 0, got {self.seq}")

    def encode(self) -> str:
        doc = {
            "seq": self.seq,
            "wall_time": self.wall_time,
            "kind": self.kind,
            "type": self.frame_type,
            "schema_version": self.schema_version,
            "events_delta": list(self.events_delta),
        }
        if self.summary is not None:
            doc["summary"] = self.summary
        if self.reason is not None:
            doc["reason"] = self.reason
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def decode(cls, line: str) -> "AnalysisFrame":
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as err:
            raise FrameError(f"frame is not valid JSON: {err}") from None
        for key in ("seq", "wall_time", "kind", "type", "schema_version"):
            if key not in doc:
                raise FrameError(f"frame missing {key!r}")
        return cls(
            seq=doc["seq"],
            wall_time=doc["wall_time"],
            kind=doc["kind"],
            frame_type=doc["type"],
            summary=doc.get("summary"),
            events_delta=tuple(doc.get("events_delta", [])),
            reason=doc.get("reason"),
            schema_version=doc["schema_version"],
        )
