"""Paired note events, voice tagging, and live-stream pairing.

Ingest never fails on odd input: anomalies (unmatched note-offs,
zero-length notes) become warnings so a live stream keeps flowing.
"""
from __future__ import annotations

import bisect
import threading
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .percussion import GM_PERCUSSION, DrumVoice

# Channels 0-5 map to strings 1-6: the common mono-mode convention of MIDI
# guitar pickups.  Kits differ, so this is only the default.
DEFAULT_STRING_CHANNELS: dict[int, int] = {ch: ch + 1 for ch in range(6)}
GM_DRUM_CHANNEL = 9


@dataclass(frozen=True)
class VoiceTag:
    """Which instrument voice produced a note."""

    kind: str  # "keyboard" | "drum" | "guitar_string" | "other"
    drum: DrumVoice | None = None
    string: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("keyboard", "drum", "guitar_string", "other"):
            raise ValueError(f"unknown voice kind {self.kind!r}")
        if self.kind == "drum" and self.drum is None:
            raise ValueError("drum voice requires a DrumVoice")
        if self.kind == "guitar_string" and not (
            self.string is not None and 1 <= self.string <= 6
        ):
            raise ValueError(f"guitar string must be 1-6, got {self.string}")

    @classmethod
    def keyboard(cls) -> "VoiceTag":
        return cls("keyboard")

    @classmethod
    def of_drum(cls, voice: DrumVoice) -> "VoiceTag":
        return cls("drum", drum=voice)

    @classmethod
    def guitar_string(cls, string: int) -> "VoiceTag":
        return cls("guitar_string", string=string)

    @classmethod
    def other(cls) -> "VoiceTag":
        return cls("other")

    @property
    def text(self) -> str:
        if self.kind == "drum":
            return f"drum:{self.drum.value}"
        if self.kind == "guitar_string":
            return f"string:{self.string}"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "VoiceTag":
        head, _, arg = text.partition(":")
        if head == "drum":
            return cls.of_drum(DrumVoice(arg))
        if head == "string":
            return cls.guitar_string(int(arg))
        return cls(head)


@dataclass(frozen=True)
class NoteEvent:
    """One paired note: onset/release in seconds, release None while held."""

    onset: float
    release: float | None
    pitch: int
    velocity: int
    channel: int
    voice: VoiceTag = VoiceTag("keyboard")

    def __post_init__(self) -> None:
        if self.onset < 0:
            raise ValueError(f"onset must be >= 0, got {self.onset}")
        if self.release is not None and self.release <= self.onset:
            raise ValueError(
                f"release ({self.release}) must be strictly after onset ({self.onset})"
            )
        if not 0 <= self.pitch <= 127:
            raise ValueError(f"pitch must be 0-127, got {self.pitch}")
        if not 1 <= self.velocity <= 127:
            raise ValueError(f"velocity must be 1-127, got {self.velocity}")
        if not 0 <= self.channel <= 15:
            raise ValueError(f"channel must be 0-15, got {self.channel}")

    @property
    def duration(self) -> float | None:
        return None if self.release is None else self.release - self.onset

    @property
    def is_open(self) -> bool:
        return self.release is None

    def sort_key(self) -> tuple:
        return (self.onset, self.pitch, self.channel)


def classify_drum(pitch: int, drum_map: Mapping[int, DrumVoice] | None = None) -> DrumVoice:
    """Map a percussion key to its practice voice; unmapped keys are Other."""
    if not 0 <= pitch <= 127:
        raise ValueError(f"pitch must be 0-127, got {pitch}")
    table = GM_PERCUSSION if drum_map is None else drum_map
    return table.get(pitch, DrumVoice.OTHER)


@dataclass(frozen=True)
class InstrumentProfile:
    """How raw (pitch, channel) pairs acquire voice tags at ingest."""

    kind: str = "keyboard"  # "keyboard" | "drums" | "guitar"
    drum_channel: int = GM_DRUM_CHANNEL
    string_channels: Mapping[int, int] = field(
        default_factory=lambda: dict(DEFAULT_STRING_CHANNELS)
    )
    drum_map: Mapping[int, DrumVoice] | None = None

    def voice_for(self, pitch: int, channel: int) -> VoiceTag:
        if self.kind == "drums" or channel == self.drum_channel:
            return VoiceTag.of_drum(classify_drum(pitch, self.drum_map))
        if self.kind == "guitar" and channel in self.string_channels:
            return VoiceTag.guitar_string(self.string_channels[channel])
        return VoiceTag.keyboard()


class PerformanceStream:
    """A time-sorted sequence of note events with ingest warnings.

    One writer appends; readers take immutable snapshots via ``events`` and
    never observe a partially appended event.
    """

    def __init__(self, events: Iterable[NoteEvent] = (), device: str = "",
                 warnings: Iterable[str] = ()):
        self._events: list[NoteEvent] = sorted(events, key=NoteEvent.sort_key)
        self._keys = [e.sort_key() for e in self._events]
        self._lock = threading.Lock()
        self.device = device
        self.warnings: list[str] = list(warnings)

    def append(self, event: NoteEvent) -> None:
        with self._lock:
            at = bisect.bisect_right(self._keys, event.sort_key())
            self._events.insert(at, event)
            self._keys.insert(at, event.sort_key())

    def warn(self, message: str) -> None:
        self.warnings.append(message)

    @property
    def events(self) -> tuple[NoteEvent, ...]:
        with self._lock:
            return tuple(self._events)

    def closed_events(self) -> tuple[NoteEvent, ...]:
        return tuple(e for e in self.events if not e.is_open)

    def __len__(self) -> int:
        return len(self.events)

    def __iter__(self):
        return iter(self.events)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PerformanceStream):
            return NotImplemented
        return self.events == other.events

    def __repr__(self) -> str:
        return f"PerformanceStream({len(self)} events, {len(self.warnings)} warnings)"


RawEvent = tuple  # (kind: "on"|"off", pitch, velocity, channel, time_seconds)


def pair_note_events(
    raw: Sequence[RawEvent],
    profile: InstrumentProfile | None = None,
    device: str = "",
) -> PerformanceStream:
    """Match note-ons to note-offs into a stream of paired events.

    A note-on with velocity 0 is an off (MIDI convention).  Offs match the
    earliest still-open on with the same pitch and channel that started
    strictly earlier; unmatched offs and zero-length pairs are dropped with
    a warning, unmatched ons remain as open notes.
    """
    profile = profile or InstrumentProfile()
    stream = PerformanceStream(device=device)
    pending: dict[tuple[int, int], list[tuple[float, int]]] = {}

    def close(pitch: int, channel: int, t: float) -> None:
        opens = pending.get((pitch, channel), [])
        for i, (onset, velocity) in enumerate(opens):
            if onset < t:
                opens.pop(i)
                stream.append(NoteEvent(
                    onset=onset, release=t, pitch=pitch, velocity=velocity,
                    channel=channel, voice=profile.voice_for(pitch, channel),
                ))
                return
        if opens:
            opens.pop(0)
            stream.warn(f"zero-length note dropped: pitch {pitch} at {t:.6f}s")
        else:
            stream.warn(f"unmatched note-off dropped: pitch {pitch} at {t:.6f}s")

    for kind, pitch, velocity, channel, t in raw:
        if kind == "on" and velocity > 0:
            pending.setdefault((pitch, channel), []).append((t, velocity))
        else:
            close(pitch, channel, t)

    for (pitch, channel), opens in pending.items():
        for onset, velocity in opens:
            stream.append(NoteEvent(
                onset=onset, release=None, pitch=pitch, velocity=velocity,
                channel=channel, voice=profile.voice_for(pitch, channel),
            ))
    return stream


def decode_live_event(
    status: int, data1: int, data2: int, timestamp: float
) -> RawEvent | None:
    """Decode one raw channel-voice message into an ingest tuple.

    Returns None for valid non-note messages (controllers etc.); raises
    ValueError for bytes that are not a channel-voice message at all.
    """
    if not (0x80 <= status <= 0xEF and 0 <= data1 <= 127 and 0 <= data2 <= 127):
        raise ValueError(f"not a channel-voice message: {status:#x} {data1} {data2}")
    if timestamp < 0:
        raise ValueError(f"timestamp must be >= 0, got {timestamp}")
    kind, channel = status & 0xF0, status & 0x0F
    if kind == 0x90 and data2 > 0:
        return ("on", data1, data2, channel, timestamp)
    if kind == 0x80 or kind == 0x90:
        return ("off", data1, data2, channel, timestamp)
    return None


class LivePairer:
    """Incremental note pairing for a live session.

    feed() returns the newly closed event when a note-off completes a pair;
    snapshot() yields a PerformanceStream of everything so far, open notes
    included.
    """

    def __init__(self, profile: InstrumentProfile | None = None):
        self.profile = profile or InstrumentProfile()
        self._closed: list[NoteEvent] = []
        self._pending: dict[tuple[int, int], list[tuple[float, int]]] = {}
        self.warnings: list[str] = []

    def feed(self, event: RawEvent) -> NoteEvent | None:
        kind, pitch, velocity, channel, t = event
        if kind == "on" and velocity > 0:
            self._pending.setdefault((pitch, channel), []).append((t, velocity))
            return None
        opens = self._pending.get((pitch, channel), [])
        for i, (onset, vel) in enumerate(opens):
            if onset < t:
                opens.pop(i)
                closed = NoteEvent(
                    onset=onset, release=t, pitch=pitch, velocity=vel,
                    channel=channel, voice=self.profile.voice_for(pitch, channel),
                )
                self._closed.append(closed)
                return closed
        if opens:
            opens.pop(0)
            self.warnings.append(f"zero-length note dropped: pitch {pitch}")
        else:
            self.warnings.append(f"unmatched note-off dropped: pitch {pitch}")
        return None

    @property
    def open_count(self) -> int:
        return sum(len(v) for v in self._pending.values())

    def snapshot(self) -> PerformanceStream:
        stream = PerformanceStream(self._closed, warnings=self.warnings)
        for (pitch, channel), opens in self._pending.items():
            for onset, velocity in opens:
                stream.append(NoteEvent(
                    onset=onset, release=None, pitch=pitch, velocity=velocity,
                    channel=channel, voice=self.profile.voice_for(pitch, channel),
                ))
        return stream
