"""Standard MIDI File reading and writing (formats 0 and 1).

Tick times become seconds by integrating the tempo map: each segment
contributes delta_ticks * us_per_quarter / division microseconds.  Tracks
of a format-1 file merge into one time-sorted stream; per-track identity
survives only through the channel.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

from ..errors import TactusError
from .events import InstrumentProfile, PerformanceStream, pair_note_events

DEFAULT_TEMPO_US = 500_000  # 120 BPM, the SMF default
_META, _SYSEX_F0, _SYSEX_F7 = 0xFF, 0xF0, 0xF7
_TEMPO_META = 0x51
_END_OF_TRACK = 0x2F


class SmfError(TactusError):
    """Problem in the byte stream; carries the offending byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class MalformedHeader(SmfError):
    pass


class UnsupportedFormat(SmfError):
    pass


class TruncatedTrack(SmfError):
    pass


@dataclass(frozen=True)
class TempoMap:
    """Piecewise-constant tempo, precomputed as (tick, seconds_at, us_per_qn)."""

    division: int
    segments: tuple[tuple[int, float, int], ...]

    @classmethod
    def from_changes(cls, division: int, changes: list[tuple[int, int]]) -> "TempoMap":
        merged: dict[int, int] = {0: DEFAULT_TEMPO_US}
        for tick, us in sorted(changes):
            merged[tick] = us  # a later change at the same tick wins
        segments = []
        seconds = 0.0
        prev_tick, prev_us = 0, merged[0]
        for tick in sorted(merged):
            seconds += (tick - prev_tick) * prev_us / (division * 1e6)
            segments.append((tick, seconds, merged[tick]))
            prev_tick, prev_us = tick, merged[tick]
        return cls(division=division, segments=tuple(segments))

    def seconds_at(self, tick: int) -> float:
        base_tick, base_seconds, us = self.segments[0]
        for seg_tick, seg_seconds, seg_us in self.segments:
            if seg_tick > tick:
                break
            base_tick, base_seconds, us = seg_tick, seg_seconds, seg_us
        return base_seconds + (tick - base_tick) * us / (self.division * 1e6)


def _read_vlq(data: bytes, at: int, end: int) -> tuple[int, int]:
    value = 0
    while True:
        if at >= end:
            raise TruncatedTrack("variable-length quantity runs past chunk end", at)
        byte = data[at]
        at += 1
        value = (value << 7) | (byte & 0x7F)
        if not byte & 0x80:
            return value, at


def parse_smf(
    data: bytes,
    profile: InstrumentProfile | None = None,
    device: str = "",
) -> PerformanceStream:
    """Parse SMF bytes into a paired, seconds-timestamped stream."""
    if len(data) < 14 or data[:4] != b"MThd":
        raise MalformedHeader("missing MThd magic", 0)
    header_len = struct.unpack(">I", data[4:8])[0]
    if header_len < 6:
        raise MalformedHeader(f"header length {header_len} < 6", 4)
    fmt, ntrks, division = struct.unpack(">HHH", data[8:14])
    if fmt == 2:
        raise UnsupportedFormat("SMF format 2 is not supported", 8)
    if fmt > 2:
        raise MalformedHeader(f"unknown SMF format {fmt}", 8)
    if division & 0x8000:
        raise UnsupportedFormat("SMPTE divisions are not supported", 12)
    if division == 0:
        raise MalformedHeader("division of zero ticks per quarter", 12)

    at = 8 + header_len
    notes: list[tuple[int, int, str, int, int, int]] = []  # tick, order, kind, ...
    tempo_changes: list[tuple[int, int]] = []
    order = 0
    tracks_seen = 0
    while tracks_seen < ntrks and at < len(data):
        if at + 8 > len(data):
            raise TruncatedTrack("chunk header runs past end of file", at)
        chunk_id = data[at:at + 4]
        chunk_len = struct.unpack(">I", data[at + 4:at + 8])[0]
        body, end = at + 8, at + 8 + chunk_len
        if end > len(data):
            raise TruncatedTrack(f"chunk length {chunk_len} runs past end of file", at + 4)
        if chunk_id != b"MTrk":
            at = end  # alien chunks are skipped per the SMF spec
            continue
        tracks_seen += 1
        tick = 0
        running_status = None
        pos = body
        while pos < end:
            delta, pos = _read_vlq(data, pos, end)
            tick += delta
            if pos >= end:
                raise TruncatedTrack("event status runs past chunk end", pos)
            status = data[pos]
            if status & 0x80:
                pos += 1
                if status < 0xF0:
                    running_status = status
            elif running_status is None:
                raise TruncatedTrack(f"data byte {status:#x} with no running status", pos)
            else:
                status = running_status

            if status == _META:
                if pos >= end:
                    raise TruncatedTrack("meta event truncated", pos)
                meta_type = data[pos]
                length, pos = _read_vlq(data, pos + 1, end)
                if pos + length > end:
                    raise TruncatedTrack("meta payload runs past chunk end", pos)
                payload = data[pos:pos + length]
                pos += length
                if meta_type == _TEMPO_META and length == 3:
                    tempo_changes.append((tick, int.from_bytes(payload, "big")))
                if meta_type == _END_OF_TRACK:
                    break
            elif status in (_SYSEX_F0, _SYSEX_F7):
                length, pos = _read_vlq(data, pos, end)
                if pos + length > end:
                    raise TruncatedTrack("sysex payload runs past chunk end", pos)
                pos += length
            elif 0x80 <= status <= 0xEF:
                kind = status & 0xF0
                n_data = 1 if kind in (0xC0, 0xD0) else 2
                if pos + n_data > end:
                    raise TruncatedTrack("channel message runs past chunk end", pos)
                d1 = data[pos]
                d2 = data[pos + 1] if n_data == 2 else 0
                pos += n_data
                channel = status & 0x0F
                if kind == 0x90 and d2 > 0:
                    notes.append((tick, order, "on", d1, d2, channel))
                elif kind == 0x80 or kind == 0x90:
                    notes.append((tick, order, "off", d1, d2, channel))
                order += 1
            else:
                raise TruncatedTrack(f"unexpected status byte {status:#x}", pos - 1)
        at = end

    if tracks_seen < ntrks:
        raise TruncatedTrack(
            f"header promised {ntrks} tracks, found {tracks_seen}", len(data))

    tempo = TempoMap.from_changes(division, tempo_changes)
    raw = [
        (kind, pitch, velocity, channel, tempo.seconds_at(tick))
        for tick, _, kind, pitch, velocity, channel in sorted(notes)
    ]
    return pair_note_events(raw, profile=profile, device=device)


def _vlq(value: int) -> bytes:
    out = [value & 0x7F]
    value >>= 7
    while value:
        out.append((value & 0x7F) | 0x80)
        value >>= 7
    return bytes(reversed(out))


def write_smf(
    stream: PerformanceStream,
    bpm: float = 120.0,
    division: int = 480,
) -> bytes:
    """Serialize a stream to a format-0 SMF at a single tempo.

    Onsets quantize to the nearest tick; open notes are written as a
    note-on with no matching off and come back open after a reparse.
    """
    us_per_qn = round(60_000_000 / bpm)

    def to_tick(seconds: float) -> int:
        return round(seconds * bpm / 60.0 * division)

    # kind_rank orders offs before ons at the same tick so back-to-back
    # repeats of a pitch re-pair identically.  The sort must be stable on
    # (tick, rank) alone: stream order of simultaneous note-ons is their
    # FIFO open order, and preserving it lets a reparse rebuild the exact
    # same on/off pairing.
    messages: list[tuple[int, int, int, int, int]] = []  # tick, rank, status, d1, d2
    for event in stream.events:
        messages.append((to_tick(event.onset), 1, 0x90 | event.channel,
                         event.pitch, event.velocity))
        if event.release is not None:
            messages.append((to_tick(event.release), 0, 0x80 | event.channel,
                             event.pitch, 0))
    messages.sort(key=lambda m: (m[0], m[1]))

    body = bytearray()
    body += _vlq(0) + bytes([_META, _TEMPO_META, 3]) + us_per_qn.to_bytes(3, "big")
    prev_tick = 0
    for tick, _, status, d1, d2 in messages:
        body += _vlq(tick - prev_tick) + bytes([status, d1, d2])
        prev_tick = tick
    body += _vlq(0) + bytes([_META, _END_OF_TRACK, 0])

    header = b"MThd" + struct.pack(">IHHH", 6, 0, 1, division)
    return header + b"MTrk" + struct.pack(">I", len(body)) + bytes(body)
