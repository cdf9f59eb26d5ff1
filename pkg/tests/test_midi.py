"""MIDI ingestion tests: hand-assembled SMF bytes, tick-by-tick tempo oracle."""
import struct

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tactus.midi import (
    DrumVoice,
    InstrumentProfile,
    LivePairer,
    MalformedHeader,
    NoteEvent,
    PerformanceStream,
    TruncatedTrack,
    UnsupportedFormat,
    VoiceTag,
    classify_drum,
    decode_live_event,
    pair_note_events,
    parse_smf,
    write_smf,
)


def vlq(value):
    out = [value & 0x7F]
    value >>= 7
    while value:
        out.append((value & 0x7F) | 0x80)
        value >>= 7
    return bytes(reversed(out))


def header(fmt, ntrks, division=480):
    return b"MThd" + struct.pack(">IHHH", 6, fmt, ntrks, division)


def track(*events):
    """events: (delta, message bytes) pairs; end-of-track appended."""
    body = b"".join(vlq(delta) + msg for delta, msg in events)
    body += vlq(0) + bytes([0xFF, 0x2F, 0x00])
    return b"MTrk" + struct.pack(">I", len(body)) + body


def tempo_msg(us_per_qn):
    return bytes([0xFF, 0x51, 0x03]) + us_per_qn.to_bytes(3, "big")


def note_on(pitch, velocity=80, channel=0):
    return bytes([0x90 | channel, pitch, velocity])


def note_off(pitch, channel=0):
    return bytes([0x80 | channel, pitch, 0])


def brute_force_seconds(tick, division, changes):
    """Integrate the tempo map one tick at a time.

    changes: {tick: us_per_quarter}; 500000 assumed from tick 0.
    """
    table = dict(changes)
    table.setdefault(0, 500_000)
    us = 0.0
    current = table[0]
    for t in range(tick):
        current = table.get(t, current)
        us += current / division
    return us / 1e6


class TestParseSmf:
    def test_single_note_at_120bpm(self):
        data = header(0, 1) + track(
            (0, note_on(60)), (480, note_off(60)))
        stream = parse_smf(data)
        assert len(stream) == 1
        event = stream.events[0]
        assert (event.pitch, event.onset, event.release) == (60, 0.0, 0.5)

    def test_empty_file(self):
        stream = parse_smf(header(0, 1) + track())
        assert len(stream) == 0
        assert stream.warnings == []

    def test_tempo_change_integration(self):
        # 120 BPM for beats 0-2, then 60 BPM; a note at beat 3 starts at
        # 2*0.5 + 1*1.0 = 2.0 s.
        data = header(0, 1) + track(
            (0, tempo_msg(500_000)),
            (960, tempo_msg(1_000_000)),
            (480, note_on(60)),
            (480, note_off(60)),
        )
        stream = parse_smf(data)
        assert stream.events[0].onset == pytest.approx(2.0)
        oracle = brute_force_seconds(1440, 480, {960: 1_000_000})
        assert stream.events[0].onset == pytest.approx(oracle, abs=1e-9)

    @pytest.mark.parametrize("changes", [
        {},
        {240: 250_000},
        {100: 750_000, 500: 300_000},
        {1: 10_000_000, 700: 500_000, 1200: 640_000},
    ])
    def test_tempo_integral_matches_per_tick_oracle(self, changes):
        last_tick = 1500
        events = [(0, tempo_msg(500_000))]
        prev = 0
        for tick, us in sorted(changes.items()):
            events.append((tick - prev, tempo_msg(us)))
            prev = tick
        events.append((0, note_on(60)))
        events.append((last_tick - prev, note_off(60)))  # off lands at last_tick
        data = header(0, 1) + track(*events)
        stream = parse_smf(data)
        oracle = brute_force_seconds(last_tick, 480, changes)
        assert stream.events[0].release == pytest.approx(oracle, abs=1e-9)

    def test_format_1_tracks_merge(self):
        data = header(1, 2) + track(
            (0, note_on(60)), (480, note_off(60)),
        ) + track(
            (240, note_on(64, channel=1)), (240, note_off(64, channel=1)),
        )
        stream = parse_smf(data)
        assert [e.pitch for e in stream.events] == [60, 64]
        assert stream.events[1].onset == pytest.approx(0.25)

    def test_running_status(self):
        body = vlq(0) + bytes([0x90, 60, 80]) + vlq(480) + bytes([60, 0])
        body += vlq(0) + bytes([0xFF, 0x2F, 0x00])
        data = header(0, 1) + b"MTrk" + struct.pack(">I", len(body)) + body
        stream = parse_smf(data)
        assert len(stream) == 1
        assert stream.events[0].release == pytest.approx(0.5)

    def test_bad_magic(self):
        with pytest.raises(MalformedHeader) as excinfo:
            parse_smf(b"MThx" + bytes(20))
        assert excinfo.value.offset == 0

    def test_format_2_rejected(self):
        with pytest.raises(UnsupportedFormat) as excinfo:
            parse_smf(header(2, 1) + track())
        assert excinfo.value.offset == 8

    def test_truncated_track(self):
        data = header(0, 1) + track((0, note_on(60)))
        with pytest.raises(TruncatedTrack):
            parse_smf(data[:-5])

    def test_drum_channel_tagging(self):
        data = header(0, 1) + track(
            (0, note_on(36, channel=9)), (120, note_off(36, channel=9)))
        stream = parse_smf(data)
        assert stream.events[0].voice == VoiceTag.of_drum(DrumVoice.KICK)


class TestPairNoteEvents:
    def test_single_pair(self):
        stream = pair_note_events([("on", 60, 80, 0, 0.0), ("off", 60, 0, 0, 1.0)])
        assert len(stream) == 1
        assert stream.events[0].duration == 1.0

    def test_velocity_zero_on_is_off(self):
        stream = pair_note_events([("on", 60, 80, 0, 0.0), ("on", 60, 0, 0, 1.0)])
        assert len(stream) == 1
        assert stream.events[0].duration == 1.0

    def test_lone_off_warns(self):
        stream = pair_note_events([("off", 60, 0, 0, 0.5)])
        assert len(stream) == 0
        assert len(stream.warnings) == 1

    def test_unmatched_on_stays_open(self):
        stream = pair_note_events([("on", 60, 80, 0, 0.0)])
        assert len(stream) == 1
        assert stream.events[0].is_open

    def test_overlapping_same_pitch_fifo(self):
        stream = pair_note_events([
            ("on", 60, 80, 0, 0.0),
            ("on", 60, 90, 0, 0.5),
            ("off", 60, 0, 0, 1.0),
            ("off", 60, 0, 0, 2.0),
        ])
        durations = sorted(e.duration for e in stream.events)
        assert durations == [pytest.approx(1.0), pytest.approx(1.5)]

    @given(st.lists(st.tuples(
        st.sampled_from(["on", "off"]),
        st.integers(0, 127),
        st.integers(0, 127),
        st.integers(0, 15),
    ), max_size=40))
    def test_output_never_exceeds_on_count(self, shape):
        raw = [(kind, pitch, vel, ch, i * 0.01) for i, (kind, pitch, vel, ch) in enumerate(shape)]
        stream = pair_note_events(raw)
        on_count = sum(1 for kind, _, vel, _, _ in raw if kind == "on" and vel > 0)
        assert len(stream) <= on_count


class TestClassifyDrum:
    @pytest.mark.parametrize("pitch,voice", [
        (36, DrumVoice.KICK),
        (38, DrumVoice.SNARE),
        (42, DrumVoice.HIHAT),
        (45, DrumVoice.TOM),
        (49, DrumVoice.CYMBAL),
        (81, DrumVoice.OTHER),   # open triangle
        (0, DrumVoice.OTHER),
        (127, DrumVoice.OTHER),
    ])
    def test_gm_table(self, pitch, voice):
        assert classify_drum(pitch) is voice

    def test_total_over_all_pitches(self):
        for pitch in range(128):
            assert isinstance(classify_drum(pitch), DrumVoice)

    def test_override_map(self):
        assert classify_drum(36, drum_map={36: DrumVoice.SNARE}) is DrumVoice.SNARE


class TestLiveDecoding:
    def test_note_on(self):
        assert decode_live_event(0x93, 60, 100, 1.5) == ("on", 60, 100, 3, 1.5)

    def test_note_off_and_zero_velocity(self):
        assert decode_live_event(0x80, 60, 0, 2.0) == ("off", 60, 0, 0, 2.0)
        assert decode_live_event(0x90, 60, 0, 2.0) == ("off", 60, 0, 0, 2.0)

    def test_controller_ignored(self):
        assert decode_live_event(0xB0, 64, 127, 0.0) is None

    def test_malformed_rejected(self):
        with pytest.raises(ValueError):
            decode_live_event(0x40, 60, 0, 0.0)
        with pytest.raises(ValueError):
            decode_live_event(0x90, 200, 0, 0.0)

    def test_live_pairer_matches_batch(self):
        raw = [
            ("on", 60, 80, 0, 0.0),
            ("on", 64, 70, 0, 0.5),
            ("off", 60, 0, 0, 1.0),
            ("off", 64, 0, 0, 1.25),
            ("on", 67, 90, 0, 1.5),
        ]
        pairer = LivePairer()
        closed = [e for e in map(pairer.feed, raw) if e is not None]
        assert len(closed) == 2
        assert pairer.snapshot() == pair_note_events(raw)


@st.composite
def raw_streams(draw):
    n = draw(st.integers(0, 25))
    raw = []
    t = 0.0
    for _ in range(n):
        t += draw(st.floats(0.01, 0.5))
        duration = draw(st.floats(0.01, 2.0))
        pitch = draw(st.integers(0, 127))
        velocity = draw(st.integers(1, 127))
        channel = draw(st.integers(0, 15))
        raw.append(("on", pitch, velocity, channel, t))
        raw.append(("off", pitch, 0, channel, t + duration))
    raw.sort(key=lambda item: item[4])
    return raw


class TestRoundTrip:
    @settings(max_examples=60, deadline=None)
    @given(raw_streams())
    def test_write_then_parse(self, raw):
        original = pair_note_events(raw)
        reparsed = parse_smf(write_smf(original, bpm=120, division=480))
        tick_seconds = 60.0 / 120 / 480
        assert len(reparsed) == len(original)
        key = lambda e: (e.pitch, e.channel, e.velocity, e.onset)
        for a, b in zip(sorted(original.events, key=key),
                        sorted(reparsed.events, key=key)):
            assert (a.pitch, a.velocity, a.channel, a.voice) == \
                (b.pitch, b.velocity, b.channel, b.voice)
            assert abs(a.onset - b.onset) <= tick_seconds
            if a.release is None:
                assert b.release is None
            else:
                assert abs(a.release - b.release) <= tick_seconds


class TestPerformanceStream:
    def test_append_keeps_sorted(self):
        stream = PerformanceStream()
        for onset in (2.0, 0.5, 1.0, 0.1):
            stream.append(NoteEvent(onset, onset + 0.1, 60, 80, 0))
        onsets = [e.onset for e in stream.events]
        assert onsets == sorted(onsets)

    def test_note_event_validation(self):
        with pytest.raises(ValueError):
            NoteEvent(1.0, 1.0, 60, 80, 0)  # zero duration
        with pytest.raises(ValueError):
            NoteEvent(0.0, 1.0, 60, 0, 0)   # silent velocity
        with pytest.raises(ValueError):
            NoteEvent(0.0, 1.0, 128, 80, 0)

    def test_voice_tag_text_round_trip(self):
        for tag in (VoiceTag.keyboard(), VoiceTag.of_drum(DrumVoice.SNARE),
                    VoiceTag.guitar_string(4), VoiceTag.other()):
            assert VoiceTag.parse(tag.text) == tag

    def test_guitar_profile(self):
        profile = InstrumentProfile(kind="guitar")
        assert profile.voice_for(45, 0) == VoiceTag.guitar_string(1)
        assert profile.voice_for(45, 5) == VoiceTag.guitar_string(6)
        assert profile.voice_for(36, 9) == VoiceTag.of_drum(DrumVoice.KICK)
