"""Regenerate the frontend's frame fixtures from the engine.

Writes tests/fixtures/kinds.json (one representative frame per drill kind,
plus pause/warning variants) and tests/fixtures/replay.ndjson (a 100-frame
log of a timing take accumulating note by note).

Run from the frontend directory: python3 scripts/make_fixtures.py
"""
import json
from pathlib import Path

from tactus.midi.events import PerformanceStream
from tactus.service import analyze_stream, load_config
from tactus.service.frames import event_to_dict
from tactus.synthgen import ErrorModel, PatternSpec, generate

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

CONFIG_DOCS = {
    "duration": {"kind": "duration", "grid": {"bpm": 120, "cycle_beats": 4}},
    "timing": {"kind": "timing",
               "grid": {"bpm": 120, "subdivision": 2, "cycle_beats": 4},
               "timing": {"density_samples": 64}},
    "accents": {"kind": "accents",
                "grid": {"bpm": 120, "subdivision": 3, "cycle_beats": 4},
                "accents": {"pattern": {"period": 3, "offset": 0}}},
    "chord-progression": {
        "kind": "chord-progression",
        "grid": {"bpm": 120, "subdivision": 2, "cycle_beats": 16},
        "harmony": {"key": "C", "mode": "major", "chords": "C Am F G"}},
    "fretboard": {"kind": "fretboard",
                  "grid": {"bpm": 120, "subdivision": 2, "cycle_beats": 4},
                  "instrument": {"kind": "guitar"}},
}


def fixture_stream(config):
    kind = config.kind
    if kind == "duration":
        # One perfect quarter, then an overflowing hold past a whole note.
        return generate(PatternSpec.melody(
            config.grid, (0, 4), (60, 64), repetitions=1, hold_beats=1.0,
        )), generate(PatternSpec.melody(
            config.grid, (0,), (60,), repetitions=1, hold_beats=4.6))
    if kind == "accents":
        model = ErrorModel(accent_period=3, accent_velocity=110,
                           base_velocity=60, jitter_std_beats=0.01,
                           velocity_noise_std=5.0, seed=2)
        return generate(PatternSpec.every_slot(config.grid, repetitions=2),
                        model), None
    if kind == "chord-progression":
        slots, pitches = [], []
        for bar, chord in enumerate(config.harmony.bars):
            for i, pc in enumerate(sorted(chord.pitch_classes)):
                slots.append(bar * 8 + i * 2)
                pitches.append(60 + pc)
        return generate(PatternSpec.melody(config.grid, slots, pitches,
                                           repetitions=2)), None
    if kind == "fretboard":
        pattern = PatternSpec.guitar(
            config.grid, (0, 2, 4, 6),
            ((6, 5), (5, 7), (4, 5), (3, 7)), repetitions=2)
        return generate(pattern, ErrorModel(jitter_std_beats=0.01, seed=4),
                        profile=config.instrument), None
    model = ErrorModel(warmup_lateness_beats=0.2, warmup_repetitions=4,
                       jitter_std_beats=0.02, seed=5)
    return generate(PatternSpec.every_slot(config.grid, repetitions=6),
                    model), None


def frame_doc(seq, kind, section, frame_type="frame", reason=None, delta=()):
    doc = {
        "seq": seq,
        "wall_time": 1700000000.0 + seq * 0.25,
        "kind": kind,
        "type": frame_type,
        "schema_version": "1",
        "summary": section,
        "events_delta": list(delta),
    }
    if reason is not None:
        doc["reason"] = reason
    return doc


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    kinds = {}
    for kind, doc in CONFIG_DOCS.items():
        config = load_config(doc)
        stream, extra = fixture_stream(config)
        kinds[kind] = frame_doc(0, kind, analyze_stream(config, stream))
        if kind == "duration":
            kinds["duration-overflow"] = frame_doc(
                1, kind, analyze_stream(config, extra))
    timing = load_config(CONFIG_DOCS["timing"])
    base = kinds["timing"]["summary"]
    kinds["timing-pause"] = frame_doc(9, "timing", base, "pause", "silence")
    kinds["timing-final"] = frame_doc(10, "timing", base, "final",
                                      "producer disconnected")
    kinds["warning"] = {
        "seq": 11, "wall_time": 1700000002.0, "kind": "timing",
        "type": "warning", "schema_version": "1", "events_delta": [],
        "reason": "malformed event dropped: boom",
    }
    (OUT / "kinds.json").write_text(json.dumps(kinds, indent=2) + "\n")

    # Replay log: a timing take growing one event at a time, 100 frames.
    full = generate(
        PatternSpec.every_slot(timing.grid, repetitions=13),
        ErrorModel(jitter_std_beats=0.03, seed=21))
    events = list(full.events)[:100]
    lines = []
    for i in range(1, 101):
        partial = PerformanceStream(events[:i])
        lines.append(json.dumps(frame_doc(
            i - 1, "timing", analyze_stream(timing, partial),
            delta=[event_to_dict(events[i - 1])])))
    (OUT / "replay.ndjson").write_text("\n".join(lines) + "\n")
    print(f"wrote {OUT / 'kinds.json'} and {OUT / 'replay.ndjson'}")


if __name__ == "__main__":
    main()
