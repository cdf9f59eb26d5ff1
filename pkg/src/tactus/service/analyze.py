"""Batch analysis: run the drill's analyses over a stream, emit the report."""
from __future__ import annotations

from pathlib import Path

from .. import fretboard as fb
from .. import harmony as hm
from .. import timing as tm
from ..duration import classify_duration, pie_geometry
from ..grid import seconds_to_beats
from ..midi.events import PerformanceStream
from ..midi.smf import parse_smf
from ..rhythm import (
    check_accent_pattern,
    detect_accents,
    onsets_to_iois,
    quantization_ranges,
    quantize_ioi,
    representable_set,
)
from .config import DrillConfig
from .report import Report


def duration_section(config: DrillConfig, stream: PerformanceStream) -> dict:
    verdicts = []
    for event in stream.events:
        if event.duration is None:
            continue  # feedback appears only once the note is released
        held = seconds_to_beats(event.duration, config.grid.bpm)
        verdict = classify_duration(
            held, config.duration.vocabulary, config.duration.threshold)
        verdicts.append({
            "held_beats": verdict.held_beats,
            "nearest": verdict.nearest.text,
            "nearest_beats": verdict.nearest_beats,
            "deviation_fraction": verdict.deviation_fraction,
            "verdict": verdict.verdict.value,
            "pie_layers": list(pie_geometry(held).layers),
        })
    return {"threshold": config.duration.threshold, "verdicts": verdicts}


def _timing_rows(records) -> list[dict]:
    return [
        {
            "repetition": r.grid.repetition,
            "slot": r.grid.index,
            "beat_in_cycle": r.grid.beat_in_cycle,
            "deviation_beats": r.deviation_beats,
            "velocity": r.velocity,
            "voice": r.voice.text,
        }
        for r in records
    ]


def timing_section(config: DrillConfig, stream: PerformanceStream) -> dict:
    records = tm.build_records(stream, config.grid)
    params = config.timing
    section: dict = {
        "tolerance_beats": config.grid.tolerance_beats,
        "rows": _timing_rows(records),
        "row_means": [],
        "score_percent": 0.0,
        "histogram": {"edges": [], "counts": []},
        "density": {"x": [], "y": []},
        "voices": [],
    }
    if not records:
        return section
    summary = tm.summarize(
        records, config.grid, params.bin_width_beats, params.bandwidth_beats,
        params.density_samples)
    section["score_percent"] = summary.score_percent
    section["histogram"] = {
        "edges": list(summary.histogram.edges),
        "counts": list(summary.histogram.counts),
    }
    section["density"] = {"x": list(summary.density.x), "y": list(summary.density.y)}
    section["row_means"] = [
        {"repetition": rep, "mean_deviation_beats": mean}
        for rep, mean in tm.mean_deviation_by_repetition(records).items()
    ]
    groups = tm.split_by_voice(records)
    if len(groups) > 1:
        for voice, group in sorted(groups.items(), key=lambda kv: kv[0].text):
            section["voices"].append({
                "voice": voice.text,
                "score_percent": tm.tolerance_score(group, config.grid.tolerance_beats),
                "rows": _timing_rows(group),
            })
    return section


def rhythm_section(config: DrillConfig, stream: PerformanceStream) -> dict:
    params = config.accents
    rset = representable_set(params.vocabulary)
    onsets = [seconds_to_beats(e.onset, config.grid.bpm) for e in stream.events]
    velocities = [e.velocity for e in stream.events]
    iois = onsets_to_iois(onsets)
    notes = []
    mismatches: list[int] = []
    if iois:
        flags = detect_accents(
            velocities[: len(iois)], params.accent_mode, params.accent_cutoff)
        notes = [
            quantize_ioi(ioi, rset, velocity=v, accent=flag)
            for ioi, v, flag in zip(iois, velocities, flags)
        ]
        if params.pattern_period:
            mismatches = check_accent_pattern(
                flags, params.pattern_period, params.pattern_offset)
    return {
        "notes": [
            {
                "symbol": n.symbol.text,
                "ioi_beats": n.ioi_beats,
                "error_beats": n.error_beats,
                "velocity": n.velocity,
                "accent": n.accent,
            }
            for n in notes
        ],
        "vocabulary": [{"symbol": s.text, "beats": float(v)} for s, v in rset],
        "ranges": [
            {
                "symbol": r.symbol.text,
                "lo_beats": float(r.lo),
                "hi_beats": None if r.hi is None else float(r.hi),
            }
            for r in quantization_ranges(rset)
        ],
        "mismatches": mismatches,
    }


def harmony_section(config: DrillConfig, stream: PerformanceStream) -> dict:
    progression = config.harmony
    cells, notes = hm.bin_notes(stream, config.grid, progression)
    return {
        "chords": [c.text for c in progression.bars],
        "waffle": [
            {
                "repetition": c.repetition,
                "bar": c.bar,
                "pitch_class": c.pitch_class,
                "fit": c.fit.value,
                "count": c.count,
            }
            for c in cells
        ],
        "notes": [
            {
                "repetition": n.repetition,
                "bar": n.bar,
                "pitch_class": n.pitch_class,
                "fit": n.fit.value,
                "onset_beats": n.onset_beats,
                "duration_class": n.duration_class,
            }
            for n in notes
        ],
    }


def fretboard_section(config: DrillConfig, stream: PerformanceStream) -> dict:
    params = config.fretboard
    notes, warnings = fb.fret_notes_from_stream(stream, config.grid, params.tuning)
    facets = fb.facet_by_bar(notes, config.grid, params.bars_per_facet, params.tuning)
    facet_docs = []
    for group, stats in facets:
        orders = fb.temporal_color_index(group, params.tuning) if group else []
        facet_docs.append({
            "bar_index": stats.bar_index,
            "note_count": stats.note_count,
            "movement": fb.movement_class(stats),
            "fret_min": stats.fret_min,
            "fret_max": stats.fret_max,
            "fret_centroid": stats.fret_centroid,
            "string_min": stats.string_min,
            "string_max": stats.string_max,
            "string_centroid": stats.string_centroid,
            "open_string_count": stats.open_string_count,
            "notes": [
                {
                    "string": n.string,
                    "fret": n.fret,
                    "onset_beats": n.onset_beats,
                    "velocity": n.velocity,
                    "order": order,
                    "jitter": list(fb.note_jitter(n)),
                }
                for n, order in zip(group, orders)
            ],
        })
    shifts = []
    stats_list = [stats for _, stats in facets]
    for i, a in enumerate(stats_list):
        for j in range(i + 1, len(stats_list)):
            b = stats_list[j]
            if a.note_count == 0 or b.note_count == 0:
                continue
            offset = fb.detect_octave_shift(a, b)
            if offset is not None:
                shifts.append({"from_facet": i, "to_facet": j, "offset": offset})
    section = {"facets": facet_docs, "octave_shifts": shifts}
    if warnings:
        section["warnings"] = warnings
    return section


_SECTION_BUILDERS = {
    "duration": duration_section,
    "timing": timing_section,
    "accents": rhythm_section,
    "chord-progression": harmony_section,
    "fretboard": fretboard_section,
}


def analyze_stream(config: DrillConfig, stream: PerformanceStream) -> dict:
    """The drill kind's report section for a stream snapshot."""
    return _SECTION_BUILDERS[config.kind](config, stream)


def build_report(config: DrillConfig, stream: PerformanceStream) -> Report:
    from .config import config_echo

    return Report(
        drill=config_echo(config),
        sections={config.section_key: analyze_stream(config, stream)},
        warnings=tuple(stream.warnings),
    )


def analyze_file(config: DrillConfig, smf_path: str | Path) -> Report:
    """Parse an SMF recording and analyze it under the drill configuration."""
    data = Path(smf_path).read_bytes()
    stream = parse_smf(data, profile=config.instrument, device=str(smf_path))
    return build_report(config, stream)
