"""Delimited chart-data export: flat CSV files mirroring the report sections."""
from __future__ import annotations

import csv
from pathlib import Path

from .report import Report


def _write(path: Path, header: list[str], rows: list[list]) -> Path:
    with path.open("w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def export_csv(report: Report, outdir: Path) -> list[Path]:
    """Write each report section as CSV files; returns the written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if "duration" in report.sections:
        verdicts = report.sections["duration"]["verdicts"]
        written.append(_write(
            outdir / "duration_verdicts.csv",
            ["held_beats", "nearest", "nearest_beats", "deviation_fraction",
             "verdict", "pie_layers"],
            [[v["held_beats"], v["nearest"], v["nearest_beats"],
              v["deviation_fraction"], v["verdict"],
              ";".join(f"{x:.6f}" for x in v["pie_layers"])] for v in verdicts],
        ))

    if "timing" in report.sections:
        section = report.sections["timing"]
        written.append(_write(
            outdir / "timing_rows.csv",
            ["repetition", "slot", "beat_in_cycle", "deviation_beats",
             "velocity", "voice"],
            [[r["repetition"], r["slot"], r["beat_in_cycle"],
              r["deviation_beats"], r["velocity"], r["voice"]]
             for r in section["rows"]],
        ))
        hist = section["histogram"]
        written.append(_write(
            outdir / "timing_histogram.csv",
            ["bin_lo", "bin_hi", "count"],
            [[lo, hi, count] for lo, hi, count in
             zip(hist["edges"][:-1], hist["edges"][1:], hist["counts"])],
        ))
        written.append(_write(
            outdir / "timing_density.csv",
            ["deviation_beats", "density"],
            list(map(list, zip(section["density"]["x"], section["density"]["y"]))),
        ))
        written.append(_write(
            outdir / "timing_row_means.csv",
            ["repetition", "mean_deviation_beats"],
            [[m["repetition"], m["mean_deviation_beats"]]
             for m in section["row_means"]],
        ))

    if "rhythm" in report.sections:
        section = report.sections["rhythm"]
        written.append(_write(
            outdir / "rhythm_notes.csv",
            ["index", "symbol", "ioi_beats", "error_beats", "velocity",
             "accent", "pattern_mismatch"],
            [[i, n["symbol"], n["ioi_beats"], n["error_beats"], n["velocity"],
              n["accent"], i in set(section["mismatches"])]
             for i, n in enumerate(section["notes"])],
        ))
        written.append(_write(
            outdir / "rhythm_vocabulary.csv",
            ["symbol", "beats"],
            [[v["symbol"], v["beats"]] for v in section["vocabulary"]],
        ))

    if "harmony" in report.sections:
        section = report.sections["harmony"]
        written.append(_write(
            outdir / "harmony_waffle.csv",
            ["repetition", "bar", "pitch_class", "fit", "count"],
            [[c["repetition"], c["bar"], c["pitch_class"], c["fit"], c["count"]]
             for c in section["waffle"]],
        ))
        written.append(_write(
            outdir / "harmony_notes.csv",
            ["repetition", "bar", "pitch_class", "fit", "onset_beats",
             "duration_class"],
            [[n["repetition"], n["bar"], n["pitch_class"], n["fit"],
              n["onset_beats"], n["duration_class"] or ""]
             for n in section["notes"]],
        ))

    if "fretboard" in report.sections:
        section = report.sections["fretboard"]
        note_rows, facet_rows = [], []
        for i, facet in enumerate(section["facets"]):
            facet_rows.append([
                i, facet["bar_index"], facet["note_count"], facet["movement"],
                facet["fret_min"], facet["fret_max"], facet["fret_centroid"],
                facet["string_min"], facet["string_max"],
                facet["string_centroid"], facet["open_string_count"],
            ])
            for n in facet["notes"]:
                note_rows.append([
                    i, n["string"], n["fret"], n["onset_beats"], n["velocity"],
                    n["order"], n["jitter"][0], n["jitter"][1],
                ])
        written.append(_write(
            outdir / "fretboard_facets.csv",
            ["facet", "bar_index", "note_count", "movement", "fret_min",
             "fret_max", "fret_centroid", "string_min", "string_max",
             "string_centroid", "open_string_count"],
            facet_rows,
        ))
        written.append(_write(
            outdir / "fretboard_notes.csv",
            ["facet", "string", "fret", "onset_beats", "velocity", "order",
             "jitter_x", "jitter_y"],
            note_rows,
        ))
    return written
