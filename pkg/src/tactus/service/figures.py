"""Render report sections to static matplotlib figures.

One PNG per drill kind, written next to the CSV exports.  The color coding
follows the analysis semantics: chord/scale/outside notes are green, orange,
and gray; tolerance zones are light gray bands.
"""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.patches import Wedge

from .report import Report

FIT_COLORS = {"chord": "#2e9e4b", "scale": "#f28c28", "outside": "#9e9e9e"}
DURATION_CLASS_COLORS = {
    "whole": "#d64545", "half": "#e8c547", "quarter": "#4576d6",
    "eighth": "#45b5d6", "sixteenth": "#52c475",
}
FILL_COLOR = "#4576d6"
OVERFLOW_COLOR = "#1d3a75"
TOLERANCE_COLOR = "0.85"


def _velocity_widths(velocities, lo=0.5, hi=3.0):
    return [lo + (hi - lo) * (v - 1) / 126 for v in velocities]


def render_duration(section: dict, path: Path) -> None:
    verdicts = section["verdicts"] or [
        {"pie_layers": [], "verdict": "good", "held_beats": 0.0}]
    n = len(verdicts)
    cols = min(n, 6)
    rows = math.ceil(n / cols)
    fig, axes = plt.subplots(rows, cols, figsize=(2.2 * cols, 2.6 * rows),
                             squeeze=False)
    for ax in axes.flat:
        ax.set_axis_off()
    for ax, verdict in zip(axes.flat, verdicts):
        ax.set_aspect("equal")
        ax.set_xlim(-1.3, 1.3)
        ax.set_ylim(-1.5, 1.3)
        ax.add_patch(plt.Circle((0, 0), 1.0, fill=False, color="0.6", lw=1))
        for i, layer in enumerate(verdict["pie_layers"]):
            color = FILL_COLOR if i == 0 else OVERFLOW_COLOR
            radius = 1.0 - 0.06 * i
            # Fills start at 12 o'clock and sweep clockwise.
            ax.add_patch(Wedge((0, 0), radius, 90 - 360 * layer, 90,
                               color=color, alpha=0.9))
        for tick in range(8):
            angle = math.radians(90 - 360 * tick / 8)
            ax.plot([0.92 * math.cos(angle), math.cos(angle)],
                    [0.92 * math.sin(angle), math.sin(angle)], color="0.4", lw=1)
        label = verdict["verdict"].replace("_", " ")
        if verdict.get("nearest"):
            label += f"\n{verdict['nearest']} ({verdict['held_beats']:.2f} beats)"
        ax.text(0, -1.35, label, ha="center", va="top", fontsize=8)
    fig.suptitle("Held note durations")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def render_timing(section: dict, path: Path, grid_echo: dict) -> None:
    rows = section["rows"]
    cycle = grid_echo["cycle_beats"]
    subdivision = grid_echo["subdivision"]
    tolerance = section["tolerance_beats"]
    fig, axes = plt.subplots(
        4, 1, figsize=(10, 9), sharex=False,
        gridspec_kw={"height_ratios": [1, 1.2, 1.2, 3]})
    overplot, hist_ax, density_ax, rows_ax = axes

    slot_beats = [i / subdivision for i in range(round(cycle * subdivision))]
    xs = [r["beat_in_cycle"] + r["deviation_beats"] for r in rows]

    overplot.vlines(xs, 0, 1, lw=_velocity_widths([r["velocity"] for r in rows]),
                    color="k", alpha=0.35)
    overplot.set_yticks([])
    overplot.set_title(f"all repetitions overplotted — "
                       f"{section['score_percent']:.1f}% inside tolerance")

    hist = section["histogram"]
    if hist["counts"]:
        widths = np.diff(hist["edges"])
        hist_ax.bar(hist["edges"][:-1], hist["counts"], width=widths,
                    align="edge", color="0.5", edgecolor="white")
    hist_ax.set_ylabel("count")
    hist_ax.set_title("deviation histogram (32nd-note bins)")

    dens = section["density"]
    if dens["x"]:
        density_ax.fill_between(dens["x"], dens["y"], color="0.6", alpha=0.8)
    density_ax.set_ylabel("density")
    density_ax.set_title("deviation density (KDE)")

    repetitions = sorted({r["repetition"] for r in rows})
    y_of = {rep: i for i, rep in enumerate(repetitions)}
    for slot in slot_beats:
        rows_ax.axvspan(slot - tolerance, slot + tolerance,
                        color=TOLERANCE_COLOR, zorder=0)
    for r in rows:
        y = y_of[r["repetition"]]
        rows_ax.vlines(r["beat_in_cycle"] + r["deviation_beats"],
                       y + 0.1, y + 0.9,
                       lw=_velocity_widths([r["velocity"]])[0], color="k")
    rows_ax.set_ylim(len(repetitions), 0)
    rows_ax.set_yticks([y + 0.5 for y in range(len(repetitions))])
    rows_ax.set_yticklabels([str(rep) for rep in repetitions], fontsize=6)
    rows_ax.set_ylabel("repetition")
    rows_ax.set_xlabel("beat in cycle")
    rows_ax.set_title("tick rows (gray = tolerance zones)")
    for ax in (overplot, rows_ax):
        ax.set_xlim(-0.5 / subdivision, cycle)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_rhythm(section: dict, path: Path) -> None:
    notes = section["notes"]
    fig, (symbol_ax, ioi_ax) = plt.subplots(
        2, 1, figsize=(max(6, 0.6 * len(notes) + 2), 5), sharex=True)
    if notes:
        positions = list(range(len(notes)))
        sizes = [30 + 270 * (n["velocity"] - 1) / 126 for n in notes]
        colors = ["#1d3a75" if n["accent"] else "0.45" for n in notes]
        symbol_ax.scatter(positions, [1] * len(notes), s=sizes, c=colors)
        for x, n in enumerate(notes):
            symbol_ax.annotate(n["symbol"], (x, 1), textcoords="offset points",
                               xytext=(0, -28), ha="center", fontsize=7,
                               rotation=45)
        ioi_ax.bar(positions, [n["ioi_beats"] for n in notes], color="0.6")
        ioi_ax.errorbar(positions, [n["ioi_beats"] - n["error_beats"] for n in notes],
                        fmt="_", color="#d64545", label="expected symbol value")
        ioi_ax.legend(fontsize=7)
    symbol_ax.set_yticks([])
    symbol_ax.set_ylim(0, 2)
    symbol_ax.set_title("quantized symbols (size = loudness, dark = accent)")
    ioi_ax.set_ylabel("IOI (beats)")
    ioi_ax.set_xlabel("note")
    for mismatch in section["mismatches"]:
        symbol_ax.axvspan(mismatch - 0.4, mismatch + 0.4, color="#f8d0d0", zorder=0)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_harmony(section: dict, path: Path) -> None:
    cells = section["waffle"]
    repetitions = sorted({c["repetition"] for c in cells}) or [0]
    bars = sorted({c["bar"] for c in cells}) or [0]
    fig, axes = plt.subplots(1, len(repetitions),
                             figsize=(3.2 * len(repetitions), 3.2), squeeze=False)
    for ax, rep in zip(axes[0], repetitions):
        heights: dict[int, int] = {}
        for cell in sorted(
            (c for c in cells if c["repetition"] == rep),
            key=lambda c: ("chord scale outside".split().index(c["fit"]), c["pitch_class"]),
        ):
            for _ in range(cell["count"]):
                level = heights.get(cell["bar"], 0)
                ax.add_patch(plt.Rectangle(
                    (cell["bar"] - 0.4, level), 0.8, 0.9,
                    color=FIT_COLORS[cell["fit"]]))
                heights[cell["bar"]] = level + 1
        tallest = max(heights.values(), default=1)
        ax.set_xlim(bars[0] - 0.6, bars[-1] + 0.6)
        ax.set_ylim(0, tallest + 1)
        ax.set_xticks(bars)
        ax.set_xticklabels(section["chords"][: len(bars)], fontsize=7)
        ax.set_yticks([])
        ax.set_title(f"repetition {rep}", fontsize=8)
    fig.suptitle("notes per bar: green = chord, orange = scale, gray = outside")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_fretboard(section: dict, path: Path, max_fret: int = 22) -> None:
    facets = section["facets"] or [{"notes": [], "bar_index": 0,
                                    "movement": "stationary", "note_count": 0}]
    fig, axes = plt.subplots(len(facets), 1,
                             figsize=(9, 1.6 * len(facets) + 1), squeeze=False)
    cmap = matplotlib.colormaps["viridis"]
    for ax, facet in zip(axes[:, 0], facets):
        for fret in range(max_fret + 1):
            ax.axvline(fret + 0.5, color="0.9", lw=0.5, zorder=0)
        for string in range(1, 7):
            ax.axhline(string, color="0.8", lw=0.7, zorder=0)
        notes = facet["notes"]
        if notes:
            xs = [n["fret"] + 0.25 * n["jitter"][0] for n in notes]
            ys = [n["string"] + 0.25 * n["jitter"][1] for n in notes]
            sizes = [15 + 120 * (n["velocity"] - 1) / 126 for n in notes]
            colors = [cmap(n["order"]) for n in notes]
            ax.scatter(xs, ys, s=sizes, c=colors, alpha=0.7, zorder=2)
        ax.set_xlim(-0.6, max_fret + 0.6)
        ax.set_ylim(6.6, 0.4)  # string 1 (high E) on top, like tablature
        ax.set_yticks(range(1, 7))
        ax.set_ylabel("string", fontsize=7)
        ax.set_title(
            f"bars from {facet['bar_index']} — {facet['movement']} "
            f"({facet['note_count']} notes)", fontsize=8)
    axes[-1, 0].set_xlabel("fret")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_report(report: Report, outdir: Path) -> list[Path]:
    """Write one figure per section present in the report; returns the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    grid_echo = report.drill.get("grid", {})
    for name, section in report.sections.items():
        path = outdir / f"{name}.png"
        if name == "duration":
            render_duration(section, path)
        elif name == "timing":
            render_timing(section, path, grid_echo)
        elif name == "rhythm":
            render_rhythm(section, path)
        elif name == "harmony":
            render_harmony(section, path)
        elif name == "fretboard":
            fretboard_echo = report.drill.get("fretboard", {})
            render_fretboard(section, path, fretboard_echo.get("max_fret", 22))
        written.append(path)
    return written
