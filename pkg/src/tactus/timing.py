"""Timing-consistency analysis: folded onset records and their aggregations.

Records keep their repetition index so the row layout can show trends like a
warm-up; the aggregations (histogram, density) deliberately discard that
structure and only summarize the pooled deviations.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EmptyInput
from .grid import GridConfig, GridPoint, fold, nearest_grid, seconds_to_beats
from .midi.events import PerformanceStream, VoiceTag

DEFAULT_BIN_WIDTH_BEATS = 0.125  # a 32nd note
DEFAULT_BANDWIDTH_BEATS = 0.02
DEFAULT_DENSITY_SAMPLES = 256


@dataclass(frozen=True)
class OnsetRecord:
    """One note's deviation from its nearest grid slot (negative = early)."""

    deviation_beats: float
    grid: GridPoint
    velocity: int
    voice: VoiceTag = VoiceTag("keyboard")


def build_records(stream: PerformanceStream, grid: GridConfig) -> list[OnsetRecord]:
    """Fold every onset (open notes included) onto the drill grid."""
    records = []
    for event in stream.events:
        beats = seconds_to_beats(event.onset, grid.bpm)
        repetition, phase = fold(beats, grid.cycle_beats)
        point, deviation = nearest_grid(
            phase, grid.cycle_beats, grid.subdivision, repetition=repetition)
        records.append(OnsetRecord(
            deviation_beats=deviation, grid=point,
            velocity=event.velocity, voice=event.voice,
        ))
    return records


def tolerance_score(records: Sequence[OnsetRecord], tolerance_beats: float) -> float:
    """Percentage of notes whose deviation lies within the tolerance zone."""
    if not records:
        raise EmptyInput("no onset records to score")
    inside = sum(1 for r in records if abs(r.deviation_beats) <= tolerance_beats)
    return 100.0 * inside / len(records)


@dataclass(frozen=True)
class Histogram:
    """Deviation counts in bins centered on the grid slot.

    Edges are half-open toward late ([lo, hi)), so a deviation landing
    exactly on an edge counts in the later bin.
    """

    edges: tuple[float, ...]
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


def histogram(
    records: Sequence[OnsetRecord],
    bin_width_beats: float = DEFAULT_BIN_WIDTH_BEATS,
) -> Histogram:
    if bin_width_beats <= 0:
        raise ValueError(f"bin width must be > 0, got {bin_width_beats}")
    if not records:
        return Histogram(edges=(), counts=())
    indices = [
        math.floor(r.deviation_beats / bin_width_beats + 0.5) for r in records
    ]
    lo, hi = min(indices), max(indices)
    counts = [0] * (hi - lo + 1)
    for j in indices:
        counts[j - lo] += 1
    edges = tuple((j - 0.5) * bin_width_beats for j in range(lo, hi + 2))
    return Histogram(edges=edges, counts=tuple(counts))


@dataclass(frozen=True)
class DensityCurve:
    """A sampled kernel density estimate over onset deviations."""

    x: tuple[float, ...]
    y: tuple[float, ...]

    def integral(self) -> float:
        return float(np.trapezoid(self.y, self.x))

    @property
    def mode(self) -> float:
        return self.x[int(np.argmax(self.y))]


def density(
    records: Sequence[OnsetRecord],
    bandwidth_beats: float = DEFAULT_BANDWIDTH_BEATS,
    sample_count: int = DEFAULT_DENSITY_SAMPLES,
    support: tuple[float, float] | None = None,
) -> DensityCurve:
    """Gaussian KDE of the pooled deviations, normalized to integrate to 1.

    By default the curve is sampled on the data range padded by four
    bandwidths; pass ``support`` to pin it (e.g. to half a grid step).
    """
    if not records:
        raise EmptyInput("no onset records for density estimation")
    if bandwidth_beats <= 0:
        raise ValueError(f"bandwidth must be > 0, got {bandwidth_beats}")
    if sample_count < 2:
        raise ValueError(f"sample_count must be >= 2, got {sample_count}")
    deviations = np.array([r.deviation_beats for r in records])
    if support is None:
        pad = 4.0 * bandwidth_beats
        support = (float(deviations.min()) - pad, float(deviations.max()) + pad)
    xs = np.linspace(support[0], support[1], sample_count)
    z = (xs[:, None] - deviations[None, :]) / bandwidth_beats
    ys = np.exp(-0.5 * z * z).sum(axis=1) / (
        len(deviations) * bandwidth_beats * math.sqrt(2.0 * math.pi))
    area = np.trapezoid(ys, xs)
    if area > 0:
        ys = ys / area  # exact unit mass over the sampled support
    return DensityCurve(x=tuple(float(v) for v in xs), y=tuple(float(v) for v in ys))


@dataclass(frozen=True)
class TimingSummary:
    """Everything the timing views need for one batch of records."""

    rows: Mapping[int, tuple[OnsetRecord, ...]]
    score_percent: float
    histogram: Histogram
    density: DensityCurve


def rows_by_repetition(records: Iterable[OnsetRecord]) -> dict[int, tuple[OnsetRecord, ...]]:
    grouped: dict[int, list[OnsetRecord]] = {}
    for record in records:
        grouped.setdefault(record.grid.repetition, []).append(record)
    return {rep: tuple(rows) for rep, rows in sorted(grouped.items())}


def mean_deviation_by_repetition(records: Iterable[OnsetRecord]) -> dict[int, float]:
    """Per-row mean deviation: the signal aggregations cannot show."""
    means = {}
    for rep, rows in rows_by_repetition(records).items():
        means[rep] = sum(r.deviation_beats for r in rows) / len(rows)
    return means


def summarize(
    records: Sequence[OnsetRecord],
    grid: GridConfig,
    bin_width_beats: float = DEFAULT_BIN_WIDTH_BEATS,
    bandwidth_beats: float = DEFAULT_BANDWIDTH_BEATS,
    sample_count: int = DEFAULT_DENSITY_SAMPLES,
) -> TimingSummary:
    return TimingSummary(
        rows=rows_by_repetition(records),
        score_percent=tolerance_score(records, grid.tolerance_beats),
        histogram=histogram(records, bin_width_beats),
        density=density(records, bandwidth_beats, sample_count),
    )


def split_by_voice(records: Iterable[OnsetRecord]) -> dict[VoiceTag, list[OnsetRecord]]:
    """Partition records per drum kind / string / voice, one row each."""
    groups: dict[VoiceTag, list[OnsetRecord]] = {}
    for record in records:
        groups.setdefault(record.voice, []).append(record)
    return groups


@dataclass(frozen=True)
class PairedRow:
    """One repetition of a two-rhythm drill, both voices side by side."""

    repetition: int
    a: tuple[OnsetRecord, ...]
    b: tuple[OnsetRecord, ...]


def split_streams(
    a: Sequence[OnsetRecord], b: Sequence[OnsetRecord]
) -> list[PairedRow]:
    """Pair up two record sets by repetition (e.g. eighths vs. triplets)."""
    rows_a, rows_b = rows_by_repetition(a), rows_by_repetition(b)
    repetitions = sorted(set(rows_a) | set(rows_b))
    return [
        PairedRow(rep, rows_a.get(rep, ()), rows_b.get(rep, ()))
        for rep in repetitions
    ]


def compare_takes(
    takes: Sequence[Sequence[OnsetRecord]],
    grid: GridConfig,
    bin_width_beats: float = DEFAULT_BIN_WIDTH_BEATS,
    bandwidth_beats: float = DEFAULT_BANDWIDTH_BEATS,
) -> list[TimingSummary]:
    """Summarize several takes of the same drill, oldest first."""
    return [
        summarize(take, grid, bin_width_beats, bandwidth_beats)
        for take in takes
    ]
