"""Fretboard movement analysis: (string, fret) mapping, facets, octave shifts.

String 1 is the highest-pitched string.  Movement thresholds treat one hand
position as roughly four frets wide and half the string span tall; they are
configuration, not dogma.
"""
from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import TactusError
from .grid import GridConfig, seconds_to_beats
from .midi.events import NoteEvent, PerformanceStream

# E A D G B E, listed string 1 (high E) to string 6 (low E).
STANDARD_OPEN_PITCHES = (64, 59, 55, 50, 45, 40)


class FretboardError(TactusError, ValueError):
    pass


class BelowOpenString(FretboardError):
    pass


class AboveFretboard(FretboardError):
    pass


class EmptyFacet(FretboardError):
    pass


@dataclass(frozen=True)
class Tuning:
    """Open-string pitches (string 1 first) and the number of frets."""

    open_pitches: tuple[int, ...] = STANDARD_OPEN_PITCHES
    max_fret: int = 22

    def __post_init__(self) -> None:
        if len(self.open_pitches) != 6:
            raise ValueError(f"need 6 open pitches, got {len(self.open_pitches)}")
        if any(not 0 <= p <= 127 for p in self.open_pitches):
            raise ValueError("open pitches must be MIDI note numbers")
        if not 12 <= self.max_fret <= 30:
            raise ValueError(f"max_fret must be 12-30, got {self.max_fret}")

    def open_pitch(self, string: int) -> int:
        if not 1 <= string <= 6:
            raise ValueError(f"string must be 1-6, got {string}")
        return self.open_pitches[string - 1]


STANDARD_TUNING = Tuning()


def derive_string_fret(event: NoteEvent, tuning: Tuning = STANDARD_TUNING) -> tuple[int, int]:
    """Resolve a guitar-voiced event to its (string, fret) position."""
    if event.voice.kind != "guitar_string":
        raise FretboardError(f"event is not guitar-voiced: {event.voice.text}")
    string = event.voice.string
    fret = event.pitch - tuning.open_pitch(string)
    if fret < 0:
        raise BelowOpenString(
            f"pitch {event.pitch} is below open string {string} "
            f"({tuning.open_pitch(string)})")
    if fret > tuning.max_fret:
        raise AboveFretboard(
            f"pitch {event.pitch} needs fret {fret}, above fret {tuning.max_fret}")
    return string, fret


@dataclass(frozen=True)
class FretNote:
    """One note at its played position, timed in beats."""

    string: int
    fret: int
    onset_beats: float
    velocity: int

    def __post_init__(self) -> None:
        if not 1 <= self.string <= 6:
            raise ValueError(f"string must be 1-6, got {self.string}")
        if self.fret < 0:
            raise ValueError(f"fret must be >= 0, got {self.fret}")


def fret_notes_from_stream(
    stream: PerformanceStream,
    grid: GridConfig,
    tuning: Tuning = STANDARD_TUNING,
) -> tuple[list[FretNote], list[str]]:
    """Map guitar-voiced events to positions; unreachable notes warn."""
    notes, warnings = [], []
    for event in stream.events:
        if event.voice.kind != "guitar_string":
            continue
        try:
            string, fret = derive_string_fret(event, tuning)
        except FretboardError as err:
            warnings.append(str(err))
            continue
        notes.append(FretNote(
            string=string, fret=fret,
            onset_beats=seconds_to_beats(event.onset, grid.bpm),
            velocity=event.velocity,
        ))
    return notes, warnings


def note_jitter(note: FretNote) -> tuple[float, float]:
    """Deterministic per-note jitter in [-0.5, 0.5) for overplot reduction.

    Derived from a hash of the note's fields so renders are reproducible
    across processes and platforms.
    """
    digest = hashlib.sha256(
        f"{note.string}|{note.fret}|{note.onset_beats!r}|{note.velocity}".encode()
    ).digest()
    jx = int.from_bytes(digest[:4], "big") / 2**32 - 0.5
    jy = int.from_bytes(digest[4:8], "big") / 2**32 - 0.5
    return jx, jy


@dataclass(frozen=True)
class FacetStats:
    """Position summary of one facet (one or more bars)."""

    bar_index: int
    note_count: int
    fret_min: int | None = None
    fret_max: int | None = None
    fret_centroid: float | None = None
    string_min: int | None = None
    string_max: int | None = None
    string_centroid: float | None = None
    pitch_classes: tuple[tuple[int, int], ...] = ()  # (pc, count), sorted
    open_string_count: int = 0  # fret-0 notes, reported separately


def facet_stats(
    notes: Sequence[FretNote],
    bar_index: int,
    tuning: Tuning = STANDARD_TUNING,
) -> FacetStats:
    if not notes:
        return FacetStats(bar_index=bar_index, note_count=0)
    frets = [n.fret for n in notes]
    strings = [n.string for n in notes]
    pcs = Counter((tuning.open_pitch(n.string) + n.fret) % 12 for n in notes)
    return FacetStats(
        bar_index=bar_index,
        note_count=len(notes),
        fret_min=min(frets),
        fret_max=max(frets),
        fret_centroid=sum(frets) / len(frets),
        string_min=min(strings),
        string_max=max(strings),
        string_centroid=sum(strings) / len(strings),
        pitch_classes=tuple(sorted(pcs.items())),
        open_string_count=sum(1 for f in frets if f == 0),
    )


def facet_by_bar(
    notes: Sequence[FretNote],
    grid: GridConfig,
    bars_per_facet: int = 1,
    tuning: Tuning = STANDARD_TUNING,
) -> list[tuple[list[FretNote], FacetStats]]:
    """Partition notes into consecutive bar groups; empty facets stay inline."""
    if bars_per_facet < 1:
        raise ValueError(f"bars_per_facet must be >= 1, got {bars_per_facet}")
    span = grid.beats_per_bar * bars_per_facet
    buckets: dict[int, list[FretNote]] = {}
    for n in notes:
        buckets.setdefault(int(n.onset_beats // span), []).append(n)
    if not buckets:
        return []
    facets = []
    for facet_index in range(max(buckets) + 1):
        group = sorted(
            buckets.get(facet_index, ()), key=lambda n: (n.onset_beats, n.string))
        stats = facet_stats(group, bar_index=facet_index * bars_per_facet,
                            tuning=tuning)
        facets.append((group, stats))
    return facets


def temporal_color_index(notes: Sequence[FretNote], tuning: Tuning = STANDARD_TUNING) -> list[float]:
    """Normalized play-order values in [0, 1]; onset ties order by pitch."""
    if not notes:
        raise EmptyFacet("no notes to order")
    if len(notes) == 1:
        return [0.0]
    order = sorted(
        range(len(notes)),
        key=lambda i: (notes[i].onset_beats,
                       tuning.open_pitch(notes[i].string) + notes[i].fret),
    )
    values = [0.0] * len(notes)
    for rank, i in enumerate(order):
        values[i] = rank / (len(notes) - 1)
    return values


def _normalized_pcs(stats: FacetStats) -> dict[int, Fraction]:
    total = sum(count for _, count in stats.pitch_classes)
    return {pc: Fraction(count, total) for pc, count in stats.pitch_classes}


def detect_octave_shift(a: FacetStats, b: FacetStats) -> int | None:
    """Fret offset between two facets playing the same pitch-class profile.

    Requires equal pitch-class multisets up to a count scale factor and a
    centroid offset of at least one fret; +/-12 flags the
    same-position-one-octave-up case.
    """
    if a.note_count == 0 or b.note_count == 0:
        raise EmptyFacet("octave-shift detection needs non-empty facets")
    if _normalized_pcs(a) != _normalized_pcs(b):
        return None
    offset = round(b.fret_centroid - a.fret_centroid)
    return offset if abs(offset) >= 1 else None


def movement_class(
    stats: FacetStats,
    position_frets: float = 4.0,
    position_strings: float = 2.0,
    dominance: float = 2.0,
) -> str:
    """Classify hand movement as horizontal, vertical, mixed, or stationary.

    Spans are normalized by the size of one playing position; a direction
    dominates when its normalized span is at least ``dominance`` times the
    other.
    """
    if stats.note_count == 0:
        return "stationary"
    h = (stats.fret_max - stats.fret_min) / position_frets
    v = (stats.string_max - stats.string_min) / position_strings
    if h < 1 and v < 1:
        return "stationary"
    if h >= dominance * v:
        return "horizontal"
    if v >= dominance * h:
        return "vertical"
    return "mixed"
