"""Chord-progression fit: classify played notes as chord, scale, or outside.

The drill declares a key and one chord per bar ("C Am F G"); classification
precedence is chord > scale > outside, working on chroma only so octaves
never matter.  This judges drill adherence, never musicality.
"""
from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from .grid import GridConfig, seconds_to_beats
from .midi.events import PerformanceStream

NOTE_NAMES = {
    "C": 0, "C#": 1, "DB": 1, "D": 2, "D#": 3, "EB": 3, "E": 4, "FB": 4,
    "E#": 5, "F": 5, "F#": 6, "GB": 6, "G": 7, "G#": 8, "AB": 8, "A": 9,
    "A#": 10, "BB": 10, "B": 11, "CB": 11, "B#": 0,
}

# Canonical (sharp-preferring) spelling per pitch class.
PC_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")

CHORD_TEMPLATES: dict[str, tuple[int, ...]] = {
    "major": (0, 4, 7),
    "minor": (0, 3, 7),
    "dominant7": (0, 4, 7, 10),
    "major7": (0, 4, 7, 11),
    "minor7": (0, 3, 7, 10),
    "diminished": (0, 3, 6),
}

SCALE_INTERVALS: dict[str, tuple[int, ...]] = {
    "major": (0, 2, 4, 5, 7, 9, 11),
    "minor": (0, 2, 3, 5, 7, 8, 10),
}

# Coarse duration classes for the secondary color scheme, in beats.
DURATION_CLASSES: tuple[tuple[str, float], ...] = (
    ("whole", 4.0), ("half", 2.0), ("quarter", 1.0),
    ("eighth", 0.5), ("sixteenth", 0.25),
)


class NoteFit(enum.Enum):
    CHORD_TONE = "chord"      # green
    SCALE_TONE = "scale"      # orange
    OUTSIDE = "outside"       # gray


def pitch_class(pitch: int) -> int:
    return pitch % 12


def parse_pitch_class(name: str) -> int:
    key = name.strip().upper()
    if key not in NOTE_NAMES:
        raise ValueError(f"unknown note name {name!r}")
    return NOTE_NAMES[key]


@dataclass(frozen=True)
class Scale:
    root: int
    intervals: tuple[int, ...] = SCALE_INTERVALS["major"]

    def __post_init__(self) -> None:
        if not 0 <= self.root <= 11:
            raise ValueError(f"scale root must be 0-11, got {self.root}")
        if 0 not in self.intervals or list(self.intervals) != sorted(set(self.intervals)):
            raise ValueError("scale intervals must be a sorted set containing 0")
        if any(not 0 <= i <= 11 for i in self.intervals):
            raise ValueError("scale intervals must lie within 0-11")

    @property
    def pitch_classes(self) -> frozenset[int]:
        return frozenset((self.root + i) % 12 for i in self.intervals)

    @classmethod
    def parse(cls, key: str, mode: str = "major") -> "Scale":
        mode_key = mode.strip().lower()
        if mode_key not in SCALE_INTERVALS:
            raise ValueError(f"unknown mode {mode!r}")
        return cls(root=parse_pitch_class(key), intervals=SCALE_INTERVALS[mode_key])


@dataclass(frozen=True)
class Chord:
    root: int
    quality: str = "major"

    def __post_init__(self) -> None:
        if not 0 <= self.root <= 11:
            raise ValueError(f"chord root must be 0-11, got {self.root}")
        if self.quality not in CHORD_TEMPLATES:
            raise ValueError(f"unknown chord quality {self.quality!r}")

    @property
    def pitch_classes(self) -> frozenset[int]:
        return frozenset((self.root + i) % 12 for i in CHORD_TEMPLATES[self.quality])

    @property
    def text(self) -> str:
        suffix = {"major": "", "minor": "m", "dominant7": "7", "major7": "maj7",
                  "minor7": "m7", "diminished": "dim"}[self.quality]
        return PC_NAMES[self.root] + suffix

    @classmethod
    def parse(cls, text: str) -> "Chord":
        """Parse chord text like C, Am, G7, Fmaj7, Dm7, Bdim."""
        token = text.strip()
        root_len = 2 if len(token) >= 2 and token[1] in "#b" else 1
        root = parse_pitch_class(token[:root_len])
        suffix = token[root_len:].lower()
        quality = {
            "": "major", "maj": "major", "m": "minor", "min": "minor",
            "7": "dominant7", "maj7": "major7", "m7": "minor7",
            "min7": "minor7", "dim": "diminished",
        }.get(suffix)
        if quality is None:
            raise ValueError(f"unknown chord suffix {suffix!r} in {text!r}")
        return cls(root=root, quality=quality)


@dataclass(frozen=True)
class ChordProgression:
    """The harmonic context of the drill: a scale and one chord per bar."""

    scale: Scale
    bars: tuple[Chord, ...]

    def __post_init__(self) -> None:
        if not self.bars:
            raise ValueError("progression needs at least one bar")

    @classmethod
    def parse(cls, key: str, mode: str, chords: str) -> "ChordProgression":
        bars = tuple(Chord.parse(tok) for tok in chords.split())
        return cls(scale=Scale.parse(key, mode), bars=bars)


def classify_note(pc: int, chord: Chord, scale: Scale) -> NoteFit:
    """Chord tone before scale tone before outside."""
    pc = pc % 12
    if pc in chord.pitch_classes:
        return NoteFit.CHORD_TONE
    if pc in scale.pitch_classes:
        return NoteFit.SCALE_TONE
    return NoteFit.OUTSIDE


def locate_bar(
    onset_beats: float, grid: GridConfig, progression: ChordProgression
) -> tuple[int, int, Chord]:
    """Which (repetition, bar, chord) of the progression a beat falls in."""
    if onset_beats < 0:
        raise ValueError(f"onset must be >= 0, got {onset_beats}")
    bars_elapsed = int(onset_beats // grid.beats_per_bar)
    bar_index = bars_elapsed % len(progression.bars)
    repetition = bars_elapsed // len(progression.bars)
    return repetition, bar_index, progression.bars[bar_index]


def duration_category(value_beats: float) -> str:
    """Snap a duration or IOI to the coarse five-class color scheme.

    Midpoint partition over {4, 2, 1, 0.5, 0.25}; exact midpoints go to the
    shorter class, consistent with quantization elsewhere.
    """
    if value_beats <= 0:
        raise ValueError(f"duration must be > 0, got {value_beats}")
    for name, beats in DURATION_CLASSES[:-1]:
        shorter = next(b for n, b in DURATION_CLASSES if b < beats)
        midpoint = (beats + shorter) / 2
        if value_beats > midpoint:
            return name
    return DURATION_CLASSES[-1][0]


@dataclass(frozen=True)
class WaffleCell:
    """Count of notes with one (chroma, fit) in one (repetition, bar) facet."""

    repetition: int
    bar: int
    pitch_class: int
    fit: NoteFit
    count: int


@dataclass(frozen=True)
class HarmonyNote:
    """One played note with its harmonic classification, for detail views."""

    repetition: int
    bar: int
    pitch_class: int
    fit: NoteFit
    onset_beats: float
    duration_class: str | None  # None while the note is still held


def bin_notes(
    stream: PerformanceStream,
    grid: GridConfig,
    progression: ChordProgression,
) -> tuple[list[WaffleCell], list[HarmonyNote]]:
    """Aggregate the stream into waffle counts plus per-note detail rows."""
    counts: Counter[tuple[int, int, int, NoteFit]] = Counter()
    notes: list[HarmonyNote] = []
    for event in stream.events:
        onset_beats = seconds_to_beats(event.onset, grid.bpm)
        repetition, bar, chord = locate_bar(onset_beats, grid, progression)
        pc = pitch_class(event.pitch)
        fit = classify_note(pc, chord, progression.scale)
        counts[(repetition, bar, pc, fit)] += 1
        duration_class = None
        if event.duration is not None:
            duration_class = duration_category(
                seconds_to_beats(event.duration, grid.bpm))
        notes.append(HarmonyNote(
            repetition=repetition, bar=bar, pitch_class=pc, fit=fit,
            onset_beats=onset_beats, duration_class=duration_class,
        ))
    cells = [
        WaffleCell(rep, bar, pc, fit, count)
        for (rep, bar, pc, fit), count in sorted(
            counts.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2], kv[0][3].value))
    ]
    return cells, notes
