"""Metronome grid arithmetic: seconds/beats conversion, cycle folding, slot lookup.

Everything here is a pure function of its arguments; the drill declares the
tempo and subdivision, nothing is inferred from the playing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

# Half-width of the acceptance zone around a grid slot, in beats.  A tenth of
# an eighth note at subdivision 2; always overridable per drill.
DEFAULT_TOLERANCE_BEATS = 0.05


@dataclass(frozen=True)
class GridConfig:
    """Everything the system knows about a drill's time structure."""

    bpm: float
    beats_per_bar: int = 4
    subdivision: int = 2
    cycle_beats: float = 4.0
    tolerance_beats: float = DEFAULT_TOLERANCE_BEATS

    def __post_init__(self) -> None:
        if self.bpm <= 0:
            raise ValueError(f"bpm must be > 0, got {self.bpm}")
        if self.beats_per_bar < 1:
            raise ValueError(f"beats_per_bar must be >= 1, got {self.beats_per_bar}")
        if self.subdivision < 1:
            raise ValueError(f"subdivision must be >= 1, got {self.subdivision}")
        if self.cycle_beats <= 0:
            raise ValueError(f"cycle_beats must be > 0, got {self.cycle_beats}")
        if self.tolerance_beats < 0:
            raise ValueError(f"tolerance_beats must be >= 0, got {self.tolerance_beats}")
        slots = self.cycle_beats * self.subdivision
        if abs(slots - round(slots)) > 1e-9:
            raise ValueError(
                f"cycle_beats ({self.cycle_beats}) must be a whole number of "
                f"subdivision steps (subdivision {self.subdivision})"
            )

    @property
    def slot_count(self) -> int:
        """Number of subdivision slots in one cycle."""
        return round(self.cycle_beats * self.subdivision)

    @property
    def step_beats(self) -> float:
        """Beats between adjacent grid slots."""
        return 1.0 / self.subdivision


@dataclass(frozen=True)
class GridPoint:
    """One subdivision slot of one repetition of the cycle."""

    repetition: int
    index: int
    beat_in_cycle: float  # always index / subdivision


def seconds_to_beats(t: float, bpm: float) -> float:
    """Convert a time in seconds to beats at the given tempo."""
    return t * bpm / 60.0


def beats_to_seconds(beats: float, bpm: float) -> float:
    """Convert beats to seconds at the given tempo."""
    return beats * 60.0 / bpm


def fold(onset_beats: float, cycle_beats: float) -> tuple[int, float]:
    """Split an absolute beat position into (repetition, phase within cycle).

    phase stays in [0, cycle_beats); a note just before the cycle boundary is
    NOT wrapped here -- wrap attachment happens in nearest_grid.
    """
    repetition = math.floor(onset_beats / cycle_beats)
    phase = onset_beats - repetition * cycle_beats
    # Guard against the quotient rounding across an integer boundary.
    if phase < 0:
        repetition -= 1
        phase = onset_beats - repetition * cycle_beats
    elif phase >= cycle_beats:
        repetition += 1
        phase = onset_beats - repetition * cycle_beats
    return repetition, phase


def unfold(repetition: int, phase_beats: float, cycle_beats: float) -> float:
    """Inverse of fold."""
    return repetition * cycle_beats + phase_beats


def nearest_grid(
    phase_beats: float,
    cycle_beats: float,
    subdivision: int,
    repetition: int = 0,
) -> tuple[GridPoint, float]:
    """Attach a phase to the closest grid slot by circular distance.

    Returns the slot and the signed deviation in beats (negative = early).
    A phase just below the cycle end attaches to slot 0 of the *next*
    repetition with a small negative deviation, so the wrap artifact of the
    linear row layout is resolved rather than hidden.  Exact midpoints between
    two slots resolve to the earlier slot (deviation +half step).
    """
    step = 1.0 / subdivision
    slot_count = round(cycle_beats * subdivision)
    nearest = round(phase_beats / step)
    # Candidates either side of the rounded slot guard against float edges.
    best_slot, best_dev = 0, math.inf
    for cand in (nearest - 1, nearest, nearest + 1):
        dev = phase_beats - cand * step
        if abs(dev) < abs(best_dev) - 1e-15 or (
            abs(abs(dev) - abs(best_dev)) <= 1e-15 and cand < best_slot
        ):
            best_slot, best_dev = cand, dev
    rep, index = repetition, best_slot
    if index >= slot_count:  # wrapped forward into the next repetition
        rep += index // slot_count
        index %= slot_count
    elif index < 0:  # wrapped back into the previous repetition
        rep -= 1
        index += slot_count
    point = GridPoint(repetition=rep, index=index, beat_in_cycle=index / subdivision)
    return point, best_dev


def circular_angle(phase_beats: float, cycle_beats: float) -> float:
    """Map a phase to an angle in [0, 2*pi) for the circular layout."""
    angle = 2.0 * math.pi * (phase_beats / cycle_beats)
    return angle % (2.0 * math.pi)
