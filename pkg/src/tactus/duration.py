"""Held-note duration verdicts and the pie/bar fill geometry.

A verdict never knows what the player intended: the nearest vocabulary
duration is the reference, and a note is judged against a fractional
threshold of that reference (default 10%).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EmptyInput
from .rhythm import DurationSymbol

DEFAULT_THRESHOLD = 0.10

# The beginner vocabulary: quarter, half, dotted half, whole.
DEFAULT_DURATIONS: tuple[tuple[DurationSymbol, Fraction], ...] = tuple(
    (symbol, symbol.beats)
    for symbol in (
        DurationSymbol("quarter"),
        DurationSymbol("half"),
        DurationSymbol("half", dots=1),
        DurationSymbol("whole"),
    )
)

BEATS_PER_REVOLUTION = 4.0  # one full pie is one whole note
PIE_TICK_FRACTIONS = tuple(i / 8 for i in range(8))  # eighths of a revolution


class EmptyVocabulary(EmptyInput):
    """No reference durations were supplied."""


class Verdict(enum.Enum):
    GOOD = "good"
    TOO_SHORT = "too_short"
    TOO_LONG = "too_long"


@dataclass(frozen=True)
class DurationVerdict:
    held_beats: float
    nearest: DurationSymbol
    nearest_beats: float
    deviation_fraction: float  # (held - nearest) / nearest
    verdict: Verdict


def classify_duration(
    held_beats: float,
    vocabulary: Sequence[tuple[DurationSymbol, Fraction]] = DEFAULT_DURATIONS,
    threshold: float = DEFAULT_THRESHOLD,
) -> DurationVerdict:
    """Judge a held duration against the nearest vocabulary entry.

    Ties between two equally distant entries go to the shorter one, so a
    release that lands halfway is reported as holding the shorter value too
    long rather than quietly passing as the longer one.
    """
    if held_beats <= 0:
        raise ValueError(f"held_beats must be > 0, got {held_beats}")
    if not vocabulary:
        raise EmptyVocabulary("duration vocabulary is empty")
    x = Fraction(held_beats)
    nearest_symbol, nearest_value = None, None
    for symbol, value in sorted(vocabulary, key=lambda sv: sv[1]):
        if nearest_value is None or abs(x - value) < abs(x - nearest_value):
            nearest_symbol, nearest_value = symbol, value
    deviation = (held_beats - float(nearest_value)) / float(nearest_value)
    if deviation < -threshold:
        verdict = Verdict.TOO_SHORT
    elif deviation <= threshold:
        verdict = Verdict.GOOD
    else:
        verdict = Verdict.TOO_LONG
    return DurationVerdict(
        held_beats=held_beats,
        nearest=nearest_symbol,
        nearest_beats=float(nearest_value),
        deviation_fraction=deviation,
        verdict=verdict,
    )


@dataclass(frozen=True)
class PieGeometry:
    """Fill fractions for the pie (or bar) encoding of one held note.

    Each layer is a full revolution worth four beats; only the last layer
    may be partial, and overflow past a whole note starts a new, darker
    layer on top.
    """

    layers: tuple[float, ...]
    tick_fractions: tuple[float, ...] = PIE_TICK_FRACTIONS

    @property
    def held_beats(self) -> float:
        return sum(self.layers) * BEATS_PER_REVOLUTION


def pie_geometry(held_beats: float) -> PieGeometry:
    """Decompose a held duration into revolution fill fractions."""
    if held_beats <= 0:
        raise ValueError(f"held_beats must be > 0, got {held_beats}")
    layers = []
    k = 0
    while held_beats - k * BEATS_PER_REVOLUTION > 0:
        remaining = held_beats - k * BEATS_PER_REVOLUTION
        layers.append(min(remaining, BEATS_PER_REVOLUTION) / BEATS_PER_REVOLUTION)
        k += 1
    return PieGeometry(layers=tuple(layers))
