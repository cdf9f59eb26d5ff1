"""Quantize inter-onset intervals to musical duration symbols, plus accents.

Beat values are kept as exact fractions (a triplet eighth is 1/3, not
0.3333...), so the representable set deduplicates cleanly and the midpoint
partition used for quantization has no floating-point gaps.

Symbols serialize to a small text grammar::

    symbol  = part [ "+" part ]        tie of two parts, longer part first
    part    = base [ dots ] [ "3" ]    "3" marks a triplet
    dots    = "." | ".."
    base    = "whole" | "half" | "quarter" | "eighth"
            | "sixteenth" | "thirtysecond"

Examples: "quarter.", "eighth3", "quarter+sixteenth".
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EmptyInput

BASE_BEATS: dict[str, Fraction] = {
    "whole": Fraction(4),
    "half": Fraction(2),
    "quarter": Fraction(1),
    "eighth": Fraction(1, 2),
    "sixteenth": Fraction(1, 4),
    "thirtysecond": Fraction(1, 8),
}

_DOT_FACTOR = {0: Fraction(1), 1: Fraction(3, 2), 2: Fraction(7, 4)}
_TRIPLET_FACTOR = Fraction(2, 3)


class EmptySet(EmptyInput):
    """Quantization was attempted against an empty symbol vocabulary."""


@dataclass(frozen=True)
class DurationSymbol:
    """A musical duration: base note value with dots, triplet, or a tie.

    A tie extension is itself a plain (untied) symbol, so ties are pairs.
    Dots add 50% (one) or 75% (two); a triplet scales by 2/3.
    """

    base: str
    dots: int = 0
    triplet: bool = False
    tie: "DurationSymbol | None" = None

    def __post_init__(self) -> None:
        if self.base not in BASE_BEATS:
            raise ValueError(f"unknown base duration {self.base!r}")
        if not 0 <= self.dots <= 2:
            raise ValueError(f"dots must be 0-2, got {self.dots}")
        if self.tie is not None and self.tie.tie is not None:
            raise ValueError("tie extensions cannot themselves be tied")

    @property
    def beats(self) -> Fraction:
        value = BASE_BEATS[self.base] * _DOT_FACTOR[self.dots]
        if self.triplet:
            value *= _TRIPLET_FACTOR
        if self.tie is not None:
            value += self.tie.beats
        return value

    @property
    def text(self) -> str:
        part = self.base + "." * self.dots + ("3" if self.triplet else "")
        if self.tie is not None:
            return part + "+" + self.tie.text
        return part

    def __str__(self) -> str:
        return self.text


def parse_symbol(text: str) -> DurationSymbol:
    """Parse the text grammar back into a DurationSymbol."""
    head, sep, rest = text.partition("+")
    if sep and ("+" in rest or not rest):
        raise ValueError(f"malformed symbol text {text!r}")

    def parse_part(part: str) -> tuple[str, int, bool]:
        triplet = part.endswith("3")
        if triplet:
            part = part[:-1]
        dots = len(part) - len(part.rstrip("."))
        base = part.rstrip(".")
        if base not in BASE_BEATS or dots > 2:
            raise ValueError(f"malformed symbol text {text!r}")
        return base, dots, triplet

    base, dots, triplet = parse_part(head)
    tie = None
    if sep:
        t_base, t_dots, t_triplet = parse_part(rest)
        tie = DurationSymbol(t_base, t_dots, t_triplet)
    return DurationSymbol(base, dots, triplet, tie)


@dataclass(frozen=True)
class VocabularyConfig:
    """Which durations the drill treats as playable."""

    bases: tuple[str, ...] = ("sixteenth", "eighth", "quarter", "half", "whole")
    max_dots: int = 1
    allow_triplets: bool = True
    # Triplets of long notes (half, whole) are rare in drills and would
    # crowd the quarter's quantization range; restrict by default.
    triplet_bases: tuple[str, ...] = ("sixteenth", "eighth", "quarter")
    allow_ties: bool = False


DEFAULT_VOCABULARY = VocabularyConfig()


def _preference(symbol: DurationSymbol) -> tuple:
    # Cleaner (shorter) notation wins on equal beat value: a single notehead
    # beats a tie pair, then fewer dots, then no triplet, then text order.
    dots = symbol.dots + (symbol.tie.dots if symbol.tie else 0)
    triplets = int(symbol.triplet) + (int(symbol.tie.triplet) if symbol.tie else 0)
    return (symbol.tie is not None, dots, triplets, symbol.text)


def representable_set(
    config: VocabularyConfig = DEFAULT_VOCABULARY,
) -> list[tuple[DurationSymbol, Fraction]]:
    """Enumerate the vocabulary, deduplicated by beat value and sorted.

    Triplets apply to undotted bases only (a dotted triplet collapses to the
    plain base value anyway); ties enumerate pairs of non-tied symbols.
    """
    if not config.bases:
        raise EmptySet("vocabulary has no base durations")
    parts: list[DurationSymbol] = []
    for base in config.bases:
        for dots in range(config.max_dots + 1):
            parts.append(DurationSymbol(base, dots))
        if config.allow_triplets and base in config.triplet_bases:
            parts.append(DurationSymbol(base, triplet=True))

    candidates = list(parts)
    if config.allow_ties:
        for first in parts:
            for second in parts:
                if second.beats <= first.beats:  # longer part written first
                    candidates.append(DurationSymbol(
                        first.base, first.dots, first.triplet, tie=second,
                    ))

    by_value: dict[Fraction, DurationSymbol] = {}
    for symbol in candidates:
        value = symbol.beats
        if value not in by_value or _preference(symbol) < _preference(by_value[value]):
            by_value[value] = symbol
    return [(by_value[v], v) for v in sorted(by_value)]


@dataclass(frozen=True)
class QuantizedNote:
    """One inter-onset interval snapped to its nearest duration symbol."""

    symbol: DurationSymbol
    ioi_beats: float
    error_beats: float  # ioi - symbol value; negative = played short
    velocity: int = 64
    accent: bool = False


def quantize_ioi(
    ioi_beats: float,
    rset: Sequence[tuple[DurationSymbol, Fraction]],
    velocity: int = 64,
    accent: bool = False,
) -> QuantizedNote:
    """Snap an IOI to the nearest representable duration (ties go shorter).

    Distances are compared exactly (the float IOI converts to a fraction
    without rounding), so the result always agrees with quantization_ranges.
    """
    if ioi_beats <= 0:
        raise ValueError(f"ioi must be > 0, got {ioi_beats}")
    if not rset:
        raise EmptySet("cannot quantize against an empty set")
    # Narrow with float bisection, then decide exactly among the neighbors
    # (float rounding can misplace the insertion point by one).
    pos = bisect.bisect_left([float(v) for _, v in rset], ioi_beats)
    candidates = rset[max(0, pos - 2): pos + 2]
    x = Fraction(ioi_beats)
    best_symbol, best_value = candidates[0]
    for symbol, value in candidates[1:]:
        if abs(x - value) < abs(x - best_value):
            best_symbol, best_value = symbol, value
    return QuantizedNote(
        symbol=best_symbol,
        ioi_beats=ioi_beats,
        error_beats=float(x - best_value),
        velocity=velocity,
        accent=accent,
    )


@dataclass(frozen=True)
class QuantizationRange:
    """The half-open interval (lo, hi] of IOIs that snap to one symbol.

    ``hi`` is None on the largest symbol (unbounded above); the smallest
    symbol's ``lo`` is zero.  Midpoints belong to the shorter symbol.
    """

    symbol: DurationSymbol
    lo: Fraction
    hi: Fraction | None

    def contains(self, ioi_beats: float) -> bool:
        x = Fraction(ioi_beats)
        return x > self.lo and (self.hi is None or x <= self.hi)

    @property
    def width(self) -> float:
        return float(self.hi - self.lo) if self.hi is not None else float("inf")


def quantization_ranges(
    rset: Sequence[tuple[DurationSymbol, Fraction]],
) -> list[QuantizationRange]:
    """Midpoint partition of (0, inf) across the representable set."""
    if len(rset) < 2:
        raise ValueError("need at least two representable durations to partition")
    ranges = []
    for i, (symbol, value) in enumerate(rset):
        lo = Fraction(0) if i == 0 else (rset[i - 1][1] + value) / 2
        hi = None if i == len(rset) - 1 else (value + rset[i + 1][1]) / 2
        ranges.append(QuantizationRange(symbol, lo, hi))
    return ranges


def detect_accents(
    velocities: Sequence[int],
    mode: str = "relative",
    cutoff: float = 0.8,
) -> list[bool]:
    """Flag accented notes by velocity.

    mode "threshold": flag velocities >= cutoff (an absolute 1-127 value).
    mode "relative": flag velocities >= cutoff * max(velocities); with no
    dynamic contrast at all (all velocities equal) every note is flagged.
    """
    if not velocities:
        raise EmptyInput("no notes to scan for accents")
    if mode == "threshold":
        bar = cutoff
    elif mode == "relative":
        bar = cutoff * max(velocities)
    else:
        raise ValueError(f"unknown accent mode {mode!r}")
    return [v >= bar for v in velocities]


def check_accent_pattern(
    flags: Sequence[bool], period: int, offset: int = 0
) -> list[int]:
    """Indices where the accent flags deviate from an every-Nth pattern."""
    if period < 1:
        raise ValueError(f"period must be >= 1, got {period}")
    if not 0 <= offset < period:
        raise ValueError(f"offset must be in 0..{period - 1}, got {offset}")
    return [i for i, flag in enumerate(flags) if flag != (i % period == offset)]


def onsets_to_iois(onsets_beats: Sequence[float]) -> list[float]:
    """Consecutive differences of a sorted onset list."""
    return [b - a for a, b in zip(onsets_beats, onsets_beats[1:])]


def quantize_performance(
    onsets_beats: Sequence[float],
    velocities: Sequence[int],
    rset: Sequence[tuple[DurationSymbol, Fraction]] | None = None,
    accent_mode: str = "relative",
    accent_cutoff: float = 0.8,
) -> list[QuantizedNote]:
    """Quantize a run of onsets; each note's IOI is the gap to the next onset.

    The final onset has no successor and is dropped (an IOI needs a pair),
    mirroring how the accent view shows n-1 symbols for n strikes.
    """
    iois = onsets_to_iois(onsets_beats)
    if not iois:
        return []
    if rset is None:
        rset = representable_set()
    flags = detect_accents(velocities[: len(iois)], accent_mode, accent_cutoff)
    return [
        quantize_ioi(ioi, rset, velocity=vel, accent=flag)
        for ioi, vel, flag in zip(iois, velocities, flags)
    ]
