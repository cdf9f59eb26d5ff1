"""Deterministic synthetic performances with characteristic practice problems.

Error models reproduce the patterns worth drilling against: warm-up lateness
that decays over early repetitions, unintentional rushing, timing jitter,
ghost notes, and accent patterns.  Streams are generated with a counter-based
RNG (Philox) so a (pattern, model) pair yields the identical stream on every
platform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import TactusError
from .fretboard import Tuning
from .grid import GridConfig, beats_to_seconds
from .midi.events import (
    GM_DRUM_CHANNEL,
    InstrumentProfile,
    PerformanceStream,
    pair_note_events,
)
from .midi.percussion import DRUM_PITCHES, DrumVoice


class InvalidSpec(TactusError, ValueError):
    pass


@dataclass(frozen=True)
class ErrorModel:
    """Knobs for how imperfectly the virtual musician plays.

    warmup: every onset of repetition r is late by a lateness that decays
    from ``warmup_lateness_beats`` to zero over ``warmup_repetitions``.
    tempo_drift: beats gained per repetition; positive means rushing, so
    repetition r plays ``drift * r`` beats early.
    """

    jitter_std_beats: float = 0.0
    warmup_lateness_beats: float = 0.0
    warmup_repetitions: int = 0
    warmup_shape: str = "linear"  # "linear" | "exponential"
    tempo_drift_beats_per_rep: float = 0.0
    ghost_note_prob: float = 0.0
    ghost_velocity_max: int = 25
    velocity_noise_std: float = 0.0
    accent_period: int = 0  # 0 disables the accent pattern
    accent_offset: int = 0
    accent_velocity: int = 110
    base_velocity: int = 80
    seed: int = 0

    def __post_init__(self) -> None:
        if self.jitter_std_beats < 0 or self.velocity_noise_std < 0:
            raise InvalidSpec("noise standard deviations must be >= 0")
        if not 0 <= self.ghost_note_prob < 1:
            raise InvalidSpec(
                f"ghost_note_prob must be in [0, 1), got {self.ghost_note_prob}")
        if not 1 <= self.ghost_velocity_max <= 127:
            raise InvalidSpec("ghost_velocity_max must be 1-127")
        if self.warmup_shape not in ("linear", "exponential"):
            raise InvalidSpec(f"unknown warmup shape {self.warmup_shape!r}")
        if self.accent_period < 0 or not 0 <= self.accent_offset:
            raise InvalidSpec("accent pattern fields must be non-negative")
        if self.accent_period and self.accent_offset >= self.accent_period:
            raise InvalidSpec("accent_offset must be < accent_period")
        for name in ("accent_velocity", "base_velocity"):
            if not 1 <= getattr(self, name) <= 127:
                raise InvalidSpec(f"{name} must be 1-127")

    def warmup_at(self, repetition: int) -> float:
        if self.warmup_lateness_beats == 0 or self.warmup_repetitions == 0:
            return 0.0
        progress = repetition / self.warmup_repetitions
        if self.warmup_shape == "linear":
            return self.warmup_lateness_beats * max(0.0, 1.0 - progress)
        return self.warmup_lateness_beats * math.exp(-3.0 * progress)


PERFECT = ErrorModel()


@dataclass(frozen=True)
class PatternSpec:
    """One cycle's worth of strikes, repeated: which slots, with what notes."""

    grid: GridConfig
    slots: tuple[int, ...]
    pitches: tuple[int, ...]
    channels: tuple[int, ...]
    hold_beats: tuple[float, ...]
    repetitions: int

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise InvalidSpec(f"repetitions must be >= 1, got {self.repetitions}")
        if not self.slots:
            raise InvalidSpec("pattern must strike at least one slot")
        if list(self.slots) != sorted(set(self.slots)):
            raise InvalidSpec("slots must be strictly increasing")
        if any(not 0 <= s < self.grid.slot_count for s in self.slots):
            raise InvalidSpec(
                f"slots must lie within the cycle (0..{self.grid.slot_count - 1})")
        for name in ("pitches", "channels", "hold_beats"):
            if len(getattr(self, name)) != len(self.slots):
                raise InvalidSpec(f"{name} must have one entry per slot")
        if any(not 0 <= p <= 127 for p in self.pitches):
            raise InvalidSpec("pitches must be MIDI note numbers")
        if any(h <= 0 for h in self.hold_beats):
            raise InvalidSpec("hold_beats must be > 0")

    @classmethod
    def every_slot(
        cls,
        grid: GridConfig,
        repetitions: int,
        pitch: int = 60,
        channel: int = 0,
        hold_beats: float | None = None,
    ) -> "PatternSpec":
        """Strike every subdivision slot of the cycle with one pitch."""
        n = grid.slot_count
        hold = hold_beats if hold_beats is not None else grid.step_beats / 2
        return cls(
            grid=grid,
            slots=tuple(range(n)),
            pitches=(pitch,) * n,
            channels=(channel,) * n,
            hold_beats=(hold,) * n,
            repetitions=repetitions,
        )

    @classmethod
    def melody(
        cls,
        grid: GridConfig,
        slots: Sequence[int],
        pitches: Sequence[int],
        repetitions: int,
        channel: int = 0,
        hold_beats: float | None = None,
    ) -> "PatternSpec":
        hold = hold_beats if hold_beats is not None else grid.step_beats / 2
        return cls(
            grid=grid,
            slots=tuple(slots),
            pitches=tuple(pitches),
            channels=(channel,) * len(slots),
            hold_beats=(hold,) * len(slots),
            repetitions=repetitions,
        )

    @classmethod
    def drums(
        cls,
        grid: GridConfig,
        slots: Sequence[int],
        voices: Sequence[DrumVoice],
        repetitions: int,
    ) -> "PatternSpec":
        try:
            pitches = tuple(DRUM_PITCHES[v] for v in voices)
        except KeyError as err:
            raise InvalidSpec(f"no canonical pad note for drum voice {err}") from None
        return cls(
            grid=grid,
            slots=tuple(slots),
            pitches=pitches,
            channels=(GM_DRUM_CHANNEL,) * len(slots),
            hold_beats=(grid.step_beats / 2,) * len(slots),
            repetitions=repetitions,
        )

    @classmethod
    def guitar(
        cls,
        grid: GridConfig,
        slots: Sequence[int],
        positions: Sequence[tuple[int, int]],  # (string, fret)
        repetitions: int,
        tuning: Tuning | None = None,
    ) -> "PatternSpec":
        tuning = tuning or Tuning()
        pitches = tuple(tuning.open_pitch(s) + f for s, f in positions)
        channels = tuple(s - 1 for s, _ in positions)
        return cls(
            grid=grid,
            slots=tuple(slots),
            pitches=pitches,
            channels=channels,
            hold_beats=(grid.step_beats / 2,) * len(slots),
            repetitions=repetitions,
        )


def generate(
    pattern: PatternSpec,
    model: ErrorModel = PERFECT,
    profile: InstrumentProfile | None = None,
) -> PerformanceStream:
    """Render a pattern through an error model into a performance stream.

    The raw on/off events go through the same FIFO pairing as file and live
    ingest, so overlapping same-pitch notes (a ghost under a held strike)
    come out in the canonical association an SMF round trip reproduces.
    """
    grid = pattern.grid
    rng = np.random.Generator(np.random.Philox(key=model.seed))
    half_step = grid.step_beats / 2.0
    raw: list[tuple] = []
    note_index = 0
    for rep in range(pattern.repetitions):
        rep_offset = model.warmup_at(rep) - model.tempo_drift_beats_per_rep * rep
        for slot, pitch, channel, hold in zip(
            pattern.slots, pattern.pitches, pattern.channels, pattern.hold_beats
        ):
            base_beats = rep * grid.cycle_beats + slot / grid.subdivision
            jitter = float(rng.normal(0.0, model.jitter_std_beats))
            onset_beats = max(0.0, base_beats + rep_offset + jitter)

            if model.accent_period:
                accented = note_index % model.accent_period == model.accent_offset
                velocity = model.accent_velocity if accented else model.base_velocity
            else:
                velocity = model.base_velocity
            velocity += float(rng.normal(0.0, model.velocity_noise_std))
            velocity = int(min(127, max(1, round(velocity))))

            raw.append(("on", pitch, velocity, channel,
                        beats_to_seconds(onset_beats, grid.bpm)))
            raw.append(("off", pitch, 0, channel,
                        beats_to_seconds(onset_beats + hold, grid.bpm)))
            note_index += 1

            if rng.uniform() < model.ghost_note_prob:
                ghost_beats = max(
                    0.0, base_beats + float(rng.uniform(-half_step, half_step)))
                ghost_velocity = int(rng.integers(1, model.ghost_velocity_max + 1))
                raw.append(("on", pitch, ghost_velocity, channel,
                            beats_to_seconds(ghost_beats, grid.bpm)))
                raw.append(("off", pitch, 0, channel,
                            beats_to_seconds(ghost_beats + hold / 2, grid.bpm)))
    raw.sort(key=lambda item: item[4])
    stream = pair_note_events(raw, profile=profile, device="synthetic")
    return stream
