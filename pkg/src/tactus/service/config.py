"""Drill configuration: everything the system is told about the exercise.

Configs load from a JSON document (or CLI flags mirroring the same fields)
and validate eagerly; a bad value raises ConfigError naming the field path.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from ..errors import TactusError
from ..fretboard import Tuning
from ..grid import DEFAULT_TOLERANCE_BEATS, GridConfig
from ..harmony import ChordProgression
from ..midi.events import DEFAULT_STRING_CHANNELS, GM_DRUM_CHANNEL, InstrumentProfile
from ..rhythm import (
    DEFAULT_VOCABULARY,
    DurationSymbol,
    VocabularyConfig,
    parse_symbol,
    representable_set,
)
from ..synthgen import ErrorModel, PatternSpec

DRILL_KINDS = ("duration", "timing", "accents", "chord-progression", "fretboard")

# Report/frame section key per drill kind.
SECTION_KEYS = {
    "duration": "duration",
    "timing": "timing",
    "accents": "rhythm",
    "chord-progression": "harmony",
    "fretboard": "fretboard",
}


class ConfigError(TactusError, ValueError):
    """Invalid drill configuration; ``field`` names the offending entry."""

    def __init__(self, field_path: str, message: str):
        super().__init__(f"{field_path}: {message}")
        self.field = field_path


def _require(condition: bool, field_path: str, message: str) -> None:
    if not condition:
        raise ConfigError(field_path, message)


def _number(data: Mapping, key: str, default, path: str) -> float:
    value = data.get(key, default)
    _require(isinstance(value, (int, float)) and not isinstance(value, bool),
             f"{path}.{key}", f"expected a number, got {value!r}")
    return value


def _integer(data: Mapping, key: str, default, path: str) -> int:
    value = data.get(key, default)
    _require(isinstance(value, int) and not isinstance(value, bool),
             f"{path}.{key}", f"expected an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class DurationParams:
    vocabulary: tuple[tuple[DurationSymbol, Fraction], ...]
    threshold: float = 0.10


@dataclass(frozen=True)
class TimingParams:
    bin_width_beats: float = 0.125
    bandwidth_beats: float = 0.02
    density_samples: int = 256


@dataclass(frozen=True)
class AccentParams:
    vocabulary: VocabularyConfig = DEFAULT_VOCABULARY
    accent_mode: str = "relative"
    accent_cutoff: float = 0.8
    pattern_period: int = 0  # 0 = no declared pattern to verify
    pattern_offset: int = 0


@dataclass(frozen=True)
class FretboardParams:
    tuning: Tuning = Tuning()
    bars_per_facet: int = 1


@dataclass(frozen=True)
class DrillConfig:
    kind: str
    grid: GridConfig
    duration: DurationParams
    timing: TimingParams
    accents: AccentParams
    harmony: ChordProgression | None
    fretboard: FretboardParams
    instrument: InstrumentProfile
    synth_pattern: PatternSpec | None = None
    synth_model: ErrorModel | None = None

    @property
    def section_key(self) -> str:
        return SECTION_KEYS[self.kind]


def _parse_grid(data: Mapping) -> GridConfig:
    bpm = _number(data, "bpm", 120.0, "grid")
    _require(bpm > 0, "grid.bpm", "must be > 0")
    beats_per_bar = _integer(data, "beats_per_bar", 4, "grid")
    _require(beats_per_bar >= 1, "grid.beats_per_bar", "must be >= 1")
    subdivision = _integer(data, "subdivision", 2, "grid")
    _require(subdivision >= 1, "grid.subdivision", "must be >= 1")
    cycle_beats = _number(data, "cycle_beats", float(beats_per_bar), "grid")
    _require(cycle_beats > 0, "grid.cycle_beats", "must be > 0")
    tolerance = _number(data, "tolerance_beats", DEFAULT_TOLERANCE_BEATS, "grid")
    _require(tolerance >= 0, "grid.tolerance_beats", "must be >= 0")
    try:
        return GridConfig(
            bpm=float(bpm), beats_per_bar=beats_per_bar, subdivision=subdivision,
            cycle_beats=float(cycle_beats), tolerance_beats=float(tolerance),
        )
    except ValueError as err:
        raise ConfigError("grid", str(err)) from None


def _parse_duration(data: Mapping) -> DurationParams:
    threshold = _number(data, "threshold", 0.10, "duration")
    _require(threshold >= 0, "duration.threshold", "must be >= 0")
    names = data.get("vocabulary", ["quarter", "half", "half.", "whole"])
    _require(isinstance(names, Sequence) and names and not isinstance(names, str),
             "duration.vocabulary", "expected a non-empty list of symbols")
    try:
        symbols = tuple((parse_symbol(n), parse_symbol(n).beats) for n in names)
    except ValueError as err:
        raise ConfigError("duration.vocabulary", str(err)) from None
    return DurationParams(vocabulary=symbols, threshold=float(threshold))


def _parse_vocabulary(data: Mapping) -> VocabularyConfig:
    if not data:
        return DEFAULT_VOCABULARY
    defaults = DEFAULT_VOCABULARY
    bases = tuple(data.get("bases", defaults.bases))
    triplet_bases = tuple(data.get("triplet_bases", defaults.triplet_bases))
    try:
        config = VocabularyConfig(
            bases=bases,
            max_dots=_integer(data, "max_dots", defaults.max_dots, "accents.vocabulary"),
            allow_triplets=bool(data.get("allow_triplets", defaults.allow_triplets)),
            triplet_bases=triplet_bases,
            allow_ties=bool(data.get("allow_ties", defaults.allow_ties)),
        )
        representable_set(config)  # validates base names eagerly
    except ValueError as err:
        raise ConfigError("accents.vocabulary", str(err)) from None
    return config


def _parse_accents(data: Mapping) -> AccentParams:
    mode = data.get("accent_mode", "relative")
    _require(mode in ("relative", "threshold"), "accents.accent_mode",
             f"must be 'relative' or 'threshold', got {mode!r}")
    cutoff = _number(data, "accent_cutoff", 0.8, "accents")
    pattern = data.get("pattern") or {}
    period = _integer(pattern, "period", 0, "accents.pattern")
    offset = _integer(pattern, "offset", 0, "accents.pattern")
    _require(period >= 0, "accents.pattern.period", "must be >= 0")
    if period:
        _require(0 <= offset < period, "accents.pattern.offset",
                 f"must be in 0..{period - 1}")
    return AccentParams(
        vocabulary=_parse_vocabulary(data.get("vocabulary") or {}),
        accent_mode=mode,
        accent_cutoff=float(cutoff),
        pattern_period=period,
        pattern_offset=offset,
    )


def _parse_harmony(data: Mapping | None, kind: str) -> ChordProgression | None:
    if data is None:
        _require(kind != "chord-progression", "harmony",
                 "chord-progression drills need a harmony section")
        return None
    key = data.get("key", "C")
    mode = data.get("mode", "major")
    chords = data.get("chords")
    _require(isinstance(chords, str) and chords.strip() != "", "harmony.chords",
             "expected chord text such as 'C Am F G'")
    try:
        return ChordProgression.parse(key, mode, chords)
    except ValueError as err:
        raise ConfigError("harmony", str(err)) from None


def _parse_fretboard(data: Mapping) -> FretboardParams:
    pitches = data.get("tuning", list(Tuning().open_pitches))
    _require(isinstance(pitches, Sequence) and len(pitches) == 6,
             "fretboard.tuning", "expected six open-string pitches")
    max_fret = _integer(data, "max_fret", 22, "fretboard")
    bars_per_facet = _integer(data, "bars_per_facet", 1, "fretboard")
    _require(bars_per_facet >= 1, "fretboard.bars_per_facet", "must be >= 1")
    try:
        tuning = Tuning(open_pitches=tuple(pitches), max_fret=max_fret)
    except ValueError as err:
        raise ConfigError("fretboard.tuning", str(err)) from None
    return FretboardParams(tuning=tuning, bars_per_facet=bars_per_facet)


def _parse_instrument(data: Mapping) -> InstrumentProfile:
    kind = data.get("kind", "keyboard")
    _require(kind in ("keyboard", "drums", "guitar"), "instrument.kind",
             f"must be keyboard, drums, or guitar, got {kind!r}")
    drum_channel = _integer(data, "drum_channel", GM_DRUM_CHANNEL, "instrument")
    raw_channels = data.get("string_channels", DEFAULT_STRING_CHANNELS)
    try:
        string_channels = {int(ch): int(s) for ch, s in raw_channels.items()}
    except (AttributeError, ValueError):
        raise ConfigError("instrument.string_channels",
                          "expected a channel-to-string mapping") from None
    _require(all(1 <= s <= 6 for s in string_channels.values()),
             "instrument.string_channels", "strings must be 1-6")
    return InstrumentProfile(
        kind=kind, drum_channel=drum_channel, string_channels=string_channels)


def _parse_synth(data: Mapping | None, grid: GridConfig) -> tuple[PatternSpec | None, ErrorModel | None]:
    if not data:
        return None, None
    pattern_data = data.get("pattern") or {}
    model_data = data.get("model") or {}
    repetitions = _integer(pattern_data, "repetitions", 4, "synth.pattern")
    try:
        if "slots" in pattern_data:
            slots = tuple(pattern_data["slots"])
            pitches = tuple(pattern_data.get("pitches", [60] * len(slots)))
            pattern = PatternSpec.melody(
                grid, slots, pitches, repetitions=repetitions,
                channel=_integer(pattern_data, "channel", 0, "synth.pattern"),
                hold_beats=pattern_data.get("hold_beats"),
            )
        else:
            pattern = PatternSpec.every_slot(
                grid, repetitions=repetitions,
                pitch=_integer(pattern_data, "pitch", 60, "synth.pattern"),
                channel=_integer(pattern_data, "channel", 0, "synth.pattern"),
                hold_beats=pattern_data.get("hold_beats"),
            )
        known = {f.name for f in ErrorModel.__dataclass_fields__.values()}
        unknown = set(model_data) - known
        _require(not unknown, "synth.model", f"unknown fields {sorted(unknown)}")
        model = ErrorModel(**model_data)
    except (ValueError, TypeError) as err:
        raise ConfigError("synth", str(err)) from None
    return pattern, model


def load_config(data: Mapping[str, Any]) -> DrillConfig:
    """Build a validated DrillConfig from a parsed configuration document."""
    kind = data.get("kind", "timing")
    _require(kind in DRILL_KINDS, "kind",
             f"must be one of {', '.join(DRILL_KINDS)}; got {kind!r}")
    grid = _parse_grid(data.get("grid") or {})
    pattern, model = _parse_synth(data.get("synth"), grid)
    return DrillConfig(
        kind=kind,
        grid=grid,
        duration=_parse_duration(data.get("duration") or {}),
        timing=TimingParams(
            bin_width_beats=_number(data.get("timing") or {}, "bin_width_beats",
                                    0.125, "timing"),
            bandwidth_beats=_number(data.get("timing") or {}, "bandwidth_beats",
                                    0.02, "timing"),
            density_samples=_integer(data.get("timing") or {}, "density_samples",
                                     256, "timing"),
        ),
        accents=_parse_accents(data.get("accents") or {}),
        harmony=_parse_harmony(data.get("harmony"), kind),
        fretboard=_parse_fretboard(data.get("fretboard") or {}),
        instrument=_parse_instrument(data.get("instrument") or {}),
        synth_pattern=pattern,
        synth_model=model,
    )


def config_echo(config: DrillConfig) -> dict:
    """The configuration summary embedded in reports and frames."""
    echo: dict[str, Any] = {
        "kind": config.kind,
        "grid": {
            "bpm": config.grid.bpm,
            "beats_per_bar": config.grid.beats_per_bar,
            "subdivision": config.grid.subdivision,
            "cycle_beats": config.grid.cycle_beats,
            "tolerance_beats": config.grid.tolerance_beats,
        },
        "instrument": {"kind": config.instrument.kind},
    }
    if config.kind == "duration":
        echo["duration"] = {
            "vocabulary": [s.text for s, _ in config.duration.vocabulary],
            "threshold": config.duration.threshold,
        }
    if config.kind == "accents":
        echo["accents"] = {
            "accent_mode": config.accents.accent_mode,
            "accent_cutoff": config.accents.accent_cutoff,
            "pattern": {"period": config.accents.pattern_period,
                        "offset": config.accents.pattern_offset},
        }
    if config.harmony is not None:
        echo["harmony"] = {
            "chords": " ".join(c.text for c in config.harmony.bars),
        }
    if config.kind == "fretboard":
        echo["fretboard"] = {
            "tuning": list(config.fretboard.tuning.open_pitches),
            "max_fret": config.fretboard.tuning.max_fret,
            "bars_per_facet": config.fretboard.bars_per_facet,
        }
    return echo
