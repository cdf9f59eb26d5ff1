"""The versioned report document: one JSON object per analyzed performance.

Top-level keys: ``schema_version``, ``drill`` (config echo), ``warnings``,
and one analysis section per drill kind (``duration``, ``timing``,
``rhythm``, ``harmony``, ``fretboard``).  Reports round-trip through JSON
exactly and validate against REPORT_SCHEMA.
"""
from __future__ import annotations

import json
from dataclasses import dataclass

from ..errors import TactusError

SCHEMA_VERSION = "1"
SECTION_NAMES = ("duration", "timing", "rhythm", "harmony", "fretboard")


class ReportError(TactusError, ValueError):
    pass


@dataclass(frozen=True)
class Report:
    drill: dict
    sections: dict[str, dict]
    warnings: tuple[str, ...] = ()
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self) -> None:
        unknown = set(self.sections) - set(SECTION_NAMES)
        if unknown:
            raise ReportError(f"unknown report sections {sorted(unknown)}")

    def to_dict(self) -> dict:
        doc = {
            "schema_version": self.schema_version,
            "drill": self.drill,
            "warnings": list(self.warnings),
        }
        doc.update(self.sections)
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, doc: dict) -> "Report":
        if "schema_version" not in doc:
            raise ReportError("document has no schema_version")
        sections = {k: doc[k] for k in SECTION_NAMES if k in doc}
        return cls(
            drill=doc.get("drill", {}),
            sections=sections,
            warnings=tuple(doc.get("warnings", [])),
            schema_version=doc["schema_version"],
        )

    @classmethod
    def from_json(cls, text: str) -> "Report":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as err:
            raise ReportError(f"not valid JSON: {err}") from None
        return cls.from_dict(doc)


def _num(description: str) -> dict:
    return {"type": "number", "description": description}


_TIMING_ROW = {
    "type": "object",
    "required": ["repetition", "slot", "beat_in_cycle", "deviation_beats",
                 "velocity", "voice"],
    "properties": {
        "repetition": {"type": "integer"},
        "slot": {"type": "integer"},
        "beat_in_cycle": _num("grid position within the cycle"),
        "deviation_beats": _num("signed offset from the slot; negative = early"),
        "velocity": {"type": "integer", "minimum": 1, "maximum": 127},
        "voice": {"type": "string"},
    },
}

_TIMING_AGGREGATES = {
    "score_percent": _num("share of onsets inside the tolerance zone"),
    "histogram": {
        "type": "object",
        "required": ["edges", "counts"],
        "properties": {
            "edges": {"type": "array", "items": {"type": "number"}},
            "counts": {"type": "array", "items": {"type": "integer"}},
        },
    },
    "density": {
        "type": "object",
        "required": ["x", "y"],
        "properties": {
            "x": {"type": "array", "items": {"type": "number"}},
            "y": {"type": "array", "items": {"type": "number"}},
        },
    },
}

REPORT_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "tactus practice report",
    "type": "object",
    "required": ["schema_version", "drill"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "drill": {"type": "object"},
        "warnings": {"type": "array", "items": {"type": "string"}},
        "duration": {
            "type": "object",
            "required": ["threshold", "verdicts"],
            "properties": {
                "threshold": _num("good-enough band as a fraction of the target"),
                "verdicts": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["held_beats", "nearest", "nearest_beats",
                                     "deviation_fraction", "verdict", "pie_layers"],
                        "properties": {
                            "held_beats": _num("time between onset and release"),
                            "nearest": {"type": "string"},
                            "nearest_beats": _num("beat value of the nearest symbol"),
                            "deviation_fraction": _num("(held - nearest) / nearest"),
                            "verdict": {"enum": ["good", "too_short", "too_long"]},
                            "pie_layers": {
                                "type": "array",
                                "items": {"type": "number",
                                          "exclusiveMinimum": 0, "maximum": 1},
                            },
                        },
                    },
                },
            },
        },
        "timing": {
            "type": "object",
            "required": ["score_percent", "tolerance_beats", "rows",
                         "row_means", "histogram", "density"],
            "properties": {
                "tolerance_beats": _num("half-width of the acceptance zone"),
                "rows": {"type": "array", "items": _TIMING_ROW},
                "row_means": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["repetition", "mean_deviation_beats"],
                        "properties": {
                            "repetition": {"type": "integer"},
                            "mean_deviation_beats": _num("per-row mean deviation"),
                        },
                    },
                },
                "voices": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["voice", "score_percent"],
                    },
                },
                **_TIMING_AGGREGATES,
            },
        },
        "rhythm": {
            "type": "object",
            "required": ["notes", "vocabulary", "ranges", "mismatches"],
            "properties": {
                "notes": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["symbol", "ioi_beats", "error_beats",
                                     "velocity", "accent"],
                        "properties": {
                            "symbol": {"type": "string"},
                            "ioi_beats": _num("gap to the next onset"),
                            "error_beats": _num("ioi minus the symbol's value"),
                            "velocity": {"type": "integer"},
                            "accent": {"type": "boolean"},
                        },
                    },
                },
                "vocabulary": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["symbol", "beats"],
                    },
                },
                "ranges": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["symbol", "lo_beats", "hi_beats"],
                    },
                },
                "mismatches": {"type": "array", "items": {"type": "integer"}},
            },
        },
        "harmony": {
            "type": "object",
            "required": ["chords", "waffle", "notes"],
            "properties": {
                "chords": {"type": "array", "items": {"type": "string"}},
                "waffle": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["repetition", "bar", "pitch_class", "fit",
                                     "count"],
                        "properties": {
                            "fit": {"enum": ["chord", "scale", "outside"]},
                            "pitch_class": {"type": "integer", "minimum": 0,
                                            "maximum": 11},
                        },
                    },
                },
                "notes": {"type": "array", "items": {"type": "object"}},
            },
        },
        "fretboard": {
            "type": "object",
            "required": ["facets", "octave_shifts"],
            "properties": {
                "facets": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["bar_index", "note_count", "movement",
                                     "notes"],
                        "properties": {
                            "movement": {"enum": ["horizontal", "vertical",
                                                  "mixed", "stationary"]},
                            "notes": {
                                "type": "array",
                                "items": {
                                    "type": "object",
                                    "required": ["string", "fret", "onset_beats",
                                                 "velocity", "order", "jitter"],
                                },
                            },
                        },
                    },
                },
                "octave_shifts": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "required": ["from_facet", "to_facet", "offset"],
                    },
                },
            },
        },
    },
}
