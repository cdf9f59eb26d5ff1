"""tactus: practice analytics for MIDI instruments.

Parses MIDI performances (files or live streams), aligns them to a metronome
grid, and computes musician-facing feedback: note-duration verdicts, timing
consistency, rhythm quantization with accents, chord-progression fit, and
fretboard movement.
"""
from .duration import DurationVerdict, Verdict, classify_duration, pie_geometry
from .grid import GridConfig, GridPoint, circular_angle, fold, nearest_grid, seconds_to_beats
from .harmony import Chord, ChordProgression, NoteFit, Scale, classify_note
from .midi import NoteEvent, PerformanceStream, VoiceTag, parse_smf, write_smf
from .rhythm import DurationSymbol, QuantizedNote, quantize_ioi, representable_set
from .synthgen import ErrorModel, PatternSpec, generate
from .timing import OnsetRecord, TimingSummary, build_records, tolerance_score

__version__ = "0.1.0"
