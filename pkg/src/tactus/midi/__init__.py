"""MIDI ingestion: paired events, voice tags, SMF read/write, live pairing."""
from .events import (
    DEFAULT_STRING_CHANNELS,
    GM_DRUM_CHANNEL,
    InstrumentProfile,
    LivePairer,
    NoteEvent,
    PerformanceStream,
    VoiceTag,
    classify_drum,
    decode_live_event,
    pair_note_events,
)
from .percussion import DRUM_PITCHES, GM_PERCUSSION, DrumVoice
from .smf import (
    MalformedHeader,
    SmfError,
    TempoMap,
    TruncatedTrack,
    UnsupportedFormat,
    parse_smf,
    write_smf,
)

__all__ = [
    "DEFAULT_STRING_CHANNELS",
    "DRUM_PITCHES",
    "GM_DRUM_CHANNEL",
    "GM_PERCUSSION",
    "DrumVoice",
    "InstrumentProfile",
    "LivePairer",
    "MalformedHeader",
    "NoteEvent",
    "PerformanceStream",
    "SmfError",
    "TempoMap",
    "TruncatedTrack",
    "UnsupportedFormat",
    "VoiceTag",
    "classify_drum",
    "decode_live_event",
    "pair_note_events",
    "parse_smf",
    "write_smf",
]
