"""General MIDI percussion key map, collapsed to the five practice voices.

Shipped as data so e-drum kits with nonstandard pad notes can override it.
Pitches outside the GM range (35-81) are Other.
"""
from __future__ import annotations

import enum


class DrumVoice(enum.Enum):
    KICK = "kick"
    SNARE = "snare"
    HIHAT = "hihat"
    TOM = "tom"
    CYMBAL = "cymbal"
    OTHER = "other"


GM_PERCUSSION: dict[int, DrumVoice] = {
    35: DrumVoice.KICK,     # Acoustic Bass Drum
    36: DrumVoice.KICK,     # Bass Drum 1
    37: DrumVoice.SNARE,    # Side Stick
    38: DrumVoice.SNARE,    # Acoustic Snare
    39: DrumVoice.OTHER,    # Hand Clap
    40: DrumVoice.SNARE,    # Electric Snare
    41: DrumVoice.TOM,      # Low Floor Tom
    42: DrumVoice.HIHAT,    # Closed Hi-Hat
    43: DrumVoice.TOM,      # High Floor Tom
    44: DrumVoice.HIHAT,    # Pedal Hi-Hat
    45: DrumVoice.TOM,      # Low Tom
    46: DrumVoice.HIHAT,    # Open Hi-Hat
    47: DrumVoice.TOM,      # Low-Mid Tom
    48: DrumVoice.TOM,      # Hi-Mid Tom
    49: DrumVoice.CYMBAL,   # Crash Cymbal 1
    50: DrumVoice.TOM,      # High Tom
    51: DrumVoice.CYMBAL,   # Ride Cymbal 1
    52: DrumVoice.CYMBAL,   # Chinese Cymbal
    53: DrumVoice.CYMBAL,   # Ride Bell
    54: DrumVoice.OTHER,    # Tambourine
    55: DrumVoice.CYMBAL,   # Splash Cymbal
    56: DrumVoice.OTHER,    # Cowbell
    57: DrumVoice.CYMBAL,   # Crash Cymbal 2
    58: DrumVoice.OTHER,    # Vibraslap
    59: DrumVoice.CYMBAL,   # Ride Cymbal 2
    60: DrumVoice.OTHER,    # Hi Bongo
    61: DrumVoice.OTHER,    # Low Bongo
    62: DrumVoice.OTHER,    # Mute Hi Conga
    63: DrumVoice.OTHER,    # Open Hi Conga
    64: DrumVoice.OTHER,    # Low Conga
    65: DrumVoice.OTHER,    # High Timbale
    66: DrumVoice.OTHER,    # Low Timbale
    67: DrumVoice.OTHER,    # High Agogo
    68: DrumVoice.OTHER,    # Low Agogo
    69: DrumVoice.OTHER,    # Cabasa
    70: DrumVoice.OTHER,    # Maracas
    71: DrumVoice.OTHER,    # Short Whistle
    72: DrumVoice.OTHER,    # Long Whistle
    73: DrumVoice.OTHER,    # Short Guiro
    74: DrumVoice.OTHER,    # Long Guiro
    75: DrumVoice.OTHER,    # Claves
    76: DrumVoice.OTHER,    # Hi Wood Block
    77: DrumVoice.OTHER,    # Low Wood Block
    78: DrumVoice.OTHER,    # Mute Cuica
    79: DrumVoice.OTHER,    # Open Cuica
    80: DrumVoice.OTHER,    # Mute Triangle
    81: DrumVoice.OTHER,    # Open Triangle
}

# Canonical pad note per voice, for synthesizing drum patterns.
DRUM_PITCHES: dict[DrumVoice, int] = {
    DrumVoice.KICK: 36,
    DrumVoice.SNARE: 38,
    DrumVoice.HIHAT: 42,
    DrumVoice.TOM: 45,
    DrumVoice.CYMBAL: 49,
}
