"""Harmony classification tests: set membership, binning, octave invariance."""
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tactus.grid import GridConfig
from tactus.harmony import (
    CHORD_TEMPLATES,
    Chord,
    ChordProgression,
    NoteFit,
    Scale,
    bin_notes,
    classify_note,
    duration_category,
    locate_bar,
    parse_pitch_class,
)
from tactus.midi import NoteEvent, PerformanceStream

GRID = GridConfig(bpm=120, beats_per_bar=4, subdivision=2, cycle_beats=16)
C_MAJOR_SCALE = Scale.parse("C", "major")
C_MAJOR_CHORD = Chord.parse("C")
PROGRESSION = ChordProgression.parse("C", "major", "C Am F G")


class TestClassifyNote:
    def test_chord_tone(self):
        assert classify_note(4, C_MAJOR_CHORD, C_MAJOR_SCALE) is NoteFit.CHORD_TONE

    def test_scale_tone(self):
        assert classify_note(2, C_MAJOR_CHORD, C_MAJOR_SCALE) is NoteFit.SCALE_TONE

    def test_outside(self):
        assert classify_note(6, C_MAJOR_CHORD, C_MAJOR_SCALE) is NoteFit.OUTSIDE

    @given(st.integers(0, 127), st.integers(0, 11),
           st.sampled_from(sorted(CHORD_TEMPLATES)))
    def test_octave_invariance(self, pitch, root, quality):
        chord = Chord(root, quality)
        assert classify_note(pitch % 12, chord, C_MAJOR_SCALE) is classify_note(
            (pitch % 12 + 12 * 9) % 12, chord, C_MAJOR_SCALE)

    def test_diatonic_chord_is_subset_of_scale(self):
        # Every chord of the parsed C-major progression stays inside the
        # scale, so no chord tone can ever shadow a scale-tone verdict.
        for chord in PROGRESSION.bars:
            assert chord.pitch_classes <= PROGRESSION.scale.pitch_classes


class TestChordParsing:
    @pytest.mark.parametrize("text,root,quality", [
        ("C", 0, "major"),
        ("Am", 9, "minor"),
        ("G7", 7, "dominant7"),
        ("Fmaj7", 5, "major7"),
        ("Dm7", 2, "minor7"),
        ("Bdim", 11, "diminished"),
        ("Bb", 10, "major"),
        ("F#m", 6, "minor"),
    ])
    def test_parse(self, text, root, quality):
        chord = Chord.parse(text)
        assert (chord.root, chord.quality) == (root, quality)

    def test_text_round_trip(self):
        for text in ("C", "Am", "G7", "Fmaj7", "Dm7", "Bdim"):
            assert Chord.parse(Chord.parse(text).text) == Chord.parse(text)

    def test_unknown_suffix(self):
        with pytest.raises(ValueError):
            Chord.parse("Csus4")

    def test_note_names(self):
        assert parse_pitch_class("Eb") == 3
        assert parse_pitch_class("c#") == 1
        with pytest.raises(ValueError):
            parse_pitch_class("H")


class TestLocateBar:
    def test_origin(self):
        assert locate_bar(0, GRID, PROGRESSION) == (0, 0, PROGRESSION.bars[0])

    def test_wraps_after_full_progression(self):
        rep, bar, chord = locate_bar(17, GRID, PROGRESSION)
        assert (rep, bar) == (1, 0)
        assert chord == PROGRESSION.bars[0]

    def test_strictly_before_boundary(self):
        rep, bar, chord = locate_bar(7.99, GRID, PROGRESSION)
        assert (rep, bar) == (0, 1)
        assert chord == PROGRESSION.bars[1]


class TestDurationCategory:
    @pytest.mark.parametrize("value,category", [
        (1.0, "quarter"),
        (0.6, "eighth"),
        (3.2, "whole"),
        (3.0, "half"),     # exact midpoint goes shorter
        (0.1, "sixteenth"),
        (10.0, "whole"),
    ])
    def test_partition(self, value, category):
        assert duration_category(value) == category

    @given(st.floats(0.01, 10))
    def test_matches_midpoint_oracle(self, value):
        classes = {"whole": 4, "half": 2, "quarter": 1, "eighth": 0.5,
                   "sixteenth": 0.25}
        best = min(
            sorted(classes.items(), key=lambda kv: kv[1]),
            key=lambda kv: abs(value - kv[1]),
        )
        assert duration_category(value) == best[0]


def note(onset_beats, pitch, duration_beats=0.4):
    onset = onset_beats * 0.5  # 120 BPM
    return NoteEvent(onset, onset + duration_beats * 0.5, pitch, 80, 0)


class TestBinNotes:
    def test_single_cell(self):
        stream = PerformanceStream([note(0.0, 64), note(1.0, 76), note(2.0, 52)])
        cells, notes = bin_notes(stream, GRID, PROGRESSION)
        assert len(cells) == 1
        cell = cells[0]
        assert (cell.repetition, cell.bar, cell.pitch_class) == (0, 0, 4)
        assert cell.fit is NoteFit.CHORD_TONE
        assert cell.count == 3
        assert len(notes) == 3

    def test_empty_stream(self):
        cells, notes = bin_notes(PerformanceStream(), GRID, PROGRESSION)
        assert cells == [] and notes == []

    def test_two_repetitions_facet_grid(self):
        stream = PerformanceStream()
        for rep in range(2):
            for bar in range(4):
                stream.append(note(rep * 16 + bar * 4, 60))
        cells, _ = bin_notes(stream, GRID, PROGRESSION)
        assert {(c.repetition, c.bar) for c in cells} == {
            (rep, bar) for rep in range(2) for bar in range(4)}

    @given(st.lists(st.tuples(st.floats(0, 60), st.integers(0, 127)), max_size=50))
    def test_count_preservation(self, shape):
        stream = PerformanceStream([note(b, p) for b, p in shape])
        cells, notes = bin_notes(stream, GRID, PROGRESSION)
        assert sum(c.count for c in cells) == len(shape)
        assert len(notes) == len(shape)

    def test_all_chord_tone_fixture_has_no_orange_or_gray(self):
        # Playing only the current chord's notes: every cell is green.
        stream = PerformanceStream()
        for rep in range(2):
            for bar, chord in enumerate(PROGRESSION.bars):
                for i, pc in enumerate(sorted(chord.pitch_classes)):
                    stream.append(note(rep * 16 + bar * 4 + i, 60 + pc))
        cells, _ = bin_notes(stream, GRID, PROGRESSION)
        assert cells
        assert all(c.fit is NoteFit.CHORD_TONE for c in cells)

    def test_open_note_has_no_duration_class(self):
        stream = PerformanceStream([NoteEvent(0.0, None, 60, 80, 0)])
        _, notes = bin_notes(stream, GRID, PROGRESSION)
        assert notes[0].duration_class is None
