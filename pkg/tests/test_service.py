"""Service-layer tests: config validation, reports, analysis pipeline, CLI."""
import json

import jsonschema
import pytest

from tactus.grid import GridConfig
from tactus.midi import DrumVoice
from tactus.service import (
    REPORT_SCHEMA,
    ConfigError,
    Report,
    analyze_stream,
    build_report,
    load_config,
)
from tactus.service.cli import main as cli_main
from tactus.service.export import export_csv
from tactus.service.figures import render_report
from tactus.service.frames import AnalysisFrame, event_from_dict, event_to_dict
from tactus.synthgen import ErrorModel, PatternSpec, generate

GRID = GridConfig(bpm=120, beats_per_bar=4, subdivision=2, cycle_beats=4)


def make_config(kind="timing", **overrides):
    doc = {"kind": kind, "grid": {"bpm": 120, "subdivision": 2, "cycle_beats": 4}}
    if kind == "chord-progression":
        doc["harmony"] = {"key": "C", "mode": "major", "chords": "C Am F G"}
        doc["grid"]["cycle_beats"] = 16
    if kind == "fretboard":
        doc["instrument"] = {"kind": "guitar"}
    doc.update(overrides)
    return load_config(doc)


class TestConfig:
    def test_defaults(self):
        config = load_config({})
        assert config.kind == "timing"
        assert config.grid.bpm == 120

    def test_invalid_bpm_names_field(self):
        with pytest.raises(ConfigError) as excinfo:
            load_config({"grid": {"bpm": 0}})
        assert excinfo.value.field == "grid.bpm"

    def test_unknown_kind(self):
        with pytest.raises(ConfigError) as excinfo:
            load_config({"kind": "juggling"})
        assert excinfo.value.field == "kind"

    def test_progression_required_for_harmony_drill(self):
        with pytest.raises(ConfigError) as excinfo:
            load_config({"kind": "chord-progression"})
        assert excinfo.value.field == "harmony"

    def test_bad_chord_text(self):
        with pytest.raises(ConfigError):
            load_config({"kind": "chord-progression",
                         "harmony": {"chords": "C Xm"}})

    def test_duration_vocabulary_parsing(self):
        config = load_config({"kind": "duration",
                              "duration": {"vocabulary": ["quarter", "half."]}})
        assert [s.text for s, _ in config.duration.vocabulary] == ["quarter", "half."]

    def test_synth_section(self):
        config = load_config({
            "synth": {"pattern": {"repetitions": 3},
                      "model": {"jitter_std_beats": 0.02, "seed": 7}}})
        assert config.synth_pattern.repetitions == 3
        assert config.synth_model.jitter_std_beats == 0.02

    def test_synth_unknown_model_field(self):
        with pytest.raises(ConfigError):
            load_config({"synth": {"model": {"swagger": 11}}})

    def test_guitar_instrument(self):
        config = load_config({"instrument": {"kind": "guitar",
                                             "string_channels": {"0": 6}}})
        assert config.instrument.string_channels == {0: 6}


def perfect_stream(repetitions=2):
    return generate(PatternSpec.every_slot(GRID, repetitions=repetitions))


class TestSections:
    def test_timing_section_perfect(self):
        config = make_config("timing")
        section = analyze_stream(config, perfect_stream())
        assert section["score_percent"] == 100.0
        assert len(section["rows"]) == 16
        assert sum(section["histogram"]["counts"]) == 16
        assert section["row_means"][0]["mean_deviation_beats"] == pytest.approx(0)

    def test_timing_section_empty_stream(self):
        from tactus.midi import PerformanceStream
        config = make_config("timing")
        section = analyze_stream(config, PerformanceStream())
        assert section["rows"] == []
        assert section["score_percent"] == 0.0

    def test_timing_voices_split(self):
        config = make_config("timing")
        pattern = PatternSpec.drums(
            GRID, slots=(0, 2, 4, 6),
            voices=(DrumVoice.KICK, DrumVoice.SNARE) * 2, repetitions=2)
        section = analyze_stream(config, generate(pattern))
        assert {v["voice"] for v in section["voices"]} == {"drum:kick", "drum:snare"}

    def test_duration_section(self):
        config = make_config("duration")
        pattern = PatternSpec.melody(GRID, (0,), (60,), repetitions=1,
                                     hold_beats=3.4)
        section = analyze_stream(config, generate(pattern))
        (verdict,) = section["verdicts"]
        assert verdict["verdict"] == "too_long"
        assert verdict["nearest"] == "half."

    def test_duration_skips_open_notes(self):
        from tactus.midi import NoteEvent, PerformanceStream
        config = make_config("duration")
        stream = PerformanceStream([NoteEvent(0.0, None, 60, 80, 0)])
        assert analyze_stream(config, stream)["verdicts"] == []

    def test_rhythm_section(self):
        config = make_config("accents", accents={"pattern": {"period": 3}})
        pattern = PatternSpec.every_slot(
            GridConfig(bpm=120, subdivision=3, cycle_beats=4), repetitions=2)
        model = ErrorModel(accent_period=3, accent_velocity=110, base_velocity=60)
        section = analyze_stream(config, generate(pattern, model))
        assert section["mismatches"] == []
        assert all(n["symbol"] == "eighth3" for n in section["notes"])

    def test_harmony_section(self):
        config = make_config("chord-progression")
        pattern = PatternSpec.melody(
            config.grid, (0, 2, 4, 6), (60, 64, 67, 72), repetitions=1)
        section = analyze_stream(config, generate(pattern))
        assert section["chords"] == ["C", "Am", "F", "G"]
        assert all(c["fit"] == "chord" for c in section["waffle"])

    def test_fretboard_section(self):
        config = make_config("fretboard")
        pattern = PatternSpec.guitar(
            config.grid, slots=(0, 2, 4, 6),
            positions=((6, 5), (5, 7), (4, 5), (3, 7)), repetitions=2)
        section = analyze_stream(
            config, generate(pattern, profile=config.instrument))
        assert len(section["facets"]) == 2
        assert section["facets"][0]["note_count"] == 4


class TestReport:
    def test_round_trip(self):
        config = make_config("timing")
        report = build_report(config, perfect_stream())
        assert Report.from_json(report.to_json()) == report

    @pytest.mark.parametrize("kind", ["duration", "timing", "accents",
                                      "chord-progression", "fretboard"])
    def test_validates_against_schema(self, kind):
        config = make_config(kind)
        if kind == "fretboard":
            pattern = PatternSpec.guitar(config.grid, (0, 2), ((6, 3), (5, 5)),
                                         repetitions=2)
        else:
            pattern = PatternSpec.every_slot(config.grid, repetitions=2)
        stream = generate(pattern, profile=config.instrument)
        report = build_report(config, stream)
        jsonschema.validate(report.to_dict(), REPORT_SCHEMA)

    def test_unknown_section_rejected(self):
        with pytest.raises(Exception):
            Report(drill={}, sections={"sonification": {}})


class TestFrames:
    def test_encode_decode_round_trip(self):
        frame = AnalysisFrame(
            seq=3, wall_time=123.5, kind="timing", frame_type="pause",
            summary={"score_percent": 88.0}, reason="silence")
        assert AnalysisFrame.decode(frame.encode()) == frame

    def test_event_dict_round_trip(self):
        for event in perfect_stream(1).events:
            assert event_from_dict(event_to_dict(event)) == event

    def test_rejects_bad_type(self):
        with pytest.raises(Exception):
            AnalysisFrame(seq=0, wall_time=0, kind="timing", frame_type="blob")


class TestExports(object):
    def test_csv_and_figures(self, tmp_path):
        config = make_config("timing")
        report = build_report(config, perfect_stream())
        csvs = export_csv(report, tmp_path)
        figures = render_report(report, tmp_path)
        assert (tmp_path / "timing_rows.csv").exists()
        assert (tmp_path / "timing.png").exists()
        header = (tmp_path / "timing_rows.csv").read_text().splitlines()[0]
        assert header == "repetition,slot,beat_in_cycle,deviation_beats,velocity,voice"
        assert len((tmp_path / "timing_rows.csv").read_text().splitlines()) == 17
        assert all(p.exists() for p in csvs + figures)

    @pytest.mark.parametrize("kind", ["duration", "accents",
                                      "chord-progression", "fretboard"])
    def test_every_kind_renders(self, kind, tmp_path):
        config = make_config(kind)
        if kind == "fretboard":
            pattern = PatternSpec.guitar(config.grid, (0, 2), ((6, 3), (5, 5)),
                                         repetitions=1)
        else:
            pattern = PatternSpec.every_slot(config.grid, repetitions=1)
        report = build_report(config, generate(pattern, profile=config.instrument))
        paths = render_report(report, tmp_path)
        assert all(p.exists() and p.stat().st_size > 0 for p in paths)
        export_csv(report, tmp_path)


class TestCli:
    def _synth_config(self, tmp_path, extra=None):
        doc = {
            "kind": "timing",
            "grid": {"bpm": 120, "subdivision": 2, "cycle_beats": 4},
            "synth": {"pattern": {"repetitions": 4},
                      "model": {"jitter_std_beats": 0.0, "seed": 9}},
        }
        doc.update(extra or {})
        path = tmp_path / "drill.json"
        path.write_text(json.dumps(doc))
        return path

    def test_synth_then_analyze(self, tmp_path, capsys):
        config_path = self._synth_config(tmp_path)
        smf_path = tmp_path / "take.mid"
        assert cli_main(["synth", "--config", str(config_path),
                         "-o", str(smf_path)]) == 0
        capsys.readouterr()
        report_path = tmp_path / "report.json"
        code = cli_main([
            "analyze", str(smf_path), "--config", str(config_path),
            "-o", str(report_path), "--export", str(tmp_path / "export"),
        ])
        assert code == 0
        report = Report.from_json(report_path.read_text())
        assert report.sections["timing"]["score_percent"] == 100.0
        assert (tmp_path / "export" / "timing.png").exists()
        assert (tmp_path / "export" / "timing_rows.csv").exists()

    def test_invalid_bpm_exits_nonzero_with_error_record(self, tmp_path, capsys):
        config_path = self._synth_config(tmp_path, {"grid": {"bpm": 0}})
        code = cli_main(["analyze", str(tmp_path / "missing.mid"),
                         "--config", str(config_path)])
        assert code == 1
        record = json.loads(capsys.readouterr().err)
        assert record["error"]["field"] == "grid.bpm"

    def test_flag_overrides(self, tmp_path, capsys):
        config_path = self._synth_config(tmp_path)
        smf_path = tmp_path / "take.mid"
        cli_main(["synth", "--config", str(config_path), "-o", str(smf_path)])
        capsys.readouterr()
        code = cli_main(["analyze", str(smf_path), "--config", str(config_path),
                         "--tolerance", "0.2"])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["timing"]["tolerance_beats"] == 0.2

    def test_schema_prints_json(self, capsys):
        assert cli_main(["schema"]) == 0
        schema = json.loads(capsys.readouterr().out)
        assert schema["properties"]["schema_version"]["const"] == "1"
