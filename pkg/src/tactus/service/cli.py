"""Command-line interface: analyze recordings, serve live sessions, synthesize
practice fixtures, and print the report schema.

Configuration comes from a JSON document (--config) and/or flags mirroring
its fields; flags win.  Failures exit nonzero with a machine-readable error
record on stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from ..errors import TactusError
from ..midi.smf import write_smf
from ..synthgen import generate
from .analyze import analyze_file
from .config import DRILL_KINDS, ConfigError, load_config
from .export import export_csv
from .figures import render_report
from .report import REPORT_SCHEMA
from .server import serve


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="drill configuration JSON file")
    parser.add_argument("--kind", choices=DRILL_KINDS, help="drill kind")
    grid = parser.add_argument_group("grid")
    grid.add_argument("--bpm", type=float)
    grid.add_argument("--beats-per-bar", type=int)
    grid.add_argument("--subdivision", type=int)
    grid.add_argument("--cycle-beats", type=float)
    grid.add_argument("--tolerance", type=float, dest="tolerance_beats",
                      help="acceptance half-width in beats")
    parser.add_argument("--threshold", type=float,
                        help="duration verdict threshold (fraction)")
    parser.add_argument("--progression",
                        help="chord progression text, e.g. 'C Am F G'")
    parser.add_argument("--key", help="progression key, e.g. C")
    parser.add_argument("--mode", help="progression mode: major or minor")
    parser.add_argument("--instrument", choices=("keyboard", "drums", "guitar"))
    parser.add_argument("--tuning", help="six open-string pitches, e.g. 64,59,55,50,45,40")
    parser.add_argument("--bars-per-facet", type=int)


def _config_from_args(args: argparse.Namespace) -> dict:
    doc: dict = {}
    if args.config is not None:
        try:
            doc = json.loads(args.config.read_text())
        except (OSError, json.JSONDecodeError) as err:
            raise ConfigError("config", f"cannot read {args.config}: {err}") from None
    if args.kind:
        doc["kind"] = args.kind
    grid = doc.setdefault("grid", {})
    for field in ("bpm", "beats_per_bar", "subdivision", "cycle_beats",
                  "tolerance_beats"):
        value = getattr(args, field)
        if value is not None:
            grid[field] = value
    if args.threshold is not None:
        doc.setdefault("duration", {})["threshold"] = args.threshold
    if args.progression is not None:
        harmony = doc.setdefault("harmony", {})
        harmony["chords"] = args.progression
    if args.key is not None:
        doc.setdefault("harmony", {})["key"] = args.key
    if args.mode is not None:
        doc.setdefault("harmony", {})["mode"] = args.mode
    if args.instrument is not None:
        doc.setdefault("instrument", {})["kind"] = args.instrument
    if args.tuning is not None:
        try:
            pitches = [int(p) for p in args.tuning.split(",")]
        except ValueError:
            raise ConfigError("fretboard.tuning",
                              f"cannot parse {args.tuning!r}") from None
        doc.setdefault("fretboard", {})["tuning"] = pitches
    if args.bars_per_facet is not None:
        doc.setdefault("fretboard", {})["bars_per_facet"] = args.bars_per_facet
    return doc


def _fail(error: Exception) -> int:
    record = {"error": {
        "type": type(error).__name__,
        "message": str(error),
    }}
    if isinstance(error, ConfigError):
        record["error"]["field"] = error.field
    print(json.dumps(record), file=sys.stderr)
    return 1


def cmd_analyze(args: argparse.Namespace) -> int:
    config = load_config(_config_from_args(args))
    report = analyze_file(config, args.input)
    text = report.to_json()
    if args.out is None:
        print(text)
    else:
        args.out.write_text(text + "\n")
    if args.export is not None:
        written = export_csv(report, args.export)
        written += render_report(report, args.export)
        for path in written:
            print(str(path), file=sys.stderr)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    config = load_config(_config_from_args(args))
    server = serve(config, port=args.port)
    print(json.dumps({"listening": {"host": server.host, "port": server.port,
                                    "kind": config.kind}}))
    sys.stdout.flush()
    try:
        while True:
            time.sleep(0.5)
    except KeyboardInterrupt:
        return 0
    finally:
        server.close()


def cmd_synth(args: argparse.Namespace) -> int:
    config = load_config(_config_from_args(args))
    pattern, model = config.synth_pattern, config.synth_model
    if pattern is None:
        raise ConfigError("synth", "configuration has no synth section")
    stream = generate(pattern, model, profile=config.instrument)
    args.out.write_bytes(write_smf(stream, bpm=config.grid.bpm))
    print(json.dumps({"written": str(args.out), "events": len(stream)}))
    return 0


def cmd_schema(_args: argparse.Namespace) -> int:
    print(json.dumps(REPORT_SCHEMA, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tactus",
        description="Practice analytics for MIDI instruments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze a recorded SMF file")
    analyze.add_argument("input", type=Path, help="Standard MIDI File to analyze")
    analyze.add_argument("-o", "--out", type=Path,
                         help="report path (default: stdout)")
    analyze.add_argument("--export", type=Path,
                         help="directory for CSV chart data and PNG figures")
    _add_config_flags(analyze)
    analyze.set_defaults(func=cmd_analyze)

    serve_cmd = sub.add_parser("serve", help="run a live practice session")
    serve_cmd.add_argument("--port", type=int, default=9600)
    _add_config_flags(serve_cmd)
    serve_cmd.set_defaults(func=cmd_serve)

    synth = sub.add_parser("synth", help="write a synthetic practice recording")
    synth.add_argument("-o", "--out", type=Path, required=True,
                       help="output SMF path")
    _add_config_flags(synth)
    synth.set_defaults(func=cmd_synth)

    schema = sub.add_parser("schema", help="print the report JSON schema")
    schema.set_defaults(func=cmd_schema)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TactusError as err:
        return _fail(err)
    except FileNotFoundError as err:
        return _fail(err)


if __name__ == "__main__":
    sys.exit(main())
