/** Frame and report-section payloads, mirroring the engine's schema v1. */

export const SUPPORTED_SCHEMA_VERSION = "1";

export type DrillKind =
  | "duration"
  | "timing"
  | "accents"
  | "chord-progression"
  | "fretboard";

export type FrameType = "frame" | "pause" | "warning" | "final";

export interface NoteEventDelta {
  onset: number;
  release: number | null;
  pitch: number;
  velocity: number;
  channel: number;
  voice: string;
}

export interface DurationVerdict {
  held_beats: number;
  nearest: string;
  nearest_beats: number;
  deviation_fraction: number;
  verdict: "good" | "too_short" | "too_long";
  pie_layers: number[];
}

export interface DurationSection {
  threshold: number;
  verdicts: DurationVerdict[];
}

export interface TimingRow {
  repetition: number;
  slot: number;
  beat_in_cycle: number;
  deviation_beats: number;
  velocity: number;
  voice: string;
}

export interface TimingSection {
  score_percent: number;
  tolerance_beats: number;
  rows: TimingRow[];
  row_means: { repetition: number; mean_deviation_beats: number }[];
  histogram: { edges: number[]; counts: number[] };
  density: { x: number[]; y: number[] };
  voices: { voice: string; score_percent: number; rows: TimingRow[] }[];
}

export interface RhythmNote {
  symbol: string;
  ioi_beats: number;
  error_beats: number;
  velocity: number;
  accent: boolean;
}

export interface RhythmSection {
  notes: RhythmNote[];
  vocabulary: { symbol: string; beats: number }[];
  ranges: { symbol: string; lo_beats: number; hi_beats: number | null }[];
  mismatches: number[];
}

export type NoteFit = "chord" | "scale" | "outside";

export interface WaffleCell {
  repetition: number;
  bar: number;
  pitch_class: number;
  fit: NoteFit;
  count: number;
}

export interface HarmonyNote {
  repetition: number;
  bar: number;
  pitch_class: number;
  fit: NoteFit;
  onset_beats: number;
  duration_class: string | null;
}

export interface HarmonySection {
  chords: string[];
  waffle: WaffleCell[];
  notes: HarmonyNote[];
}

export interface FretNote {
  string: number;
  fret: number;
  onset_beats: number;
  velocity: number;
  order: number;
  jitter: [number, number];
}

export interface FretFacet {
  bar_index: number;
  note_count: number;
  movement: "horizontal" | "vertical" | "mixed" | "stationary";
  fret_min: number | null;
  fret_max: number | null;
  fret_centroid: number | null;
  string_min: number | null;
  string_max: number | null;
  string_centroid: number | null;
  open_string_count: number;
  notes: FretNote[];
}

export interface FretboardSection {
  facets: FretFacet[];
  octave_shifts: { from_facet: number; to_facet: number; offset: number }[];
}

export type Summary =
  | DurationSection
  | TimingSection
  | RhythmSection
  | HarmonySection
  | FretboardSection;

export interface AnalysisFrame {
  seq: number;
  wall_time: number;
  kind: DrillKind;
  type: FrameType;
  schema_version: string;
  summary?: Summary;
  events_delta: NoteEventDelta[];
  reason?: string;
}

export function parseFrame(line: string): AnalysisFrame {
  const doc = JSON.parse(line) as AnalysisFrame;
  for (const key of ["seq", "wall_time", "kind", "type", "schema_version"]) {
    if (!(key in doc)) {
      throw new Error(`frame missing ${key}`);
    }
  }
  return doc;
}
