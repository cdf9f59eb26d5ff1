import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import type { AnalysisFrame, DrillKind, Summary } from "../src/types.js";

const here = dirname(fileURLToPath(import.meta.url));

export function loadKindFixtures(): Record<string, AnalysisFrame> {
  return JSON.parse(
    readFileSync(join(here, "fixtures", "kinds.json"), "utf-8"),
  );
}

export function loadReplayLog(): AnalysisFrame[] {
  return readFileSync(join(here, "fixtures", "replay.ndjson"), "utf-8")
    .trim()
    .split("\n")
    .map((line) => JSON.parse(line));
}

export function makeFrame(
  kind: DrillKind,
  summary: Summary,
  overrides: Partial<AnalysisFrame> = {},
): AnalysisFrame {
  return {
    seq: 0,
    wall_time: 1700000000,
    kind,
    type: "frame",
    schema_version: "1",
    summary,
    events_delta: [],
    ...overrides,
  };
}
