/** Color themes.  Chord/scale/outside stay green/orange/gray in every theme;
 * the default palette uses colorblind-safe (Okabe-Ito) hues for them. */

import type { NoteFit } from "./types.js";

export interface Theme {
  name: string;
  background: string;
  ink: string;
  faint: string;
  tolerance: string;
  fill: string;
  overflow: string;
  accent: string;
  warn: string;
  openString: string;
  fit: Record<NoteFit, string>;
  durationClass: Record<string, string>;
}

export const COLORBLIND_SAFE: Theme = {
  name: "colorblind-safe",
  background: "#ffffff",
  ink: "#1a1a1a",
  faint: "#d9d9d9",
  tolerance: "#e3e3e3",
  fill: "#0072b2",
  overflow: "#023858",
  accent: "#023858",
  warn: "#d55e00",
  openString: "#d55e00",
  fit: { chord: "#009e73", scale: "#e69f00", outside: "#999999" },
  durationClass: {
    whole: "#d55e00",
    half: "#f0e442",
    quarter: "#0072b2",
    eighth: "#56b4e9",
    sixteenth: "#cc79a7",
  },
};

export const CLASSIC: Theme = {
  ...COLORBLIND_SAFE,
  name: "classic",
  fill: "#4576d6",
  overflow: "#1d3a75",
  accent: "#1d3a75",
  fit: { chord: "#2e9e4b", scale: "#f28c28", outside: "#9e9e9e" },
};

export const THEMES: Record<string, Theme> = {
  "colorblind-safe": COLORBLIND_SAFE,
  classic: CLASSIC,
};

const VIRIDIS_STOPS: [number, number, number][] = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

/** Temporal-order gradient: t in [0, 1] -> css color (viridis-like). */
export function temporalColor(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const scaled = clamped * (VIRIDIS_STOPS.length - 1);
  const i = Math.min(VIRIDIS_STOPS.length - 2, Math.floor(scaled));
  const frac = scaled - i;
  const [r1, g1, b1] = VIRIDIS_STOPS[i];
  const [r2, g2, b2] = VIRIDIS_STOPS[i + 1];
  const mix = (a: number, b: number) => Math.round(a + (b - a) * frac);
  return `rgb(${mix(r1, r2)},${mix(g1, g2)},${mix(b1, b2)})`;
}
