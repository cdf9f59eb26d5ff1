/** Deterministic scene graph: what a renderer emits and a canvas draws.
 *
 * Renderers are pure functions (frame, view) -> Scene, so replaying a frame
 * log reproduces identical scenes node for node.  Angles are radians in
 * canvas orientation (y down, clockwise positive); 12 o'clock is -PI/2.
 */

export interface ArcNode {
  type: "arc";
  cx: number;
  cy: number;
  r: number;
  start: number;
  end: number;
  fill: string;
  alpha?: number;
}

export interface CircleNode {
  type: "circle";
  cx: number;
  cy: number;
  r: number;
  fill?: string;
  stroke?: string;
  width?: number;
  alpha?: number;
}

export interface RectNode {
  type: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  fill?: string;
  stroke?: string;
  width?: number;
  alpha?: number;
}

export interface LineNode {
  type: "line";
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  stroke: string;
  width: number;
  alpha?: number;
}

export interface PolylineNode {
  type: "polyline";
  points: [number, number][];
  stroke?: string;
  fill?: string;
  width?: number;
  alpha?: number;
}

export interface TextNode {
  type: "text";
  x: number;
  y: number;
  text: string;
  fill: string;
  size: number;
  align?: "left" | "center" | "right";
}

export type SceneNode =
  | ArcNode
  | CircleNode
  | RectNode
  | LineNode
  | PolylineNode
  | TextNode;

export interface Scene {
  width: number;
  height: number;
  background: string;
  nodes: SceneNode[];
}

export const TWO_PI = 2 * Math.PI;
export const TOP_ANGLE = -Math.PI / 2;

export function scene(width: number, height: number, background = "#ffffff"): Scene {
  return { width, height, background, nodes: [] };
}

/** Sweep fraction of a full revolution covered by an arc node. */
export function arcFraction(node: ArcNode): number {
  return (node.end - node.start) / TWO_PI;
}

/** Arc length in pixels, the unit the pie acceptance criterion is stated in. */
export function arcLengthPx(node: ArcNode): number {
  return (node.end - node.start) * node.r;
}

export function sceneKey(s: Scene): string {
  return JSON.stringify(s);
}
