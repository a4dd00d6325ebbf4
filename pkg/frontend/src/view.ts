/** View state and the disk-to-screen transform.  Everything here is affine
 *  drawing arithmetic; linkage geometry arrives fully computed from the
 *  service. */

import type { EdgeLine } from "./protocol.js";
import type { PresetName } from "./playback.js";

export type Vec2 = [number, number];

// label order blue, purple, red, yellow, green; shared by edges and beads
export const EDGE_COLORS = [
  "#3333FF",
  "#B30066",
  "#CC0000",
  "#CC9900",
  "#009900",
] as const;

export interface Playback {
  preset: PresetName;
  frame: number;
  frameCount: number;
}

export interface ViewState {
  controlPoint: Vec2;
  showJuzu: boolean;
  showTiling: boolean;
  showTrace: boolean;
  playback: Playback | null;
}

export function initialViewState(): ViewState {
  return {
    controlPoint: [0, 0],
    showJuzu: true,
    showTiling: true,
    showTrace: false,
    playback: null,
  };
}

export const CLAMP_RADIUS = 0.9995;

/** Pull a dragged point back inside the unit disk. */
export function clampToDisk(p: Vec2, limit: number = CLAMP_RADIUS): Vec2 {
  const r = Math.hypot(p[0], p[1]);
  if (r <= limit) {
    return [p[0], p[1]];
  }
  const s = limit / r;
  return [p[0] * s, p[1] * s];
}

export interface DiskView {
  size: number;
  scale: number;
  cx: number;
  cy: number;
}

export function diskView(size: number): DiskView {
  return { size, scale: size / 2.1, cx: size / 2, cy: size / 2 };
}

export function toScreen(view: DiskView, p: Vec2): Vec2 {
  return [view.cx + view.scale * p[0], view.cy - view.scale * p[1]];
}

export function fromScreen(view: DiskView, s: Vec2): Vec2 {
  return [(s[0] - view.cx) / view.scale, (view.cy - s[1]) / view.scale];
}

/** Six fixed decimals, negative zero flattened, for stable SVG output. */
export function fmt(x: number): string {
  const v = x + 0;
  return (Object.is(v, -0) ? 0 : v).toFixed(6);
}

/** SVG path for one tiling edge; geodesics render as circular arcs. */
export function edgeLinePath(line: EdgeLine, endpoints: [Vec2, Vec2], view: DiskView): string {
  const [ax, ay] = toScreen(view, endpoints[0]);
  const [bx, by] = toScreen(view, endpoints[1]);
  if (line.kind === "diameter") {
    return `M ${fmt(ax)} ${fmt(ay)} L ${fmt(bx)} ${fmt(by)}`;
  }
  const r = view.scale * line.radius;
  const [cx, cy] = toScreen(view, line.center);
  // minor arc always (the circle crosses the unit circle; the inside part
  // subtends less than pi); the cross product picks the screen sweep side
  const cross = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx);
  const sweep = cross > 0 ? 1 : 0;
  return `M ${fmt(ax)} ${fmt(ay)} A ${fmt(r)} ${fmt(r)} 0 0 ${sweep} ${fmt(bx)} ${fmt(by)}`;
}
