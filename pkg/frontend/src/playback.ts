/** Built-in control-point paths, mirroring the CLI presets. */

import type { Vec2 } from "./view.js";

export const PRESETS = ["edge-crossing", "vertex-loop", "zero-momentum-turn"] as const;
export type PresetName = (typeof PRESETS)[number];

// distances of the base pentagon's side midpoints and vertices from the origin
const MIDPOINT_RADIUS = 0.30355865872664684;
const VERTEX_RADIUS = 0.39797542678479064;
const FIFTH_TURN = (2 * Math.PI) / 5;

export function presetPoint(name: PresetName, t: number): Vec2 {
  switch (name) {
    case "edge-crossing": {
      // radial segment through the bottom side midpoint
      const r = MIDPOINT_RADIUS + (t - 0.5) * 0.24;
      return [0, -r];
    }
    case "vertex-loop": {
      const a = 2 * Math.PI * t;
      return [0.08 * Math.cos(a), VERTEX_RADIUS + 0.08 * Math.sin(a)];
    }
    case "zero-momentum-turn": {
      // 144-degree arc; the end frame is the start pentagon turned by -72
      const a = -Math.PI / 2 + 2 * FIFTH_TURN * t;
      return [0.3 * Math.cos(a), 0.3 * Math.sin(a)];
    }
  }
}

export function presetPath(name: PresetName, frameCount: number): Vec2[] {
  if (frameCount < 1) {
    throw new Error("frame count must be at least 1");
  }
  if (frameCount === 1) {
    return [presetPoint(name, 0.5)];
  }
  const points: Vec2[] = [];
  for (let i = 0; i < frameCount; i += 1) {
    points.push(presetPoint(name, i / (frameCount - 1)));
  }
  return points;
}
