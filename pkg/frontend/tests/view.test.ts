import { describe, expect, it } from "vitest";

import { tilingSchema } from "../src/protocol.js";
import {
  CLAMP_RADIUS,
  clampToDisk,
  diskView,
  edgeLinePath,
  fmt,
  fromScreen,
  toScreen,
} from "../src/view.js";
import type { Vec2 } from "../src/view.js";
import { fixture } from "./fixtures.js";

describe("clampToDisk", () => {
  it("keeps interior points", () => {
    expect(clampToDisk([0.3, -0.4])).toEqual([0.3, -0.4]);
    expect(clampToDisk([0, 0])).toEqual([0, 0]);
  });

  it("pulls outside points onto the clamp circle", () => {
    const p = clampToDisk([3, 4]);
    expect(Math.hypot(p[0], p[1])).toBeCloseTo(CLAMP_RADIUS, 12);
    expect(p[1] / p[0]).toBeCloseTo(4 / 3, 12);
  });
});

describe("disk transform", () => {
  const view = diskView(560);

  it("round trips", () => {
    for (const p of [[0.1, 0.2], [-0.7, 0.3], [0, -0.9]] as Vec2[]) {
      const back = fromScreen(view, toScreen(view, p));
      expect(back[0]).toBeCloseTo(p[0], 12);
      expect(back[1]).toBeCloseTo(p[1], 12);
    }
  });

  it("flips the y axis so positive imaginary renders upward", () => {
    const top = toScreen(view, [0, 0.5]);
    const bottom = toScreen(view, [0, -0.5]);
    expect(top[1]).toBeLessThan(bottom[1]);
  });
});

describe("fmt", () => {
  it("uses six decimals and no negative zero", () => {
    expect(fmt(1)).toBe("1.000000");
    expect(fmt(-0)).toBe("0.000000");
    expect(fmt(0.12345649)).toBe("0.123456");
  });
});

/** Evaluate the midpoint of the SVG arc `A r r 0 0 sweep` from a to b. */
function arcMidpoint(a: Vec2, b: Vec2, center: Vec2, sweep: number): Vec2 {
  const start = Math.atan2(a[1] - center[1], a[0] - center[0]);
  const end = Math.atan2(b[1] - center[1], b[0] - center[0]);
  const radius = Math.hypot(a[0] - center[0], a[1] - center[1]);
  let delta = sweep === 1 ? end - start : start - end;
  while (delta < 0) {
    delta += 2 * Math.PI;
  }
  const mid = sweep === 1 ? start + delta / 2 : start - delta / 2;
  return [center[0] + radius * Math.cos(mid), center[1] + radius * Math.sin(mid)];
}

describe("edgeLinePath", () => {
  const view = diskView(560);
  const tiling = tilingSchema.parse(fixture("tiling_small"));

  it("renders geodesics as circular arcs through the disk interior", () => {
    for (const edge of tiling.edges.slice(0, 12)) {
      const path = edgeLinePath(edge.line, edge.endpoints, view);
      if (edge.line.kind !== "arc") {
        continue;
      }
      const match = path.match(/^M (\S+) (\S+) A (\S+) \S+ 0 0 ([01]) (\S+) (\S+)$/);
      expect(match, path).not.toBeNull();
      const [, ax, ay, r, sweep, bx, by] = match!;
      expect(Number(r)).toBeCloseTo(view.scale * edge.line.radius, 4);
      const mid = arcMidpoint(
        [Number(ax), Number(ay)],
        [Number(bx), Number(by)],
        toScreen(view, edge.line.center),
        Number(sweep),
      );
      const inDisk = fromScreen(view, mid);
      // the wrong sweep bulges outside the unit circle
      expect(Math.hypot(inDisk[0], inDisk[1])).toBeLessThan(1);
      const distToCenter = Math.hypot(
        inDisk[0] - edge.line.center[0],
        inDisk[1] - edge.line.center[1],
      );
      expect(distToCenter).toBeCloseTo(edge.line.radius, 6);
    }
  });

  it("renders diameters as straight segments", () => {
    const path = edgeLinePath(
      { kind: "diameter", direction: [0, 1] },
      [
        [0, -0.5],
        [0, 0.5],
      ],
      view,
    );
    expect(path).toContain(" L ");
    expect(path).not.toContain(" A ");
  });

  it("starts and ends at the transformed endpoints", () => {
    const edge = tiling.edges[0];
    const path = edgeLinePath(edge.line, edge.endpoints, view);
    const [sx, sy] = toScreen(view, edge.endpoints[0]);
    const [ex, ey] = toScreen(view, edge.endpoints[1]);
    expect(path.startsWith(`M ${fmt(sx)} ${fmt(sy)}`)).toBe(true);
    expect(path.endsWith(`${fmt(ex)} ${fmt(ey)}`)).toBe(true);
  });
});
