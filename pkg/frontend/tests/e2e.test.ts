/** End-to-end: boots the real evaluation service and drives the loop the way
 *  pointer input does.  Needs the Python package installed (python3 -m
 *  pentamap.cli).  The first boot may solve the field before listening. */

import { spawn } from "node:child_process";
import type { ChildProcess } from "node:child_process";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { EvalLoop, fetchHealth, fetchTiling } from "../src/loop.js";
import type { FrameEvent } from "../src/loop.js";
import { typeDegeneracy } from "../src/protocol.js";
import type { EvalResponse } from "../src/protocol.js";
import { presetPath } from "../src/playback.js";
import type { Vec2 } from "../src/view.js";

const PORT = 8973;
const BASE = `http://127.0.0.1:${PORT}`;

let service: ChildProcess;
let stderrTail = "";

async function waitForHealth(timeoutMs: number): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  for (;;) {
    try {
      await fetchHealth(BASE);
      return;
    } catch {
      if (Date.now() > deadline) {
        throw new Error(`service did not come up: ${stderrTail}`);
      }
      await new Promise((r) => setTimeout(r, 250));
    }
  }
}

beforeAll(async () => {
  service = spawn(
    "python3",
    ["-m", "pentamap.cli", "serve", "--bind", `127.0.0.1:${PORT}`],
    {
      env: {
        ...process.env,
        PENTAMAP_CACHE: join(tmpdir(), "pentamap-e2e-field.bin"),
      },
      stdio: ["ignore", "ignore", "pipe"],
    },
  );
  service.stderr?.on("data", (chunk: Buffer) => {
    stderrTail = (stderrTail + chunk.toString()).slice(-2000);
  });
  await waitForHealth(90_000);
});

afterAll(async () => {
  service.kill("SIGTERM");
  await new Promise<void>((resolve) => {
    const force = setTimeout(() => {
      service.kill("SIGKILL");
      resolve();
    }, 5000);
    service.once("exit", () => {
      clearTimeout(force);
      resolve();
    });
  });
});

/** Drive the loop like a pointer: submit, then wait for the shown frame. */
function makeDriver() {
  const frames: FrameEvent[] = [];
  const waiters: Array<(ev: FrameEvent) => void> = [];
  const loop = new EvalLoop({
    baseUrl: BASE,
    onFrame: (ev) => {
      frames.push(ev);
      waiters.shift()?.(ev);
    },
  });
  const submitAndWait = (p: Vec2): Promise<FrameEvent> =>
    new Promise((resolve) => {
      waiters.push(resolve);
      loop.submit(p);
    });
  return { loop, frames, submitAndWait };
}

/** Bead labels in circular order, starting from label 0. */
function circularOrder(frame: EvalResponse): number[] {
  const order = frame.vectors
    .map((v, k) => ({ k, angle: Math.atan2(v[1], v[0]) }))
    .sort((a, b) => a.angle - b.angle)
    .map((e) => e.k);
  const start = order.indexOf(0);
  return [...order.slice(start), ...order.slice(0, start)];
}

describe("against the live service", () => {
  it("shows the regular pentagon for the center frame", async () => {
    const { loop, submitAndWait } = makeDriver();
    const event = await submitAndWait([0, 0]);
    expect(event.frame.type).toBe(0);
    const angles = event.frame.vectors
      .map((v) => Math.atan2(v[1], v[0]))
      .sort((a, b) => a - b);
    for (let i = 1; i < 5; i += 1) {
      expect(angles[i] - angles[i - 1]).toBeCloseTo((2 * Math.PI) / 5, 9);
    }
    for (const v of event.frame.vectors) {
      expect(Math.hypot(v[0], v[1])).toBeCloseTo(1, 9);
    }
    loop.stop();
  });

  it("swaps exactly one juzu color pair across a pentagon edge", async () => {
    const { loop, frames, submitAndWait } = makeDriver();
    for (const p of presetPath("edge-crossing", 61)) {
      await submitAndWait(p);
    }
    expect(frames).toHaveLength(61);

    const degenerate = frames.filter((f) => typeDegeneracy(f.frame.type) >= 1);
    expect(degenerate.length).toBeGreaterThanOrEqual(1);
    expect(frames[30].frame.type).toBe(25); // the exact midpoint frame

    const generic = frames.filter((f) => typeDegeneracy(f.frame.type) === 0);
    const orders = new Set(generic.map((f) => circularOrder(f.frame).join("")));
    expect(orders.size).toBe(2); // exactly one swap along the whole trace

    const first = circularOrder(frames[0].frame);
    const last = circularOrder(frames[60].frame);
    const moved = first.filter((label, i) => label !== last[i]);
    expect(moved.sort()).toEqual([2, 3]); // red and yellow trade places
    const swappedBack = [...last];
    const i2 = swappedBack.indexOf(2);
    const i3 = swappedBack.indexOf(3);
    [swappedBack[i2], swappedBack[i3]] = [swappedBack[i3], swappedBack[i2]];
    expect(swappedBack).toEqual(first);
    loop.stop();
  });

  it("keeps p50 displayed-frame latency at or under 50 ms", async () => {
    const { loop, submitAndWait } = makeDriver();
    await submitAndWait([0.05, 0.05]); // warm up
    for (const p of presetPath("vertex-loop", 100)) {
      await submitAndWait(p);
    }
    const p50 = loop.p50LatencyMs();
    expect(p50).not.toBeNull();
    expect(p50!).toBeLessThanOrEqual(50);
    loop.stop();
  });

  it("displays a rapid uncoordinated drag in submission order", async () => {
    const { loop, frames } = makeDriver();
    const points: Vec2[] = [];
    for (let i = 0; i < 200; i += 1) {
      points.push([-0.4 + 0.004 * i, 0.15]);
    }
    for (const p of points) {
      loop.submit(p);
      if (p[0] < -0.2) {
        await new Promise((r) => setTimeout(r, 1));
      }
    }
    const deadline = Date.now() + 10_000;
    while (Date.now() < deadline) {
      const latest = frames[frames.length - 1];
      if (latest !== undefined && latest.point[0] === points[199][0]) {
        break;
      }
      await new Promise((r) => setTimeout(r, 20));
    }
    const xs = frames.map((f) => f.point[0]);
    expect(xs[xs.length - 1]).toBeCloseTo(points[199][0], 12);
    const sorted = [...xs].sort((a, b) => a - b);
    expect(xs).toEqual(sorted);
    loop.stop();
  });

  it("serves the fixed-radius backdrop tiling", async () => {
    const tiling = await fetchTiling(BASE);
    expect(tiling.faceCount).toBeGreaterThanOrEqual(81);
    expect(tiling.edges.length).toBe(tiling.edgeCount);
  });
});
