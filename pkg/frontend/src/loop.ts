/** Request plumbing: a coalescing evaluation loop plus one-shot fetchers.
 *
 *  The loop keeps at most one request in flight.  Pointer moves overwrite the
 *  pending target; responses that no longer match the latest target are
 *  dropped, so displayed frames are always in submission order.  Failures
 *  retry with backoff and flip the status to offline after a threshold.
 */

import { evalResponseSchema, healthSchema, tilingSchema } from "./protocol.js";
import type { EvalResponse, Health, TilingPayload } from "./protocol.js";
import { clampToDisk } from "./view.js";
import type { Vec2 } from "./view.js";

export interface FrameEvent {
  point: Vec2;
  frame: EvalResponse;
  latencyMs: number;
}

export interface LoopStatus {
  online: boolean;
  consecutiveFailures: number;
}

export interface EvalLoopOptions {
  baseUrl: string;
  onFrame: (event: FrameEvent) => void;
  onStatus?: (status: LoopStatus) => void;
  wantTrace?: boolean;
  fetchImpl?: typeof fetch;
  now?: () => number;
  retryDelaysMs?: readonly number[];
  failureThreshold?: number;
}

const DEFAULT_RETRY_MS = [100, 300, 900] as const;

interface Target {
  point: Vec2;
  submittedAt: number;
}

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export class EvalLoop {
  private latest: Target | null = null;
  private delivered: Target | null = null;
  private pumping = false;
  private stopped = false;
  private failures = 0;
  private online = true;
  readonly latencies: number[] = [];

  constructor(private readonly opts: EvalLoopOptions) {}

  private get fetchImpl(): typeof fetch {
    return this.opts.fetchImpl ?? globalThis.fetch.bind(globalThis);
  }

  private get now(): () => number {
    return this.opts.now ?? (() => performance.now());
  }

  submit(point: Vec2): void {
    if (this.stopped) {
      return;
    }
    this.latest = { point: clampToDisk(point), submittedAt: this.now() };
    if (!this.pumping) {
      this.pumping = true;
      void this.pump();
    }
  }

  stop(): void {
    this.stopped = true;
  }

  p50LatencyMs(): number | null {
    if (this.latencies.length === 0) {
      return null;
    }
    const sorted = [...this.latencies].sort((a, b) => a - b);
    return sorted[Math.floor(sorted.length / 2)];
  }

  private setOnline(online: boolean): void {
    if (online !== this.online || this.failures > 0) {
      this.online = online;
      this.opts.onStatus?.({ online, consecutiveFailures: this.failures });
    }
  }

  private async pump(): Promise<void> {
    try {
      while (!this.stopped) {
        const target = this.latest;
        if (target === null || target === this.delivered) {
          break;
        }
        let frame: EvalResponse;
        try {
          frame = await this.requestFrame(target.point);
        } catch {
          this.failures += 1;
          const threshold = this.opts.failureThreshold ?? 3;
          if (this.failures >= threshold) {
            this.setOnline(false);
          } else {
            this.opts.onStatus?.({ online: this.online, consecutiveFailures: this.failures });
          }
          const delays = this.opts.retryDelaysMs ?? DEFAULT_RETRY_MS;
          await sleep(delays[Math.min(this.failures, delays.length) - 1]);
          continue;
        }
        this.failures = 0;
        this.setOnline(true);
        if (this.latest === target) {
          this.delivered = target;
          const latencyMs = this.now() - target.submittedAt;
          this.latencies.push(latencyMs);
          this.opts.onFrame({ point: target.point, frame, latencyMs });
        }
        // otherwise the response is stale; loop around for the newer target
      }
    } finally {
      this.pumping = false;
    }
  }

  private async requestFrame(point: Vec2): Promise<EvalResponse> {
    const response = await this.fetchImpl(`${this.opts.baseUrl}/eval`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ point, wantTrace: this.opts.wantTrace ?? false }),
    });
    if (!response.ok) {
      throw new Error(`eval failed: ${response.status}`);
    }
    return evalResponseSchema.parse(await response.json());
  }
}

export async function fetchHealth(
  baseUrl: string,
  fetchImpl: typeof fetch = globalThis.fetch.bind(globalThis),
): Promise<Health> {
  const response = await fetchImpl(`${baseUrl}/health`);
  if (!response.ok) {
    throw new Error(`health failed: ${response.status}`);
  }
  return healthSchema.parse(await response.json());
}

export const BACKDROP_RADIUS = 0.995;

export async function fetchTiling(
  baseUrl: string,
  radius: number = BACKDROP_RADIUS,
  fetchImpl: typeof fetch = globalThis.fetch.bind(globalThis),
): Promise<TilingPayload> {
  const response = await fetchImpl(`${baseUrl}/tiling?radius=${radius}`);
  if (!response.ok) {
    throw new Error(`tiling failed: ${response.status}`);
  }
  return tilingSchema.parse(await response.json());
}
