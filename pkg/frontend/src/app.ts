/** Browser shell: assembles the panels, wires pointer input to the eval
 *  loop, and runs preset playback.  All geometry arrives from the service;
 *  this file only moves strings and pointer events around. */

import { BACKDROP_RADIUS, EvalLoop, fetchHealth, fetchTiling } from "./loop.js";
import type { EvalResponse } from "./protocol.js";
import { PRESETS, presetPath } from "./playback.js";
import type { PresetName } from "./playback.js";
import { bannerHtml, diskScene, juzuPanel, pentagonPanel, tilingBackdrop, traceHtml } from "./scene.js";
import { diskView, fromScreen, initialViewState } from "./view.js";
import type { Vec2, ViewState } from "./view.js";

export interface AppConfig {
  baseUrl: string;
  diskSize: number;
  panelSize: number;
}

export function resolveBaseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("service");
  if (fromQuery !== null) {
    return fromQuery.replace(/\/$/, "");
  }
  const injected = (window as { PENTAMAP_SERVICE?: string }).PENTAMAP_SERVICE;
  return injected ?? "http://127.0.0.1:8765";
}

const PLAYBACK_FRAMES = 48;
const PLAYBACK_TICK_MS = 40;

export async function startApp(root: HTMLElement, config: AppConfig): Promise<void> {
  root.innerHTML = `
    <div id="banner-slot"></div>
    <div class="layout">
      <div id="disk-slot" class="disk"></div>
      <div class="side">
        <div id="pentagon-slot"></div>
        <div id="juzu-slot"></div>
        <div id="trace-slot"></div>
      </div>
    </div>
    <div class="controls">
      <label><input type="checkbox" id="toggle-tiling" checked/> tiling</label>
      <label><input type="checkbox" id="toggle-juzu" checked/> juzu</label>
      <label><input type="checkbox" id="toggle-trace"/> trace</label>
      <span id="preset-buttons"></span>
    </div>
    <div id="status-line" class="status"></div>
  `;
  const slot = (id: string): HTMLElement => root.querySelector<HTMLElement>(`#${id}`)!;
  const state: ViewState = initialViewState();
  let frame: EvalResponse | null = null;
  let backdrop: string | null = null;
  let playbackTimer: number | null = null;

  const view = diskView(config.diskSize);

  function redraw(): void {
    slot("disk-slot").innerHTML = diskScene(
      config.diskSize,
      state.controlPoint,
      frame,
      state.showTiling ? backdrop : null,
    );
    if (frame !== null) {
      slot("pentagon-slot").innerHTML = pentagonPanel(frame, config.panelSize);
      slot("juzu-slot").innerHTML = state.showJuzu ? juzuPanel(frame, config.panelSize) : "";
      slot("trace-slot").innerHTML = state.showTrace ? traceHtml(frame) : "";
    }
  }

  function setBanner(visible: boolean, message: string): void {
    slot("banner-slot").innerHTML = bannerHtml(visible, message);
    slot("disk-slot").style.pointerEvents = visible ? "none" : "auto";
  }

  const loop = new EvalLoop({
    baseUrl: config.baseUrl,
    wantTrace: true,
    onFrame: (event) => {
      frame = event.frame;
      state.controlPoint = event.point;
      redraw();
    },
    onStatus: (status) => {
      setBanner(!status.online, "service unreachable, retrying");
    },
  });

  setBanner(false, "");
  try {
    const health = await fetchHealth(config.baseUrl);
    slot("status-line").textContent =
      `service ${health.version}, modulus ${health.modulus.toFixed(6)}`;
    const tiling = await fetchTiling(config.baseUrl, BACKDROP_RADIUS);
    backdrop = tilingBackdrop(tiling, view);
  } catch {
    setBanner(true, "service unreachable, check that the evaluator is running");
  }

  function stopPlayback(): void {
    if (playbackTimer !== null) {
      window.clearInterval(playbackTimer);
      playbackTimer = null;
      state.playback = null;
    }
  }

  function startPlayback(preset: PresetName): void {
    stopPlayback();
    const points = presetPath(preset, PLAYBACK_FRAMES);
    state.playback = { preset, frame: 0, frameCount: PLAYBACK_FRAMES };
    playbackTimer = window.setInterval(() => {
      const playback = state.playback;
      if (playback === null || playback.frame >= points.length) {
        stopPlayback();
        return;
      }
      loop.submit(points[playback.frame]);
      playback.frame += 1;
    }, PLAYBACK_TICK_MS);
  }

  const buttons = slot("preset-buttons");
  for (const preset of PRESETS) {
    const button = document.createElement("button");
    button.textContent = preset;
    button.addEventListener("click", () => startPlayback(preset));
    buttons.appendChild(button);
  }

  const disk = slot("disk-slot");
  let dragging = false;
  const submitFromEvent = (event: PointerEvent): void => {
    const rect = disk.getBoundingClientRect();
    const p: Vec2 = fromScreen(view, [event.clientX - rect.left, event.clientY - rect.top]);
    loop.submit(p);
  };
  disk.addEventListener("pointerdown", (event) => {
    stopPlayback();
    dragging = true;
    disk.setPointerCapture(event.pointerId);
    submitFromEvent(event);
  });
  disk.addEventListener("pointermove", (event) => {
    if (dragging) {
      submitFromEvent(event);
    }
  });
  const endDrag = (): void => {
    dragging = false;
  };
  disk.addEventListener("pointerup", endDrag);
  disk.addEventListener("pointercancel", endDrag);

  slot("toggle-tiling").addEventListener("change", (event) => {
    state.showTiling = (event.target as HTMLInputElement).checked;
    redraw();
  });
  slot("toggle-juzu").addEventListener("change", (event) => {
    state.showJuzu = (event.target as HTMLInputElement).checked;
    redraw();
  });
  slot("toggle-trace").addEventListener("change", (event) => {
    state.showTrace = (event.target as HTMLInputElement).checked;
    redraw();
  });

  redraw();
  loop.submit(state.controlPoint);
}

const rootElement = typeof document === "undefined" ? null : document.getElementById("pentamap-root");
if (rootElement !== null) {
  void startApp(rootElement, {
    baseUrl: resolveBaseUrl(),
    diskSize: 560,
    panelSize: 340,
  });
}
