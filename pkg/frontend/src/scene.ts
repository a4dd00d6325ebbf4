/** SVG fragment builders.  All pure string functions so they stay testable
 *  without a DOM; the app shell assembles them with innerHTML. */

import { typeDegeneracy } from "./protocol.js";
import type { EvalResponse, TilingPayload } from "./protocol.js";
import { EDGE_COLORS, diskView, edgeLinePath, fmt, toScreen } from "./view.js";
import type { DiskView, Vec2 } from "./view.js";

function svgOpen(size: number): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${size}" height="${size}" ` +
    `viewBox="0 0 ${size} ${size}">`
  );
}

export function tilingBackdrop(tiling: TilingPayload, view: DiskView): string {
  const parts: string[] = [];
  for (const edge of tiling.edges) {
    parts.push(
      `<path d="${edgeLinePath(edge.line, edge.endpoints, view)}" ` +
        `fill="none" stroke="#CCD5E0" stroke-width="1"/>`,
    );
  }
  return parts.join("\n");
}

export function diskRim(view: DiskView): string {
  return (
    `<circle cx="${fmt(view.cx)}" cy="${fmt(view.cy)}" r="${fmt(view.scale)}" ` +
    `fill="none" stroke="#333333" stroke-width="2"/>`
  );
}

export function controlMarker(point: Vec2, view: DiskView, degenerate: boolean): string {
  const [x, y] = toScreen(view, point);
  const halo = degenerate
    ? `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="14" fill="none" ` +
      `stroke="#CC0000" stroke-width="3" stroke-dasharray="4 3" class="degenerate"/>\n`
    : "";
  return (
    halo +
    `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="7" fill="#111111" ` +
    `stroke="#FFFFFF" stroke-width="2" class="control-marker"/>`
  );
}

/** The disk panel: rim, optional tiling backdrop, control marker. */
export function diskScene(
  size: number,
  point: Vec2,
  frame: EvalResponse | null,
  backdrop: string | null,
): string {
  const view = diskView(size);
  const degenerate = frame !== null && typeDegeneracy(frame.type) >= 1;
  const parts = [svgOpen(size)];
  if (backdrop !== null) {
    parts.push(backdrop);
  }
  parts.push(diskRim(view));
  parts.push(controlMarker(point, view, degenerate));
  parts.push("</svg>");
  return parts.join("\n");
}

/** The linkage with colored edges; vertex 0 carries a square anchor. */
export function pentagonPanel(frame: EvalResponse, size: number): string {
  const scale = size / 4.4;
  const cx = size / 2;
  const cy = size / 2;
  const at = (p: [number, number]): Vec2 => [cx + scale * p[0], cy - scale * p[1]];
  const vs = frame.vertices;
  const parts = [svgOpen(size)];
  for (let k = 0; k < 5; k += 1) {
    const [x1, y1] = at(vs[(k + 4) % 5]);
    const [x2, y2] = at(vs[k]);
    parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${EDGE_COLORS[k]}" stroke-width="5" stroke-linecap="round"/>`,
    );
  }
  for (const v of vs) {
    const [x, y] = at(v);
    parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="6" fill="#222222"/>`);
  }
  const [ax, ay] = at(vs[0]);
  parts.push(
    `<rect x="${fmt(ax - 9)}" y="${fmt(ay - 9)}" width="18" height="18" ` +
      `fill="none" stroke="#222222" stroke-width="2"/>`,
  );
  parts.push("</svg>");
  return parts.join("\n");
}

/** Bead angles, label order.  The bead direction is the edge vector turned a
 *  quarter turn clockwise, which is a fixed view rotation. */
export function beadPositions(frame: EvalResponse): Vec2[] {
  return frame.vectors.map((v) => [v[1], -v[0]]);
}

/** Beads on a circle; coincident pairs of the classified type get halos. */
export function juzuPanel(frame: EvalResponse, size: number): string {
  const scale = size / 2.6;
  const cx = size / 2;
  const cy = size / 2;
  const at = (p: Vec2): Vec2 => [cx + scale * p[0], cy - scale * p[1]];
  const beads = beadPositions(frame);
  const parts = [svgOpen(size)];
  parts.push(
    `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(scale)}" ` +
      `fill="none" stroke="#BBBBBB" stroke-width="2"/>`,
  );
  // halo the d tightest bead pairs; which pairs merged is the type's business,
  // on screen the tightest pairs are where the coincidence sits
  const degeneracy = typeDegeneracy(frame.type);
  if (degeneracy >= 1) {
    const order = beads
      .map((b, k) => ({ k, angle: Math.atan2(b[1], b[0]) }))
      .sort((p, q) => p.angle - q.angle);
    const gaps = order.map((entry, i) => {
      const next = order[(i + 1) % 5];
      let gap = next.angle - entry.angle;
      if (gap < 0) {
        gap += 2 * Math.PI;
      }
      return { gap, a: entry.k, b: next.k };
    });
    gaps.sort((p, q) => p.gap - q.gap);
    for (const pair of gaps.slice(0, degeneracy)) {
      const mx = beads[pair.a][0] + beads[pair.b][0];
      const my = beads[pair.a][1] + beads[pair.b][1];
      const norm = Math.hypot(mx, my) || 1;
      const [x, y] = at([mx / norm, my / norm]);
      parts.push(
        `<circle cx="${fmt(x)}" cy="${fmt(y)}" r="18" fill="none" ` +
          `stroke="#555555" stroke-width="3" stroke-dasharray="4 3" class="coincidence"/>`,
      );
    }
  }
  beads.forEach((b, k) => {
    const [x, y] = at(b);
    parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="10" fill="${EDGE_COLORS[k]}"/>`);
  });
  parts.push("</svg>");
  return parts.join("\n");
}

export function bannerHtml(visible: boolean, message: string): string {
  const cls = visible ? "banner banner-visible" : "banner banner-hidden";
  return `<div class="${cls}" role="alert">${message}</div>`;
}

export function traceHtml(frame: EvalResponse): string {
  const psi = frame.psi.map((x) => x.toFixed(5)).join(", ");
  if (frame.trace === undefined) {
    return `<div class="trace">psi: [${psi}]</div>`;
  }
  const mobius = frame.trace.mobius.map((x) => x.toFixed(5)).join(", ");
  const folds = frame.trace.foldReflections.join(", ");
  return (
    `<div class="trace">psi: [${psi}]<br/>` +
    `recentering: [${mobius}]<br/>folds: [${folds}]</div>`
  );
}
