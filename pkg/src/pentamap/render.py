"""Deterministic SVG and JSON rendering of linkages, juzus, and the tiling.

All coordinates are written with six fixed decimals so repeated runs
produce byte-identical output.  Edge k of a pentagon and bead k of a juzu
share one color, in the label order blue, purple, red, yellow, green.
"""

from __future__ import annotations

import cmath
import math

from .combinatorics import enumerate_types
from .errors import ValidationError
from .hyperbolic import ALPHA
from .linkage import Linkage, RecipeTrace, SAMPLE_STEP
from .tiling import Tiling, base_midpoint, base_vertex

EDGE_COLORS = ("#3333FF", "#B30066", "#CC0000", "#CC9900", "#009900")

PATH_PRESETS = ("edge-crossing", "vertex-loop", "zero-momentum-turn")


def _fmt(x: float) -> str:
    return f"{x + 0.0:.6f}"


def _pt(z: complex, scale: float, cx: float, cy: float) -> tuple[str, str]:
    return _fmt(cx + scale * z.real), _fmt(cy - scale * z.imag)


def _xy(z: complex, scale: float, cx: float, cy: float) -> str:
    return ",".join(_pt(z, scale, cx, cy))


def frame_payload(trace: RecipeTrace) -> dict:
    """The shared wire schema for one recipe evaluation."""
    lk = trace.final
    return {
        "source": [trace.source_point.z.real, trace.source_point.z.imag],
        "psi": list(trace.psi_values),
        "vectors": [[e.z.real, e.z.imag] for e in lk.edges],
        "vertices": [[p.real, p.imag] for p in lk.vertices],
        "type": lk.type_index,
    }


def pentagon_svg(linkage: Linkage, size: int = 420) -> str:
    """The linkage drawn with colored edges; vertex 0 carries a square anchor."""
    scale = size / 4.4
    cx = cy = size / 2.0
    vs = linkage.vertices
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="#FFFFFF"/>',
    ]
    for k in range(5):
        a, b = vs[(k - 1) % 5], vs[k]
        (x1, y1), (x2, y2) = _pt(a, scale, cx, cy), _pt(b, scale, cx, cy)
        parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="{EDGE_COLORS[k]}" stroke-width="5" stroke-linecap="round"/>'
        )
    for v in vs:
        x, y = _pt(v, scale, cx, cy)
        parts.append(f'<circle cx="{x}" cy="{y}" r="6" fill="#222222"/>')
    ax = cx + scale * vs[0].real
    ay = cy - scale * vs[0].imag
    parts.append(
        f'<rect x="{_fmt(ax - 9.0)}" y="{_fmt(ay - 9.0)}" width="{_fmt(18.0)}" '
        f'height="{_fmt(18.0)}" fill="none" stroke="#222222" stroke-width="2"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def juzu_svg(linkage: Linkage, size: int = 420) -> str:
    """Beads on the unit circle; merged groups of the classified type get a halo."""
    scale = size / 2.6
    cx = cy = size / 2.0
    beads = [p.z for p in linkage.juzu.points]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="#FFFFFF"/>',
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(scale)}" '
        f'fill="none" stroke="#BBBBBB" stroke-width="2"/>',
    ]
    ty = enumerate_types()[linkage.type_index]
    for group in ty.cyclic_order:
        if len(group) < 2:
            continue
        mean = sum(beads[j] for j in group) / len(group)
        mean /= abs(mean)
        x, y = _pt(mean, scale, cx, cy)
        parts.append(
            f'<circle cx="{x}" cy="{y}" r="18" fill="none" '
            f'stroke="#555555" stroke-width="3" stroke-dasharray="4 3"/>'
        )
    for k, b in enumerate(beads):
        x, y = _pt(b, scale, cx, cy)
        parts.append(f'<circle cx="{x}" cy="{y}" r="10" fill="{EDGE_COLORS[k]}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _geodesic_polyline(edge, segments: int = 24) -> list[complex]:
    line = edge.line
    a, b = edge.endpoints
    if line.center is None:
        return [a + (b - a) * i / segments for i in range(segments + 1)]
    t0 = cmath.phase(a - line.center)
    t1 = cmath.phase(b - line.center)
    if t1 - t0 > math.pi:
        t1 -= 2 * math.pi
    if t0 - t1 > math.pi:
        t1 += 2 * math.pi
    return [
        line.center + line.radius * cmath.exp(1j * (t0 + (t1 - t0) * i / segments))
        for i in range(segments + 1)
    ]


def tiling_json(tiling: Tiling) -> dict:
    """Faces, edges, and vertices of a generated tiling patch."""
    faces = [
        {
            "word": list(f.address.word),
            "center": [f.center.real, f.center.imag],
            "labels": list(f.label_cycle),
        }
        for f in tiling.faces
    ]
    edges = []
    for e in tiling.edges:
        arc = (
            {"kind": "diameter", "direction": [e.line.direction.real, e.line.direction.imag]}
            if e.line.center is None
            else {
                "kind": "arc",
                "center": [e.line.center.real, e.line.center.imag],
                "radius": e.line.radius,
            }
        )
        edges.append(
            {
                "word": list(e.address.word),
                "midpoint": [e.midpoint.real, e.midpoint.imag],
                "endpoints": [[p.real, p.imag] for p in e.endpoints],
                "pair": list(e.pair),
                "line": arc,
            }
        )
    vertices = [
        {"word": list(v.address.word), "point": [v.point.real, v.point.imag]}
        for v in tiling.vertices
    ]
    return {
        "radius": tiling.radius,
        "faceCount": len(faces),
        "edgeCount": len(edges),
        "vertexCount": len(vertices),
        "faces": faces,
        "edges": edges,
        "vertices": vertices,
    }


def tiling_svg(tiling: Tiling, size: int = 600) -> str:
    """The tiling patch inside the unit circle, geodesics as fine polylines."""
    scale = size / 2.1
    cx = cy = size / 2.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="#FFFFFF"/>',
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(scale)}" '
        f'fill="none" stroke="#333333" stroke-width="2"/>',
    ]
    for e in tiling.edges:
        pts = " ".join(_xy(z, scale, cx, cy) for z in _geodesic_polyline(e))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="#7788AA" stroke-width="1.2"/>'
        )
    for v in tiling.vertices:
        x, y = _pt(v.point, scale, cx, cy)
        parts.append(f'<circle cx="{x}" cy="{y}" r="2.5" fill="#334455"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def overlay_svg(trace: RecipeTrace, tiling: Tiling, size: int = 720) -> str:
    """Disk with tiling backdrop and sample points, linkage and juzu beside it."""
    disk = size
    scale = disk / 2.1
    cx = cy = disk / 2.0
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size + size // 2}" '
        f'height="{size}" viewBox="0 0 {size + size // 2} {size}">',
        f'<rect width="{size + size // 2}" height="{size}" fill="#FFFFFF"/>',
        f'<circle cx="{_fmt(cx)}" cy="{_fmt(cy)}" r="{_fmt(scale)}" '
        f'fill="none" stroke="#333333" stroke-width="2"/>',
    ]
    for e in tiling.edges:
        pts = " ".join(_xy(z, scale, cx, cy) for z in _geodesic_polyline(e))
        parts.append(
            f'<polyline points="{pts}" fill="none" stroke="#CCD5E0" stroke-width="1"/>'
        )
    for k, p in enumerate(trace.sample_points):
        x, y = _pt(p.z, scale, cx, cy)
        parts.append(f'<circle cx="{x}" cy="{y}" r="7" fill="{EDGE_COLORS[k]}"/>')
    x, y = _pt(trace.source_point.z, scale, cx, cy)
    parts.append(
        f'<circle cx="{x}" cy="{y}" r="10" fill="none" stroke="#000000" stroke-width="3"/>'
    )
    panel = size // 2
    pscale = panel / 4.6
    px, py = size + panel / 2.0, panel / 2.0
    vs = trace.final.vertices
    for k in range(5):
        a, b = vs[(k - 1) % 5], vs[k]
        (x1, y1), (x2, y2) = _pt(a, pscale, px, py), _pt(b, pscale, px, py)
        parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="{EDGE_COLORS[k]}" stroke-width="4" stroke-linecap="round"/>'
        )
    jscale = panel / 2.6
    jx, jy = size + panel / 2.0, size - panel / 2.0
    parts.append(
        f'<circle cx="{_fmt(jx)}" cy="{_fmt(jy)}" r="{_fmt(jscale)}" '
        f'fill="none" stroke="#BBBBBB" stroke-width="1.5"/>'
    )
    for k, bead in enumerate(trace.final.juzu.points):
        x, y = _pt(bead.z, jscale, jx, jy)
        parts.append(f'<circle cx="{x}" cy="{y}" r="7" fill="{EDGE_COLORS[k]}"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def preset_path(name: str, frames: int) -> list[complex]:
    """Built-in control-point paths for animations."""
    if frames < 1:
        raise ValidationError("frame count must be at least 1")
    if frames == 1:
        ts = [0.5]
    else:
        ts = [i / (frames - 1) for i in range(frames)]
    if name == "edge-crossing":
        anchor = base_midpoint(0)
        direction = anchor / abs(anchor)
        return [anchor + (t - 0.5) * 0.24 * direction for t in ts]
    if name == "vertex-loop":
        center = base_vertex(0)
        return [center + 0.08 * cmath.exp(2j * math.pi * t) for t in ts]
    if name == "zero-momentum-turn":
        start = 0.3 * cmath.exp(-1j * math.pi / 2.0)
        return [start * cmath.exp(2j * ALPHA * t) for t in ts]
    raise ValidationError(
        f"unknown path preset {name!r}; choose from {', '.join(PATH_PRESETS)}"
    )


def loop_rotation(first: Linkage, last: Linkage, shift: int = 1) -> float:
    """Rigid rotation (radians) carrying first onto last after shifting labels."""
    acc = sum(
        last.edges[j].z * first.edges[(j + shift) % 5].z.conjugate() for j in range(5)
    )
    return cmath.phase(acc)
