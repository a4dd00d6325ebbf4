"""Command line: rendering, modulus reports, verification, cache management.

Every command is deterministic for fixed flags; randomized checks take an
explicit --seed.  The harmonic-field cache lives at the path given by the
PENTAMAP_CACHE environment variable (or a per-user default) and is only
built when a command is allowed to do so.
"""

from __future__ import annotations

import argparse
import cmath
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .combinatorics import build_cell_complex, enumerate_types
from .conformal import (
    build_quad,
    default_cache_path,
    geometry_hash,
    load_field,
    save_field,
    solve_field,
)
from .errors import ValidationError
from .hyperbolic import ALPHA
from .linkage import (
    DEFAULT_MESH_SIZE,
    check_requirements,
    evaluate_many,
    probe_conjectures,
)
from .render import (
    PATH_PRESETS,
    frame_payload,
    juzu_svg,
    loop_rotation,
    overlay_svg,
    pentagon_svg,
    preset_path,
    tiling_json,
    tiling_svg,
)
from .springborn import normalize
from .tiling import generate_tiling, generators

PROTOCOL_VERSION = 1


def _positive_mesh(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0.0:
        raise argparse.ArgumentTypeError("mesh size must be positive")
    return value


def _euclidean_radius(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("radius must lie strictly between 0 and 1")
    return value


def _parse_point(text: str) -> complex:
    try:
        x, y = (float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected a point as X,Y, got {text!r}"
        ) from None
    return complex(x, y)


def _resolve_field(mesh_size: float, allow_build: bool):
    """Load the cache if it is fine enough; otherwise build when allowed."""
    path = default_cache_path()
    quad = build_quad()
    if os.path.exists(path):
        field = load_field(path, quad)
        if field.mesh_size <= mesh_size:
            return field
        if not allow_build:
            raise SystemExit(
                f"cached field at {path} has mesh {field.mesh_size}, need "
                f"{mesh_size}; rebuild with 'pentamap cache build --mesh "
                f"{mesh_size}' or pass --build"
            )
    elif not allow_build:
        raise SystemExit(
            f"no field cache at {path}; run 'pentamap cache build' or pass --build"
        )
    field = solve_field(quad, mesh_size)
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    save_field(field, path)
    return field


def _load_path_file(path: str) -> list[complex]:
    try:
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
        points = [complex(float(p[0]), float(p[1])) for p in raw]
    except (OSError, ValueError, TypeError, IndexError, KeyError) as exc:
        raise SystemExit(f"invalid path file {path}: {exc}") from None
    if not points:
        raise SystemExit(f"invalid path file {path}: no points")
    return points


def _render_points(args) -> list[complex]:
    if args.at is not None:
        points = [args.at] * max(args.frames, 1)
    elif args.path in PATH_PRESETS:
        points = preset_path(args.path, args.frames)
    else:
        points = _load_path_file(args.path)
        if args.frames > 1 and len(points) > 1:
            resampled = []
            for i in range(args.frames):
                t = i * (len(points) - 1) / (args.frames - 1)
                lo = min(int(t), len(points) - 2)
                frac = t - lo
                resampled.append(points[lo] * (1 - frac) + points[lo + 1] * frac)
            points = resampled
    for p in points:
        if abs(p) >= 1.0:
            raise SystemExit(f"path point {p} lies outside the open unit disk")
    return points


def cmd_render(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    if args.mode == "tiling":
        tiling = generate_tiling(2.0 * math.atanh(args.radius))
        if args.format == "svg":
            name = os.path.join(args.out, "tiling.svg")
            content = tiling_svg(tiling, size=args.size)
        else:
            name = os.path.join(args.out, "tiling.json")
            content = json.dumps(tiling_json(tiling), indent=2, sort_keys=True) + "\n"
        with open(name, "w", encoding="utf-8") as handle:
            handle.write(content)
        print(f"wrote {name} ({len(tiling.faces)} faces)")
        return 0
    points = _render_points(args)
    field = _resolve_field(args.mesh, args.build)
    traces = evaluate_many(points, field)
    backdrop = (
        generate_tiling(2.0 * math.atanh(args.radius))
        if args.mode == "overlay"
        else None
    )
    for i, trace in enumerate(traces):
        if args.format == "json":
            content = json.dumps(frame_payload(trace), indent=2, sort_keys=True) + "\n"
        elif args.mode == "pentagon":
            content = pentagon_svg(trace.final, size=args.size)
        elif args.mode == "juzu":
            content = juzu_svg(trace.final, size=args.size)
        else:
            content = overlay_svg(trace, backdrop, size=args.size)
        name = os.path.join(args.out, f"frame_{i:04d}.{args.format}")
        with open(name, "w", encoding="utf-8") as handle:
            handle.write(content)
    print(f"wrote {len(traces)} frame(s) to {args.out}")
    return 0


def cmd_modulus(args) -> int:
    quad = build_quad()
    rows = []
    for mesh in (2.0 * args.mesh, args.mesh):
        field = solve_field(quad, mesh)
        rows.append((mesh, field))
        print(
            f"mesh {mesh:.6f}: modulus {field.modulus:.8f}  "
            f"({len(field.triangles)} triangles, {len(field.vertices)} vertices)"
        )
    coarse, fine = rows[0][1].modulus, rows[1][1].modulus
    extrapolated = fine + (fine - coarse) / 3.0
    print(f"refinement estimate: {extrapolated:.8f}")
    print(f"modulus {fine:.8f}")
    return 0


def _relation_words():
    gens = generators()
    s, r0, r1 = gens["s"], gens["r0"], gens["r1"]

    def power(m, n):
        out = m
        for _ in range(n - 1):
            out = out.compose(m)
        return out

    return {
        "s^2": power(s, 2),
        "r0^2": power(r0, 2),
        "r1^2": power(r1, 2),
        "(s r0)^2": power(s.compose(r0), 2),
        "(s r1)^4": power(s.compose(r1), 4),
        "(r0 r1)^5": power(r0.compose(r1), 5),
    }


def _verify_criteria(field, seed: int, samples: int, grid: int) -> list[dict]:
    criteria = []

    def record(name, passed, value, bound, detail=""):
        criteria.append(
            {
                "name": name,
                "passed": bool(passed),
                "value": value,
                "bound": bound,
                "detail": detail,
            }
        )

    complex_ = build_cell_complex()
    counts = (len(complex_.faces), len(complex_.edges), len(complex_.vertices))
    ok = (
        counts == (24, 60, 30)
        and complex_.euler_characteristic == -6
        and complex_.genus == 4
        and len(enumerate_types()) == 114
    )
    record(
        "cell-complex",
        ok,
        {"counts": list(counts), "chi": complex_.euler_characteristic,
         "genus": complex_.genus},
        {"counts": [24, 60, 30], "chi": -6, "genus": 4},
        "24/60/30 cells, chi=-6, genus 4",
    )

    rng = np.random.default_rng(seed)
    worst = 0.0
    for word in _relation_words().values():
        for _ in range(100):
            z = complex(*rng.uniform(-0.7, 0.7, 2))
            worst = max(worst, abs(word.apply(z) - z))
    record("group-relations", worst <= 1e-10, worst, 1e-10,
           "six defining relations on 100 points each")

    report = check_requirements(samples=samples, seed=seed, field=field)
    record(
        "requirements",
        report.passed(bar=1e-4),
        {
            "origin": report.origin_deviation,
            "axisAnchor": report.axis_anchor_deviation,
            "mirror": report.mirror_deviation,
            "reflection": report.reflection_deviation,
            "reduction": report.reduction_deviation,
            "continuityRatio": report.continuity_ratio,
        },
        1e-4,
        "equivariance suite and anchors",
    )

    points = []
    while len(points) < 500:
        z = complex(*rng.uniform(-0.9, 0.9, 2))
        if abs(z) <= 0.9:
            points.append(z)
    worst_closure = worst_unit = worst_res = 0.0
    worst_iter = 0
    for trace in evaluate_many(points, field):
        worst_closure = max(worst_closure, trace.final.closure_residual())
        worst_unit = max(
            worst_unit, max(abs(abs(e.z) - 1.0) for e in trace.final.edges)
        )
        res = normalize([r.z for r in trace.raw_vectors])
        worst_res = max(worst_res, res.residual)
        worst_iter = max(worst_iter, res.iterations)
    ok = worst_closure <= 1e-9 and worst_unit <= 1e-9 and worst_res <= 1e-12 \
        and worst_iter <= 64
    record(
        "recipe-invariants",
        ok,
        {"closure": worst_closure, "unitLength": worst_unit,
         "normalizationResidual": worst_res, "newtonIterations": worst_iter},
        {"closure": 1e-9, "unitLength": 1e-9,
         "normalizationResidual": 1e-12, "newtonIterations": 64},
        "500 random control points",
    )

    probes = probe_conjectures(grid_radius=0.6, grid_count=grid, field=field)
    arc = preset_path("zero-momentum-turn", 2)
    first, last = (t.final for t in evaluate_many(arc, field))
    turn_dev = abs(loop_rotation(first, last) + ALPHA)
    ok = probes.psi_sum_max <= 10 * 5e-4 and turn_dev <= 10 * 1e-3
    record(
        "conjecture-probes",
        ok,
        {"psiSumMax": probes.psi_sum_max, "driftMax": probes.drift_max,
         "svRatioMax": probes.sv_ratio_max, "turnDeviation": turn_dev},
        {"psiSumMax": 5e-4, "turnDeviation": 1e-3},
        "report-only probes, gated at 10x tolerance",
    )
    return criteria


def cmd_verify(args) -> int:
    path = default_cache_path()
    if os.path.exists(path):
        field = load_field(path, build_quad())
    else:
        field = _resolve_field(DEFAULT_MESH_SIZE, allow_build=True)
    criteria = _verify_criteria(field, args.seed, args.samples, args.grid)
    complex_ = build_cell_complex()
    print(f"cell complex: chi={complex_.euler_characteristic} "
          f"genus={complex_.genus}")
    passed = all(c["passed"] for c in criteria)
    for c in criteria:
        tag = "PASS" if c["passed"] else "FAIL"
        print(f"[{tag}] {c['name']}: {c['detail']}")
    report = {
        "passed": passed,
        "protocolVersion": PROTOCOL_VERSION,
        "version": __version__,
        "seed": args.seed,
        "modulus": field.modulus,
        "meshSize": field.mesh_size,
        "criteria": criteria,
    }
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            json.dump(report, handle, indent=2, sort_keys=True)
            handle.write("\n")
        print(f"report written to {args.report}")
    if not passed:
        failing = ", ".join(c["name"] for c in criteria if not c["passed"])
        print(f"verification failed: {failing}", file=sys.stderr)
        return 1
    return 0


def cmd_cache_build(args) -> int:
    path = args.out or default_cache_path()
    quad = build_quad()
    field = solve_field(quad, args.mesh)
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    save_field(field, path)
    print(
        f"built field: mesh {field.mesh_size}, {len(field.triangles)} triangles, "
        f"modulus {field.modulus:.8f}"
    )
    print(f"geometry {geometry_hash(quad)} -> {path}")
    return 0


def cmd_serve(args) -> int:
    from .service import serve

    host, _, port = args.bind.rpartition(":")
    serve(host or "127.0.0.1", int(port), mesh_size=args.mesh)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pentamap",
        description="Pentagon linkages steered from the hyperbolic plane.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    render = sub.add_parser("render", help="write SVG or JSON frames")
    where = render.add_mutually_exclusive_group()
    where.add_argument("--at", type=_parse_point, metavar="X,Y",
                       help="single control point")
    where.add_argument("--path", metavar="PRESET|FILE",
                       help=f"preset ({', '.join(PATH_PRESETS)}) or JSON file")
    render.add_argument("--mode", choices=("pentagon", "juzu", "tiling", "overlay"),
                        default="pentagon")
    render.add_argument("--frames", type=int, default=1)
    render.add_argument("--format", choices=("svg", "json"), default="svg")
    render.add_argument("--out", default="out")
    render.add_argument("--size", type=int, default=420)
    render.add_argument("--radius", type=_euclidean_radius, default=0.95,
                        help="tiling patch radius (Euclidean)")
    render.add_argument("--mesh", type=_positive_mesh, default=DEFAULT_MESH_SIZE)
    render.add_argument("--build", action="store_true",
                        help="build the field cache if missing")
    render.set_defaults(func=cmd_render)

    modulus = sub.add_parser("modulus", help="conformal modulus report")
    modulus.add_argument("--mesh", type=_positive_mesh, default=0.00625)
    modulus.set_defaults(func=cmd_modulus)

    verify = sub.add_parser("verify", help="run the verification suite")
    verify.add_argument("--report", metavar="FILE", default=None)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--samples", type=int, default=60)
    verify.add_argument("--grid", type=int, default=120)
    verify.set_defaults(func=cmd_verify)

    cache = sub.add_parser("cache", help="field cache management")
    cache_sub = cache.add_subparsers(dest="cache_command", required=True)
    build = cache_sub.add_parser("build", help="solve and store the field")
    build.add_argument("--mesh", type=_positive_mesh, default=DEFAULT_MESH_SIZE)
    build.add_argument("--out", metavar="FILE", default=None)
    build.set_defaults(func=cmd_cache_build)

    serve = sub.add_parser("serve", help="run the evaluation service")
    serve.add_argument("--bind", default="127.0.0.1:8765", metavar="HOST:PORT")
    serve.add_argument("--mesh", type=_positive_mesh, default=DEFAULT_MESH_SIZE)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "render" and args.mode != "tiling" \
            and args.at is None and args.path is None:
        build_parser().error("render needs --at or --path (except --mode tiling)")
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
