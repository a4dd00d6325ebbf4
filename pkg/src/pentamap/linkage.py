"""Closed equilateral pentagon linkages and the disk-to-linkage recipe.

The recipe turns a disk point q into a linkage in four moves: sample the
harmonic coordinate at the five rotated copies q_k = q e^{2ik alpha},
turn each value into a unit edge vector v_k = e^{i alpha (k + psi_k)},
recenter the five vectors by the unique disk automorphism that zeroes
their centroid, and accumulate the recentered vectors into vertices
starting from the origin.  Closure is automatic: a zero centroid of the
edge vectors is exactly the closing condition.
"""

from __future__ import annotations

import cmath
import math
import os
import threading
from dataclasses import dataclass

import numpy as np

from .combinatorics import CombinatorialType, Juzu, classify
from .conformal import (
    HarmonicField,
    build_quad,
    default_cache_path,
    load_field,
    psi,
    psi_many,
    save_field,
    solve_field,
)
from .errors import ValidationError
from .hyperbolic import ALPHA, CirclePoint, DiskPoint, central_reflection
from .springborn import normalize
from .tiling import base_vertex, side_line

_CLOSURE_TOL = 1e-9

SAMPLE_STEP = cmath.exp(2j * ALPHA)
DEFAULT_MESH_SIZE = 0.004
DEGENERACY_TOL = 1e-3  # classify tolerance absorbing mesh-level noise

_default_field: HarmonicField | None = None
_field_lock = threading.Lock()


@dataclass(frozen=True)
class Linkage:
    """Five unit-length edges closing up; p_0 pinned to the origin.

    edges[k] is the step into vertex k: p_k = p_{k-1} + edges[k], with
    edges[0] closing the loop from p_4 back to p_0.  The juzu bead for
    label k is the edge direction turned clockwise by 90 degrees.
    """

    vertices: tuple[complex, ...]
    edges: tuple[CirclePoint, ...]
    source_point: DiskPoint | None
    type_index: int

    @classmethod
    def from_vertices(
        cls, vertices, source_point=None, tol=_CLOSURE_TOL, classify_tol=1e-7
    ):
        vs = tuple(complex(v) for v in vertices)
        if len(vs) != 5:
            raise ValidationError("a pentagon linkage has five vertices")
        if abs(vs[0]) > tol:
            raise ValidationError("p_0 must be the origin")
        steps = [vs[k] - vs[k - 1] for k in range(5)]
        for k, v in enumerate(steps):
            if abs(abs(v) - 1.0) > tol:
                raise ValidationError(f"edge {k} has length {abs(v):.12f}, not 1")
        juzu = Juzu(tuple(CirclePoint(-1j * v) for v in steps))
        return cls(
            vertices=vs,
            edges=tuple(CirclePoint(v) for v in steps),
            source_point=source_point,
            type_index=classify(juzu, tol=classify_tol).index,
        )

    @property
    def juzu(self) -> Juzu:
        return Juzu(tuple(CirclePoint(-1j * e.z) for e in self.edges))

    def combinatorial_type(self) -> CombinatorialType:
        from .combinatorics import enumerate_types

        return enumerate_types()[self.type_index]

    def closure_residual(self) -> float:
        return abs(sum(e.z for e in self.edges))


@dataclass(frozen=True)
class RecipeTrace:
    """All intermediate stages of one recipe run."""

    source_point: DiskPoint
    sample_points: tuple[DiskPoint, ...]
    psi_values: tuple[float, ...]
    raw_vectors: tuple[CirclePoint, ...]
    mobius_param: complex
    final: Linkage


def default_field(mesh_size: float = DEFAULT_MESH_SIZE) -> HarmonicField:
    """Shared harmonic field; loaded from the cache file when one matches,
    solved and written back otherwise."""
    global _default_field
    with _field_lock:
        if _default_field is not None and _default_field.mesh_size <= mesh_size:
            return _default_field
        quad = build_quad()
        path = default_cache_path()
        if os.path.exists(path):
            try:
                cached = load_field(path, quad)
            except (ValidationError, OSError):
                cached = None
            if cached is not None and cached.mesh_size <= mesh_size:
                _default_field = cached
                return cached
        field = solve_field(quad, mesh_size)
        try:
            os.makedirs(os.path.dirname(path), exist_ok=True)
            save_field(field, path)
        except OSError:
            pass
        _default_field = field
        return field


def sample_points(q: complex) -> tuple[complex, ...]:
    """The five rotated copies of q feeding the recipe."""
    return tuple(q * SAMPLE_STEP**k for k in range(5))


def psi_vector(q: complex, field: HarmonicField) -> tuple[float, ...]:
    return tuple(psi(p, field) for p in sample_points(q))


def _assemble(z, psis, classify_tol=DEGENERACY_TOL):
    raw = tuple(
        cmath.exp(1j * ALPHA * (k + psis[k])) for k in range(5)
    )
    res = normalize(raw)
    vectors = [p.z for p in res.normalized]
    vertices = [0j]
    for k in range(1, 5):
        vertices.append(vertices[-1] + vectors[k])
    final = Linkage.from_vertices(
        vertices, source_point=DiskPoint(z), classify_tol=classify_tol
    )
    return RecipeTrace(
        source_point=DiskPoint(z),
        sample_points=tuple(DiskPoint(p) for p in sample_points(z)),
        psi_values=tuple(psis),
        raw_vectors=tuple(CirclePoint(v) for v in raw),
        mobius_param=res.c,
        final=final,
    )


def evaluate(
    q,
    field: HarmonicField | None = None,
    classify_tol: float = DEGENERACY_TOL,
) -> RecipeTrace:
    """Run the full recipe at one control point."""
    z = q.z if isinstance(q, DiskPoint) else complex(q)
    if field is None:
        field = default_field()
    return _assemble(z, psi_vector(z, field), classify_tol=classify_tol)


def evaluate_many(
    qs,
    field: HarmonicField | None = None,
    classify_tol: float = DEGENERACY_TOL,
) -> list[RecipeTrace]:
    """Batched recipe; folds are per-point but interpolation is vectorized."""
    if field is None:
        field = default_field()
    zs = [q.z if isinstance(q, DiskPoint) else complex(q) for q in qs]
    flat = [p for z in zs for p in sample_points(z)]
    values = psi_many(flat, field)
    return [
        _assemble(z, tuple(values[5 * i: 5 * i + 5]), classify_tol=classify_tol)
        for i, z in enumerate(zs)
    ]


# label tables: reflection k fixes label k and swaps the labels paired
# across its axis; the mirror edge swaps only the labels of its own edge
MIRROR_TABLE = (0, 1, 3, 2, 4)
REFLECTION_TABLES = tuple(
    tuple((2 * m - j) % 5 for j in range(5)) for m in range(5)
)


@dataclass(frozen=True)
class RequirementReport:
    """Maximum deviations for the equivariance and anchoring checks."""

    origin_deviation: float
    axis_anchor_deviation: float
    mirror_deviation: float
    reflection_deviation: float
    reduction_deviation: float
    continuity_ratio: float
    samples: int
    seed: int

    def max_deviation(self) -> float:
        return max(
            self.origin_deviation,
            self.axis_anchor_deviation,
            self.mirror_deviation,
            self.reflection_deviation,
            self.reduction_deviation,
        )

    def passed(self, bar: float = 1e-4) -> bool:
        return self.max_deviation() <= bar and self.continuity_ratio <= 10.0


def _edge_crossing_paths(rng, count, step):
    """Short straight paths punching through the central pentagon's sides."""
    paths = []
    for _ in range(count):
        j = int(rng.integers(0, 5))
        line = side_line(j)
        va = base_vertex((2 + j) % 5)
        vb = base_vertex((3 + j) % 5)
        t = rng.uniform(0.25, 0.75)
        a1 = cmath.phase(va - line.center)
        a2 = cmath.phase(vb - line.center)
        if a2 - a1 > math.pi:
            a2 -= 2 * math.pi
        if a1 - a2 > math.pi:
            a2 += 2 * math.pi
        anchor = line.center + line.radius * cmath.exp(
            1j * (a1 + t * (a2 - a1))
        )
        direction = anchor / abs(anchor)
        paths.append(
            [anchor + (i - 10) * step * direction for i in range(21)]
        )
    return paths


def check_requirements(
    samples: int = 100,
    seed: int = 0,
    field: HarmonicField | None = None,
) -> RequirementReport:
    """Verify the symmetry contract of the disk-to-linkage map.

    Mirror (edge reflection) and central-reflection equivariance, the
    rotation-reduction identity for raw vectors, the regular pentagon at
    the origin, the pinned first bead on the vertical axis, and
    cross-boundary continuity.
    """
    if field is None:
        field = default_field()
    rng = np.random.default_rng(seed)

    trace0 = evaluate(0j, field)
    origin_dev = max(
        abs(e.z - cmath.exp(1j * ALPHA * k))
        for k, e in enumerate(trace0.final.edges)
    )

    axis_dev = 0.0
    for y in (-0.31, 0.07, 0.24):
        lk = evaluate(complex(0.0, y), field).final
        axis_dev = max(axis_dev, abs(-1j * lk.edges[0].z - (-1j)))

    def pts(n, radius=0.62):
        out = []
        while len(out) < n:
            z = complex(*rng.uniform(-radius, radius, 2))
            if abs(z) <= radius:
                out.append(z)
        return out

    mirror = side_line(0).reflection()
    mirror_dev = 0.0
    for z in pts(samples):
        a = evaluate(z, field).final.edges
        b = evaluate(mirror.apply(z), field).final.edges
        mirror_dev = max(
            mirror_dev,
            max(abs(b[j].z - a[MIRROR_TABLE[j]].z) for j in range(5)),
        )

    reflection_dev = 0.0
    for z in pts(samples):
        m = int(rng.integers(0, 5))
        table = REFLECTION_TABLES[m]
        phase = cmath.exp(2j * m * ALPHA)
        a = evaluate(z, field).final.edges
        b = evaluate(central_reflection(m).apply(z), field).final.edges
        reflection_dev = max(
            reflection_dev,
            max(
                abs(b[j].z - phase * a[table[j]].z.conjugate())
                for j in range(5)
            ),
        )

    reduction_dev = 0.0
    for z in pts(max(samples // 5, 5)):
        raw = evaluate(z, field).raw_vectors
        for k in range(5):
            shifted = evaluate(z * SAMPLE_STEP**k, field).raw_vectors
            reduction_dev = max(
                reduction_dev,
                abs(raw[k].z - shifted[0].z * cmath.exp(1j * ALPHA * k)),
            )

    step = 1e-3
    ratio = 0.0
    for path in _edge_crossing_paths(rng, 20, step):
        prev = None
        for z in path:
            verts = evaluate(z, field).final.vertices
            if prev is not None:
                move = max(abs(a - b) for a, b in zip(verts, prev))
                ratio = max(ratio, move / step)
            prev = verts

    return RequirementReport(
        origin_deviation=origin_dev,
        axis_anchor_deviation=axis_dev,
        mirror_deviation=mirror_dev,
        reflection_deviation=reflection_dev,
        reduction_deviation=reduction_dev,
        continuity_ratio=ratio,
        samples=samples,
        seed=seed,
    )


@dataclass(frozen=True)
class ConjectureReport:
    """Numerical probes of the open questions; informational only."""

    psi_sum_origin: float
    psi_sum_max: float
    drift_max: float
    sv_ratio_origin: float
    sv_ratio_max: float
    grid_radius: float
    grid_count: int


def _sunflower(radius: float, count: int):
    golden = math.pi * (3.0 - math.sqrt(5.0))
    for i in range(count):
        r = radius * math.sqrt((i + 0.5) / count)
        yield r * cmath.exp(1j * golden * i)


def _sv_ratio(z: complex, field: HarmonicField, h: float = 1e-5) -> float:
    cols = []
    for dz in (h, 1j * h):
        plus = psi_vector(z + dz, field)
        minus = psi_vector(z - dz, field)
        cols.append([(a - b) / (2 * h) for a, b in zip(plus, minus)])
    jac = np.array(cols).T
    s = np.linalg.svd(jac, compute_uv=False)
    return float(s[0] / s[1])


def probe_conjectures(
    grid_radius: float = 0.6,
    grid_count: int = 200,
    field: HarmonicField | None = None,
) -> ConjectureReport:
    """Probe whether the five sampled values sum to zero, whether that sum
    drifts along paths, and whether the control map looks conformal."""
    if field is None:
        field = default_field()

    def psi_sum(z):
        return abs(sum(psi_vector(z, field)))

    sum_origin = psi_sum(0j)
    sum_max = max(psi_sum(z) for z in _sunflower(grid_radius, grid_count))

    drift = 0.0
    for r in (0.25 * grid_radius, 0.6 * grid_radius, 0.95 * grid_radius):
        ring = [r * cmath.exp(2j * math.pi * i / 48) for i in range(49)]
        start = sum(psi_vector(ring[0], field))
        for z in ring[1:]:
            drift = max(drift, abs(sum(psi_vector(z, field)) - start))

    sv_origin = _sv_ratio(0j, field)
    sv_max = max(
        _sv_ratio(z, field)
        for z in _sunflower(grid_radius, min(grid_count, 40))
    )
    return ConjectureReport(
        psi_sum_origin=sum_origin,
        psi_sum_max=sum_max,
        drift_max=drift,
        sv_ratio_origin=sv_origin,
        sv_ratio_max=sv_max,
        grid_radius=grid_radius,
        grid_count=grid_count,
    )
