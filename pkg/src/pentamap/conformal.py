"""The quadrilateral tile Q, its harmonic coordinate, and disk-wide folding.

Q is half of the central pentagon (cut along the symmetry axis through the
top vertex and the bottom edge midpoint) glued to the half-turn image of
that piece about the midpoint of the pentagon side at 198 degrees.  Its
corner angles alternate 45 and 90 degrees and its area is pi/2.

The harmonic coordinate u solves the mixed boundary problem on Q: u = 0 on
the side lying on the imaginary axis, u = 1 on its half-turn image, and
zero normal derivative on the two sides supported by pentagon side lines.
The Dirichlet energy of u is the conformal modulus of Q.  Reflecting any
disk point back into Q through Q's four side geodesics, with a sign flip
and integer offset recorded at each level-line reflection, extends u to
the harmonic coordinate psi on the whole disk.
"""

from __future__ import annotations

import cmath
import hashlib
import json
import math
import os
import struct
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.linalg import spsolve
from scipy.spatial import cKDTree

from .errors import (
    OutOfRangeError,
    OutsideDiskError,
    ResourceLimitError,
    ValidationError,
)
from .hyperbolic import Geodesic, MobiusMap, hyperbolic_distance, point_reflection
from .tiling import base_midpoint, base_vertex, side_line

FOLD_RANGE = 16.0  # hyperbolic radius within which folding is supported
_FORMAT_MAGIC = b"PMAPFLD1"
_FORMAT_VERSION = 1

CACHE_ENV = "PENTAMAP_CACHE"


@dataclass(frozen=True)
class QuadDomain:
    """The tile Q; sides[i] joins corners[i] to corners[(i+1) % 4].

    Corner angles run (90, 45, 90, 45) degrees.  Side roles: 0 is the u=0
    level line (the imaginary axis), 2 its half-turn image carrying u=1,
    and 1, 3 are the free sides supported by pentagon side lines.
    """

    corners: tuple[complex, complex, complex, complex]
    sides: tuple[Geodesic, Geodesic, Geodesic, Geodesic]
    center: complex
    half_turn: MobiusMap
    placement: MobiusMap | None
    coarse_points: tuple[complex, ...]
    coarse_triangles: tuple[tuple[int, int, int], ...]
    coarse_side_sets: tuple[frozenset, ...]
    dirichlet0: int = 0
    dirichlet1: int = 2

    def _inner_signs(self):
        return tuple(
            1.0 if s.signed_value(self.center) > 0 else -1.0 for s in self.sides
        )

    def side_clearances(self, z: complex) -> tuple[float, ...]:
        """Per side: positive when z is on Q's side of the geodesic,
        roughly in Euclidean units."""
        out = []
        for s, sign in zip(self.sides, self._inner_signs()):
            v = s.signed_value(z) * sign
            if not s.is_diameter:
                v /= 2.0 * s.radius
            out.append(v)
        return tuple(out)

    def contains(self, z: complex, tol: float = 1e-12) -> bool:
        return all(v >= -tol for v in self.side_clearances(z))

    def corner_angles(self) -> tuple[float, float, float, float]:
        """Interior angles at the four corners, in radians."""
        return tuple(_corner_angle(self, i) for i in range(4))


def build_quad(placement: MobiusMap | None = None) -> QuadDomain:
    """Construct Q in tiling coordinates, optionally moved by an isometry.

    Q is assembled from the half of the central pentagon left of the
    imaginary axis plus its half-turn image about the midpoint of the
    pentagon side at 198 degrees.
    """
    rho = point_reflection(base_midpoint(4))
    a = base_vertex(0)  # 45-degree corner on the imaginary axis
    m = base_midpoint(0)  # 90-degree corner, bottom edge midpoint

    corners = (m, a, rho.apply(m), rho.apply(a))
    axis = Geodesic.diameter(1j)
    sides = (
        axis,  # u = 0
        side_line(3),  # through the vertices at 90 and 162 degrees (free)
        _image_geodesic(axis, rho),  # u = 1
        side_line(0),  # the bottom side line (free)
    )

    pts = [
        0j,  # 0: on the u=0 side
        a,  # 1
        base_midpoint(3),  # 2: midpoint of the 126-degree side
        base_vertex(1),  # 3
        base_midpoint(4),  # 4: the glue point (Q's center)
        base_vertex(2),  # 5
        m,  # 6
    ]
    side_sets = [
        frozenset({0}),
        frozenset({0, 1}),
        frozenset({1}),
        frozenset({1}),
        frozenset(),
        frozenset({3}),
        frozenset({3, 0}),
    ]
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 6)]
    # the half-turn image shares vertices 3, 4, 5 (as 5, 4, 3)
    mirror_of = {3: 5, 4: 4, 5: 3}
    rho_sides = {0: 2, 1: 3, 2: 0, 3: 1}
    for idx in (0, 1, 2, 6):
        mirror_of[idx] = len(pts)
        pts.append(rho.apply(pts[idx]))
        side_sets.append(frozenset(rho_sides[s] for s in side_sets[idx]))
    for t in list(tris):
        tris.append(tuple(mirror_of[i] for i in t))

    half_turn = rho
    if placement is not None:
        corners = tuple(placement.apply(c) for c in corners)
        sides = tuple(_image_geodesic(g, placement) for g in sides)
        pts = [placement.apply(p) for p in pts]
        half_turn = placement.compose(rho).compose(placement.inverse())

    quad = QuadDomain(
        corners=corners,
        sides=sides,
        center=pts[4],
        half_turn=half_turn,
        placement=placement,
        coarse_points=tuple(pts),
        coarse_triangles=tuple(tris),
        coarse_side_sets=tuple(side_sets),
    )
    _validate_quad(quad)
    return quad


def _points_on(g: Geodesic) -> tuple[complex, complex]:
    """Two nearby interior points on the geodesic."""
    if g.is_diameter:
        return 0.3 * g.direction, -0.3 * g.direction
    inward = -g.center / abs(g.center)
    return (
        g.center + g.radius * inward,
        g.center + g.radius * inward * cmath.exp(0.05j),
    )


def _image_geodesic(g: Geodesic, m: MobiusMap) -> Geodesic:
    p1, p2 = _points_on(g)
    return Geodesic.through(m.apply(p1), m.apply(p2))


def _corner_angle(q: QuadDomain, i: int) -> float:
    v = q.corners[i]
    t_prev = _tangent_at(q.sides[(i - 1) % 4], v)
    t_next = _tangent_at(q.sides[i], v)
    ang = abs(math.remainder(math.atan2(
        (t_next / t_prev).imag, (t_next / t_prev).real
    ), math.pi))
    return min(ang, math.pi - ang)


def _tangent_at(g: Geodesic, z: complex) -> complex:
    if g.is_diameter:
        return g.direction
    t = 1j * (z - g.center)
    return t / abs(t)


def _validate_quad(q: QuadDomain):
    want = (math.pi / 2, math.pi / 4, math.pi / 2, math.pi / 4)
    for i, target in enumerate(want):
        if abs(_corner_angle(q, i) - target) > 1e-9:
            raise ValidationError(
                f"corner {i} angle {_corner_angle(q, i):.12f} != {target:.12f}"
            )
    for i, c in enumerate(q.corners):
        for j in (i, (i - 1) % 4):
            if not q.sides[j].contains(c, tol=1e-9):
                raise ValidationError(f"corner {i} off side {j}")
    # the half-turn maps Q to itself (swapping opposite sides)
    for i in range(4):
        tgt = q.sides[(i + 2) % 4]
        for pt in _points_on(q.sides[i]):
            if not tgt.contains(q.half_turn.apply(pt), tol=1e-9):
                raise ValidationError("half-turn does not swap opposite sides")


class HarmonicField:
    """Discrete harmonic coordinate on a triangulation of Q."""

    def __init__(self, quad, vertices, triangles, values, modulus, mesh_size):
        self.quad = quad
        self.vertices = np.asarray(vertices, dtype=np.float64)
        self.triangles = np.asarray(triangles, dtype=np.int32)
        self.values = np.asarray(values, dtype=np.float64)
        self.modulus = float(modulus)
        self.mesh_size = float(mesh_size)
        self._interp = None
        self._finder = None
        self._planes = None
        self._centroid_tree = None

    @property
    def boundary_roles(self) -> dict:
        free = tuple(
            i for i in range(4)
            if i not in (self.quad.dirichlet0, self.quad.dirichlet1)
        )
        return {
            "u0_side": self.quad.dirichlet0,
            "u1_side": self.quad.dirichlet1,
            "neumann_sides": free,
        }

    def _ensure_interp(self):
        if self._interp is None:
            import matplotlib.tri as mtri

            tri = mtri.Triangulation(
                self.vertices[:, 0], self.vertices[:, 1], self.triangles
            )
            self._finder = mtri.TrapezoidMapTriFinder(tri)
            self._interp = mtri.LinearTriInterpolator(
                tri, self.values, trifinder=self._finder
            )

    def _ensure_planes(self):
        if self._planes is None:
            v, t = self.vertices, self.triangles
            x, y = v[t, 0], v[t, 1]
            u = self.values[t]
            det = (x[:, 1] - x[:, 0]) * (y[:, 2] - y[:, 0]) - (
                x[:, 2] - x[:, 0]
            ) * (y[:, 1] - y[:, 0])
            gx = (
                u[:, 0] * (y[:, 1] - y[:, 2])
                + u[:, 1] * (y[:, 2] - y[:, 0])
                + u[:, 2] * (y[:, 0] - y[:, 1])
            ) / det
            gy = (
                u[:, 0] * (x[:, 2] - x[:, 1])
                + u[:, 1] * (x[:, 0] - x[:, 2])
                + u[:, 2] * (x[:, 1] - x[:, 0])
            ) / det
            cx, cy = x.mean(axis=1), y.mean(axis=1)
            c0 = u.mean(axis=1) - gx * cx - gy * cy
            self._planes = (c0, gx, gy)
            self._centroid_tree = cKDTree(np.column_stack([cx, cy]))

    def interpolate(self, z: complex) -> float:
        """Linear interpolation; points in the thin gap between the mesh
        polygon and the true curved boundary extrapolate from the nearest
        triangle's plane."""
        self._ensure_interp()
        val = self._interp(z.real, z.imag)
        if not np.ma.is_masked(val):
            return float(val)
        self._ensure_planes()
        _, idx = self._centroid_tree.query([z.real, z.imag])
        c0, gx, gy = self._planes
        return float(c0[idx] + gx[idx] * z.real + gy[idx] * z.imag)

    def interpolate_many(self, zs) -> np.ndarray:
        self._ensure_interp()
        zs = np.asarray(zs, dtype=np.complex128)
        vals = self._interp(zs.real, zs.imag)
        mask = np.ma.getmaskarray(vals)
        out = np.asarray(vals.filled(0.0), dtype=np.float64)
        if mask.any():
            self._ensure_planes()
            c0, gx, gy = self._planes
            pts = np.column_stack([zs.real[mask], zs.imag[mask]])
            _, idx = self._centroid_tree.query(pts)
            out[mask] = c0[idx] + gx[idx] * zs.real[mask] + gy[idx] * zs.imag[mask]
        return out


def _refine(points, triangles, side_sets, sides):
    """Uniform 4-way split; edge midpoints on a boundary side are pushed
    onto that side's arc."""
    points = list(points)
    side_sets = list(side_sets)
    midpoint_of = {}

    def midpoint(i, j):
        key = (i, j) if i < j else (j, i)
        if key in midpoint_of:
            return midpoint_of[key]
        z = (points[i] + points[j]) / 2.0
        shared = side_sets[i] & side_sets[j]
        if len(shared) > 1:
            raise ValidationError("mesh edge lies on two sides at once")
        if shared:
            (k,) = shared
            z = _project_onto(sides[k], z)
        idx = len(points)
        points.append(z)
        side_sets.append(shared)
        midpoint_of[key] = idx
        return idx

    new_tris = []
    for a, b, c in triangles:
        ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
        new_tris.extend([(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)])
    return points, new_tris, side_sets


def _project_onto(g: Geodesic, z: complex) -> complex:
    if g.is_diameter:
        u = g.direction
        return u * (u.conjugate() * z).real
    return g.center + g.radius * (z - g.center) / abs(z - g.center)


def solve_field(
    quad: QuadDomain,
    mesh_size: float = 0.01,
    max_triangles: int = 3_000_000,
) -> HarmonicField:
    """Solve the mixed problem on Q at the requested resolution.

    mesh_size is the target maximum Euclidean edge length; the coarse mesh
    is refined until it drops below that.  Placed (non-canonical) quads are
    solved in the canonical frame and carried over by the placement
    isometry, which leaves the modulus exactly invariant.
    """
    if mesh_size <= 0:
        raise ValidationError("mesh_size must be positive")
    if quad.placement is not None:
        base = solve_field(build_quad(), mesh_size, max_triangles)
        moved = quad.placement.apply(
            base.vertices[:, 0] + 1j * base.vertices[:, 1]
        )
        vertices = np.column_stack([moved.real, moved.imag])
        return HarmonicField(
            quad, vertices, base.triangles, base.values, base.modulus, mesh_size
        )

    points = list(quad.coarse_points)
    triangles = list(quad.coarse_triangles)
    side_sets = list(quad.coarse_side_sets)
    for _ in range(32):
        arr = np.asarray(points)
        tri = np.asarray(triangles)
        edges = np.concatenate(
            [arr[tri[:, 1]] - arr[tri[:, 0]], arr[tri[:, 2]] - arr[tri[:, 1]],
             arr[tri[:, 0]] - arr[tri[:, 2]]]
        )
        h = float(np.abs(edges).max())
        if h <= mesh_size:
            break
        if len(triangles) * 4 > max_triangles:
            raise ResourceLimitError(
                f"refinement to mesh_size={mesh_size} exceeds the "
                f"{max_triangles}-triangle budget"
            )
        points, triangles, side_sets = _refine(points, triangles, side_sets, quad.sides)

    v = np.asarray(points, dtype=np.complex128)
    vertices = np.column_stack([v.real, v.imag])
    tris = np.asarray(triangles, dtype=np.int32)

    x, y = vertices[tris, 0], vertices[tris, 1]
    b = np.stack(
        [y[:, 1] - y[:, 2], y[:, 2] - y[:, 0], y[:, 0] - y[:, 1]], axis=1
    )
    c = np.stack(
        [x[:, 2] - x[:, 1], x[:, 0] - x[:, 2], x[:, 1] - x[:, 0]], axis=1
    )
    area2 = x[:, 0] * b[:, 0] + x[:, 1] * b[:, 1] + x[:, 2] * b[:, 2]
    if np.any(area2 <= 0):
        bad = int(np.argmax(area2 <= 0))
        raise ValidationError(
            f"degenerate or flipped triangle {bad} near {points[tris[bad][0]]}"
        )
    ke = (
        b[:, :, None] * b[:, None, :] + c[:, :, None] * c[:, None, :]
    ) / (2.0 * area2)[:, None, None]
    rows = np.repeat(tris, 3, axis=1).ravel()
    cols = np.tile(tris, (1, 3)).ravel()
    n = len(points)
    stiffness = coo_matrix(
        (ke.ravel(), (rows, cols)), shape=(n, n)
    ).tocsr()

    u = np.zeros(n)
    fixed = np.zeros(n, dtype=bool)
    for i, ss in enumerate(side_sets):
        if quad.dirichlet0 in ss:
            fixed[i] = True
            u[i] = 0.0
        elif quad.dirichlet1 in ss:
            fixed[i] = True
            u[i] = 1.0
    free = ~fixed
    rhs = -stiffness[:, fixed] @ u[fixed]
    u[free] = spsolve(stiffness[free][:, free], rhs[free])
    modulus = float(u @ (stiffness @ u))
    return HarmonicField(quad, vertices, tris, u, modulus, mesh_size)


@dataclass(frozen=True)
class FoldResult:
    folded: complex
    sign: int
    offset: int
    reflections: int
    word: tuple[int, ...]  # side indices, in the order applied to the input


def fold(
    p: complex,
    quad: QuadDomain,
    max_reflections: int = 1024,
    strategy: str = "nearest",
) -> FoldResult:
    """Reflect p into Q through Q's side geodesics, tracking how u values
    transport: sides 3 and 1 are level lines (psi = 0 and 1) so reflecting
    across them maps psi to -psi and 2-psi; the Neumann sides leave psi
    unchanged."""
    z = complex(p)
    if abs(z) >= 1.0:
        raise OutsideDiskError("fold is defined on the open disk")
    if hyperbolic_distance(0.0, z) > FOLD_RANGE:
        raise OutOfRangeError("point beyond the supported folding range")
    if strategy not in ("nearest", "first"):
        raise ValidationError("strategy must be 'nearest' or 'first'")

    sign, offset = 1, 0
    word = []
    reflections = [s.reflection() for s in quad.sides]
    for _ in range(max_reflections):
        clear = quad.side_clearances(z)
        violated = [i for i, v in enumerate(clear) if v < -1e-13]
        if not violated:
            return FoldResult(
                folded=z,
                sign=sign,
                offset=offset,
                reflections=len(word),
                word=tuple(word),
            )
        if strategy == "first":
            side = violated[0]
        else:
            side = min(
                violated,
                key=lambda i: hyperbolic_distance(
                    reflections[i].apply(z), quad.center
                ),
            )
        z = reflections[side].apply(z)
        word.append(side)
        if side == quad.dirichlet0:
            sign = -sign
        elif side == quad.dirichlet1:
            sign, offset = -sign, 2 * sign + offset
    raise ResourceLimitError("folding did not terminate within the cap")


def psi(p: complex, field: HarmonicField) -> float:
    """The harmonic coordinate at any disk point within folding range."""
    res = fold(p, field.quad)
    return res.sign * field.interpolate(res.folded) + res.offset


def psi_many(points, field: HarmonicField) -> np.ndarray:
    folds = [fold(complex(p), field.quad) for p in points]
    vals = field.interpolate_many([f.folded for f in folds])
    return np.array(
        [f.sign * v + f.offset for f, v in zip(folds, vals)], dtype=np.float64
    )


def replay_word(result: FoldResult, quad: QuadDomain) -> complex:
    """Apply the recorded reflections to the folded point; returns the
    original input (the word is an involutive chain)."""
    z = result.folded
    for side in reversed(result.word):
        z = quad.sides[side].reflect(z)
    return z


def hyperbolic_area(field: HarmonicField) -> float:
    """Area of the meshed domain under the hyperbolic metric (centroid
    quadrature of the density 4/(1-|z|^2)^2)."""
    v = field.vertices[:, 0] + 1j * field.vertices[:, 1]
    t = field.triangles
    a, b, c = v[t[:, 0]], v[t[:, 1]], v[t[:, 2]]
    doubled = (b - a).real * (c - a).imag - (b - a).imag * (c - a).real
    centroid = (a + b + c) / 3.0
    density = 4.0 / (1.0 - np.abs(centroid) ** 2) ** 2
    return float((0.5 * doubled * density).sum())


def geometry_hash(quad: QuadDomain) -> str:
    payload = json.dumps(
        {
            "corners": [[c.real, c.imag] for c in quad.corners],
            "d0": quad.dirichlet0,
            "d1": quad.dirichlet1,
            "coarse": len(quad.coarse_triangles),
        },
        sort_keys=True,
    ).encode()
    return hashlib.sha256(payload).hexdigest()[:16]


def save_field(field: HarmonicField, path: str):
    header = {
        "formatVersion": _FORMAT_VERSION,
        "geometryHash": geometry_hash(field.quad),
        "meshSize": field.mesh_size,
        "modulus": field.modulus,
        "vertexCount": int(len(field.vertices)),
        "triangleCount": int(len(field.triangles)),
    }
    blob = json.dumps(header, sort_keys=True).encode()
    with open(path, "wb") as fh:
        fh.write(_FORMAT_MAGIC)
        fh.write(struct.pack("<I", len(blob)))
        fh.write(blob)
        fh.write(np.ascontiguousarray(field.vertices, dtype="<f8").tobytes())
        fh.write(np.ascontiguousarray(field.triangles, dtype="<i4").tobytes())
        fh.write(np.ascontiguousarray(field.values, dtype="<f8").tobytes())


def load_field(path: str, quad: QuadDomain | None = None) -> HarmonicField:
    quad = quad or build_quad()
    with open(path, "rb") as fh:
        magic = fh.read(len(_FORMAT_MAGIC))
        if magic != _FORMAT_MAGIC:
            raise ValidationError(f"not a field cache file: bad magic {magic!r}")
        (hlen,) = struct.unpack("<I", fh.read(4))
        header = json.loads(fh.read(hlen))
        if header.get("formatVersion") != _FORMAT_VERSION:
            raise ValidationError(
                f"unsupported cache version {header.get('formatVersion')}"
            )
        if header["geometryHash"] != geometry_hash(quad):
            raise ValidationError("cache was built for a different geometry")
        nv, nt = header["vertexCount"], header["triangleCount"]
        vertices = np.frombuffer(fh.read(nv * 16), dtype="<f8").reshape(nv, 2)
        triangles = np.frombuffer(fh.read(nt * 12), dtype="<i4").reshape(nt, 3)
        values = np.frombuffer(fh.read(nv * 8), dtype="<f8")
    return HarmonicField(
        quad, vertices, triangles, values, header["modulus"], header["meshSize"]
    )


def export_field_json(field: HarmonicField) -> str:
    """Debug mirror of the binary cache layout."""
    return json.dumps(
        {
            "formatVersion": _FORMAT_VERSION,
            "geometryHash": geometry_hash(field.quad),
            "meshSize": field.mesh_size,
            "modulus": field.modulus,
            "vertices": field.vertices.tolist(),
            "triangles": field.triangles.tolist(),
            "values": field.values.tolist(),
        }
    )


def default_cache_path() -> str:
    return os.environ.get(
        CACHE_ENV, os.path.join(os.path.expanduser("~"), ".cache", "pentamap", "field.bin")
    )
