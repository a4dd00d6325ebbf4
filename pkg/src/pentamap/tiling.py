"""Right-angled pentagon tiling of the disk and its cell addressing.

The base pentagon is centered at the origin with one vertex on the positive
imaginary axis; four pentagons meet at every vertex.  The symmetry group is
generated by the five central reflections r_k (mirror through the axis at
angle pi/2 + k*pi/5) together with s, the reflection across the line
supporting the bottom side (the side perpendicular to r_0's mirror).

Each pentagon side line carries a transposition of the five linkage labels;
crossing the line swaps that pair.  The base bottom side swaps (2,3) and
rotating a side by 72 degrees shifts its pair by 2.
"""

from __future__ import annotations

import cmath
import math
from collections import deque
from dataclasses import dataclass, field

from .errors import OutOfRangeError, ResourceLimitError, ValidationError
from .hyperbolic import (
    ALPHA,
    Geodesic,
    MobiusMap,
    central_reflection,
    hyperbolic_distance,
)

GENERATOR_ORDER = ("s", "r0", "r1", "r2", "r3", "r4")

# Right angles at the vertices force cosh(circumradius) = cot(pi/5);
# cosh(inradius) = cos(pi/4)/sin(pi/5), cosh(halfedge) = cos(pi/5)/sin(pi/4),
# consistent via cosh(circum) = cosh(in) * cosh(halfedge).
CIRCUMRADIUS = math.acosh(1.0 / math.tan(math.pi / 5.0))
INRADIUS = math.acosh(math.cos(math.pi / 4.0) / math.sin(math.pi / 5.0))
HALF_EDGE = math.acosh(math.cos(math.pi / 5.0) / math.sin(math.pi / 4.0))
VERTEX_RADIUS = math.tanh(CIRCUMRADIUS / 2.0)
MIDPOINT_RADIUS = math.tanh(INRADIUS / 2.0)

_QUANTUM = 1e-9


def base_vertex(j: int) -> complex:
    """Vertex j of the base pentagon, at angle 90 + 72*j degrees."""
    return VERTEX_RADIUS * cmath.exp(1j * (math.pi / 2.0 + j * ALPHA))


def base_midpoint(j: int) -> complex:
    """Midpoint of side j, at angle 270 + 72*j degrees."""
    return MIDPOINT_RADIUS * cmath.exp(1j * (3.0 * math.pi / 2.0 + j * ALPHA))


def base_pentagon() -> list[complex]:
    """The five vertices of the base pentagon."""
    return [base_vertex(j) for j in range(5)]


def side_line(j: int) -> Geodesic:
    """Geodesic supporting side j (between vertices 2+j and 3+j)."""
    return Geodesic.through(base_vertex((2 + j) % 5), base_vertex((3 + j) % 5))


def s_reflection() -> MobiusMap:
    """Reflection across the bottom side line; swaps labels 2 and 3."""
    return side_line(0).reflection()


def generators() -> dict[str, MobiusMap]:
    gens: dict[str, MobiusMap] = {"s": s_reflection()}
    for k in range(5):
        gens[f"r{k}"] = central_reflection(k)
    return gens


def base_edge_pair(j: int) -> tuple[int, int]:
    """Label pair swapped across the base side-j line."""
    return ((2 + 2 * j) % 5, (3 + 2 * j) % 5)


def _key(z: complex) -> tuple[int, int]:
    return (round(z.real / _QUANTUM), round(z.imag / _QUANTUM))


@dataclass(frozen=True)
class TileAddress:
    word: tuple[str, ...]
    transform: MobiusMap
    kind: str  # "face" | "edge" | "vertex"


@dataclass
class Face:
    address: TileAddress
    center: complex
    parity: int = 0
    perm: tuple[int, ...] | None = None
    tree_transform: MobiusMap | None = None
    edge_keys: list[tuple[int, int]] = field(default_factory=list)
    vertex_keys: list[tuple[int, int]] = field(default_factory=list)

    @property
    def label_cycle(self) -> tuple[int, ...]:
        """Juzu labels in circle order for interior points of this face."""
        return self.perm


@dataclass
class Edge:
    address: TileAddress
    midpoint: complex
    line: Geodesic
    endpoints: tuple[complex, complex]
    pair: tuple[int, int] | None = None
    face_keys: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class Vertex:
    address: TileAddress
    point: complex
    face_keys: list[tuple[int, int]] = field(default_factory=list)


@dataclass
class LocateResult:
    address: TileAddress
    face: Face
    triangle: int


class Tiling:
    def __init__(self, radius: float, faces, edges, vertices):
        self.radius = radius
        self.faces: list[Face] = faces
        self.edges: list[Edge] = edges
        self.vertices: list[Vertex] = vertices
        self._face_by_key = {_key(f.center): f for f in faces}
        self._edge_by_key = {_key(e.midpoint): e for e in edges}
        self._vertex_by_key = {_key(v.point): v for v in vertices}

    def face_at(self, center: complex) -> Face | None:
        return self._face_by_key.get(_key(center))

    def locate(self, p: complex, tol: float = 1e-9) -> LocateResult:
        """Cell containing p; boundary points resolve to the lower cell.

        Vertex and edge hits (within tol) return that cell's address; the
        reported face is the nearest one (lexicographically smallest on ties)
        and the triangle index is its barycentric sector 0..9.
        """
        p = complex(p)
        if hyperbolic_distance(0.0, p) > self.radius + CIRCUMRADIUS:
            raise OutOfRangeError("point beyond the generated tiling radius")
        ranked = sorted(
            self.faces,
            key=lambda f: (
                round(hyperbolic_distance(p, f.center) / tol) * tol,
                len(f.address.word),
                f.address.word,
            ),
        )
        face = ranked[0]
        if hyperbolic_distance(p, face.center) > CIRCUMRADIUS + tol:
            raise OutOfRangeError("point beyond the generated tiling radius")
        w = face.tree_transform.inverse().apply(p)
        theta = cmath.phase(w) - math.pi / 2.0
        sector = int(math.floor((theta % (2.0 * math.pi)) / (ALPHA / 2.0))) % 10
        address = face.address
        for v in self.vertices:
            if hyperbolic_distance(p, v.point) <= tol:
                address = v.address
                break
        else:
            best_edge = None
            best_d = tol
            for e in self.edges:
                d = 0.5 * hyperbolic_distance(p, e.line.reflect(p)) if abs(
                    e.line.signed_value(p)
                ) < 0.1 else 1.0
                if d < best_d and hyperbolic_distance(p, e.midpoint) <= INRADIUS + tol:
                    best_edge, best_d = e, d
            if best_edge is not None:
                address = best_edge.address
        return LocateResult(address=address, face=face, triangle=sector)

    def cell_label_permutation(self, addr: TileAddress) -> tuple[int, ...]:
        """Juzu-label permutation accumulated along edge crossings to a cell.

        For a face: the relabeling P with label l renamed to P[l] relative to
        the central face.  For an edge: the transposition swapped when
        crossing it.
        """
        if addr.kind == "face":
            f = self._face_by_key.get(_key(addr.transform.apply(0.0)))
            if f is None or f.perm is None:
                raise OutOfRangeError("face not in the generated tiling")
            return f.perm
        if addr.kind == "edge":
            e = self._edge_by_key.get(_key(addr.transform.apply(base_midpoint(0))))
            if e is None or e.pair is None:
                raise OutOfRangeError("edge not in the generated tiling")
            a, b = e.pair
            perm = list(range(5))
            perm[a], perm[b] = b, a
            return tuple(perm)
        raise ValidationError("label permutation is defined for faces and edges")


def _element_bfs(radius_cut: float, max_elements: int):
    gens = generators()
    identity = MobiusMap.identity()
    start = ((), identity)
    seen = {identity.probe_signature(): start}
    order = [start]
    queue = deque([start])
    while queue:
        word, g = queue.popleft()
        if hyperbolic_distance(0.0, g.apply(0.0)) > radius_cut:
            continue
        for sym in GENERATOR_ORDER:
            g2 = g.compose(gens[sym])
            key = g2.probe_signature()
            if key in seen:
                continue
            item = (word + (sym,), g2)
            seen[key] = item
            order.append(item)
            queue.append(item)
            if len(order) > max_elements:
                raise ResourceLimitError("group element budget exceeded")
    return order


def generate_tiling(radius: float = 2.5, max_cells: int = 20000) -> Tiling:
    """All faces with center within hyperbolic `radius`, plus their edges
    and vertices, with deterministic shortlex addresses."""
    margin = CIRCUMRADIUS + INRADIUS + 1.0
    elements = _element_bfs(radius + margin, max_elements=200 * max_cells)

    faces: dict[tuple[int, int], Face] = {}
    for word, g in elements:
        c = g.apply(0.0)
        if hyperbolic_distance(0.0, c) <= radius + 1e-9:
            k = _key(c)
            if k not in faces:
                faces[k] = Face(address=TileAddress(word, g, "face"), center=c)
                if len(faces) > max_cells:
                    raise ResourceLimitError("face budget exceeded")

    # Transport permutations, parity, and edge pairs over the face graph.
    side_reflections = [side_line(j).reflection() for j in range(5)]
    base = faces[_key(0.0)]
    base.perm = (0, 1, 2, 3, 4)
    base.parity = 0
    base.tree_transform = MobiusMap.identity()
    edges: dict[tuple[int, int], Edge] = {}
    vertices: dict[tuple[int, int], Vertex] = {}
    queue = deque([base])
    while queue:
        f = queue.popleft()
        g = f.tree_transform
        for j in range(5):
            mid = g.apply(base_midpoint(j))
            ek = _key(mid)
            a0, b0 = base_edge_pair(j)
            pair = tuple(sorted((f.perm[a0], f.perm[b0])))
            va = g.apply(base_vertex((2 + j) % 5))
            vb = g.apply(base_vertex((3 + j) % 5))
            if ek not in edges:
                edges[ek] = Edge(
                    address=None,
                    midpoint=mid,
                    line=Geodesic.through(va, vb),
                    endpoints=(va, vb),
                    pair=pair,
                )
            elif edges[ek].pair != pair:
                raise ValidationError("inconsistent label transport (holonomy)")
            if _key(f.center) not in edges[ek].face_keys:
                edges[ek].face_keys.append(_key(f.center))
            for v in (va, vb):
                vk = _key(v)
                if vk not in vertices:
                    vertices[vk] = Vertex(address=None, point=v)
                if _key(f.center) not in vertices[vk].face_keys:
                    vertices[vk].face_keys.append(_key(f.center))
            if ek not in f.edge_keys:
                f.edge_keys.append(ek)
            nb_center = g.apply(side_reflections[j].apply(0.0))
            nf = faces.get(_key(nb_center))
            if nf is not None and nf.perm is None:
                swap = {pair[0]: pair[1], pair[1]: pair[0]}
                nf.perm = tuple(swap.get(x, x) for x in f.perm)
                nf.parity = 1 - f.parity
                nf.tree_transform = g.compose(side_reflections[j])
                queue.append(nf)
        f.vertex_keys = [_key(g.apply(base_vertex(m))) for m in range(5)]

    unreached = [f for f in faces.values() if f.perm is None]
    if unreached:
        raise ValidationError("face graph within radius is not connected")

    # Canonical shortlex addresses for edges and vertices.
    m0, v0 = base_midpoint(0), base_vertex(0)
    for word, g in elements:
        ek = _key(g.apply(m0))
        if ek in edges and edges[ek].address is None:
            edges[ek].address = TileAddress(word, g, "edge")
        vk = _key(g.apply(v0))
        if vk in vertices and vertices[vk].address is None:
            vertices[vk].address = TileAddress(word, g, "vertex")

    # Fringe cells the element sweep missed: extend the owning face's
    # canonical word by pentagon rotations (r1 r0 = 72 degree turn).
    gens = generators()
    rho_word = ("r1", "r0")
    for cell_map, seed, kind in ((edges, m0, "edge"), (vertices, v0, "vertex")):
        for ck, cell in cell_map.items():
            if cell.address is not None:
                continue
            owner = faces[cell.face_keys[0]]
            g = owner.address.transform
            word = owner.address.word
            for _ in range(5):
                if _key(g.apply(seed)) == ck:
                    cell.address = TileAddress(word, g, kind)
                    break
                g = g.compose(gens["r1"]).compose(gens["r0"])
                word = word + rho_word
            if cell.address is None:
                raise ValidationError(f"could not address a fringe {kind}")

    return Tiling(radius, list(faces.values()), list(edges.values()), list(vertices.values()))
