"""Combinatorial types of pentagon linkages and their genus-4 cell complex.

A linkage's juzu is five labeled points on the unit circle.  Generic juzus
(all points distinct) fall into 24 cyclic orders; one coincident pair gives
60 singly degenerate types, two disjoint pairs give 30 doubly degenerate
ones: 114 in total.  Splitting coincident pairs apart defines a graded
partial order whose cells assemble into a closed orientable surface of
genus 4.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass

from .errors import ThreeCoincideError, ValidationError
from .hyperbolic import CirclePoint

Group = tuple[int, ...]
CyclicOrder = tuple[Group, ...]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Juzu:
    """Five labeled unit-circle points; at most two may coincide."""

    points: tuple[CirclePoint, ...]

    def __post_init__(self):
        if len(self.points) != 5:
            raise ValidationError("a juzu has exactly five points")
        pts = tuple(
            p if isinstance(p, CirclePoint) else CirclePoint(p)
            for p in self.points
        )
        object.__setattr__(self, "points", pts)
        _cluster_labels(self.angles(), tol=1e-9)  # raises on triples

    def angles(self) -> tuple[float, ...]:
        return tuple(p.angle for p in self.points)


@dataclass(frozen=True)
class CombinatorialType:
    degeneracy: int
    cyclic_order: CyclicOrder
    index: int

    def __str__(self):
        parts = [
            "".join(map(str, g)) if len(g) == 1 else "{" + ",".join(map(str, g)) + "}"
            for g in self.cyclic_order
        ]
        return f"T{self.index}<" + " ".join(parts) + ">"


def canonical_cycle(groups) -> CyclicOrder:
    """Lexicographically least rotation; each group sorted ascending."""
    gs = tuple(tuple(sorted(g)) for g in groups)
    return min(tuple(gs[(i + k) % len(gs)] for i in range(len(gs))) for k in range(len(gs)))


def _build_tables():
    seen: set[CyclicOrder] = set()
    for perm in itertools.permutations(range(5)):
        seen.add(canonical_cycle([(x,) for x in perm]))
    for pair in itertools.combinations(range(5), 2):
        rest = [x for x in range(5) if x not in pair]
        for arrangement in itertools.permutations(rest):
            seen.add(canonical_cycle([pair] + [(x,) for x in arrangement]))
    for pair1, pair2 in itertools.combinations(itertools.combinations(range(5), 2), 2):
        if set(pair1) & set(pair2):
            continue
        single = next(x for x in range(5) if x not in pair1 and x not in pair2)
        for order in ([pair1, pair2, (single,)], [pair2, pair1, (single,)]):
            seen.add(canonical_cycle(order))
    types = []
    for cyc in sorted(seen, key=lambda c: (5 - len(c), c)):
        types.append(
            CombinatorialType(degeneracy=5 - len(cyc), cyclic_order=cyc, index=len(types))
        )
    return types, {t.cyclic_order: t for t in types}


_TYPES, _TYPE_LOOKUP = _build_tables()


def enumerate_types() -> list[CombinatorialType]:
    """All 114 types: 24 generic, 60 singly and 30 doubly degenerate.

    Indices are grouped by degeneracy (0-23, 24-83, 84-113), so consumers
    that only see a type index can still read off the coincidence count.
    """
    return list(_TYPES)


def type_from_cycle(groups) -> CombinatorialType:
    try:
        return _TYPE_LOOKUP[canonical_cycle(groups)]
    except KeyError:
        raise ValidationError(f"not a valid grouped cyclic order: {groups}") from None


def _cluster_labels(angles, tol: float) -> list[list[int]]:
    """Group labels whose circle positions fall within tol of each other.

    Clusters are maximal chains of consecutive (sorted) angles with gaps
    <= tol, including the wrap-around.  Three labels in one cluster is a
    rejected configuration.
    """
    order = sorted(range(5), key=lambda k: angles[k] % _TWO_PI)
    sorted_angles = [angles[k] % _TWO_PI for k in order]
    gaps = [
        (sorted_angles[(i + 1) % 5] - sorted_angles[i]) % _TWO_PI for i in range(5)
    ]
    if all(g <= tol for g in gaps):
        raise ThreeCoincideError("all five labels coincide")
    # rotate so the list starts right after the largest gap
    start = (max(range(5), key=lambda i: gaps[i]) + 1) % 5
    clusters: list[list[int]] = [[order[start]]]
    for step in range(1, 5):
        i = (start + step) % 5
        if gaps[(i - 1) % 5] <= tol:
            clusters[-1].append(order[i])
        else:
            clusters.append([order[i]])
    for c in clusters:
        if len(c) >= 3:
            raise ThreeCoincideError(f"labels {sorted(c)} coincide")
    return clusters


def classify(j: Juzu, tol: float = 1e-7) -> CombinatorialType:
    """Combinatorial type of a juzu, merging labels within tol radians."""
    if tol <= 0:
        raise ValidationError("tol must be positive")
    clusters = _cluster_labels(j.angles(), tol)
    return type_from_cycle(clusters)


def _split_group(cyc: CyclicOrder, pos: int):
    """The two cyclic orders obtained by pulling apart the pair at pos."""
    a, b = cyc[pos]
    head, tail = cyc[:pos], cyc[pos + 1 :]
    yield head + ((a,), (b,)) + tail
    yield head + ((b,), (a,)) + tail


def hasse_order() -> list[tuple[int, int]]:
    """Covering pairs (lower, upper): degenerate types sit below the types
    reached by moving their coinciding vectors apart."""
    covers = set()
    for t in _TYPES:
        if t.degeneracy == 0:
            continue
        for pos, g in enumerate(t.cyclic_order):
            if len(g) == 2:
                for split in _split_group(t.cyclic_order, pos):
                    covers.add((t.index, _TYPE_LOOKUP[canonical_cycle(split)].index))
    return sorted(covers)


@dataclass(frozen=True)
class CellComplex:
    """Faces are generic types, edges singly and vertices doubly degenerate
    ones; incidence comes from the covering relation."""

    faces: tuple[int, ...]
    edges: tuple[int, ...]
    vertices: tuple[int, ...]
    # per face: its 5 boundary edges in traversal order and the 5 vertices
    # between them (vertex i sits between boundary edges i and i+1)
    face_edge_cycles: dict[int, tuple[int, ...]]
    face_vertex_cycles: dict[int, tuple[int, ...]]
    euler_characteristic: int
    genus: int
    orientable: bool
    connected: bool


def _collapse(cyc: CyclicOrder, i: int, j: int) -> CyclicOrder | None:
    """Merge the singleton groups at positions i and j (cyclically adjacent)."""
    n = len(cyc)
    if (i + 1) % n != j:
        i, j = j, i
    if (i + 1) % n != j or len(cyc[i]) != 1 or len(cyc[j]) != 1:
        return None
    merged = tuple(sorted(cyc[i] + cyc[j]))
    out = [merged]
    k = (j + 1) % n
    while k != i:
        out.append(cyc[k])
        k = (k + 1) % n
    return canonical_cycle(out)


def build_cell_complex() -> CellComplex:
    faces = tuple(t.index for t in _TYPES if t.degeneracy == 0)
    edges = tuple(t.index for t in _TYPES if t.degeneracy == 1)
    vertices = tuple(t.index for t in _TYPES if t.degeneracy == 2)

    face_edge_cycles: dict[int, tuple[int, ...]] = {}
    face_vertex_cycles: dict[int, tuple[int, ...]] = {}
    for fi in faces:
        cyc = _TYPES[fi].cyclic_order
        # side i collapses the adjacent labels (i, i+1); walking the face
        # boundary visits sides in step-two order so consecutive boundary
        # sides involve disjoint pairs
        side = [
            _TYPE_LOOKUP[_collapse(cyc, i, (i + 1) % 5)].index for i in range(5)
        ]
        boundary = [side[(2 * i) % 5] for i in range(5)]
        corners = []
        for i in range(5):
            e1 = _TYPES[boundary[i]].cyclic_order
            e2 = _TYPES[boundary[(i + 1) % 5]].cyclic_order
            p1 = next(g for g in e1 if len(g) == 2)
            p2 = next(g for g in e2 if len(g) == 2)
            single = next(x for x in range(5) if x not in p1 and x not in p2)
            # orient the corner's three groups per the face's cyclic order
            corner = _corner_cycle(cyc, p1, p2, single)
            corners.append(_TYPE_LOOKUP[corner].index)
        face_edge_cycles[fi] = tuple(boundary)
        face_vertex_cycles[fi] = tuple(corners)

    edge_faces: dict[int, list[int]] = {e: [] for e in edges}
    for fi, cycle in face_edge_cycles.items():
        for e in cycle:
            edge_faces[e].append(fi)
    for e, fs in edge_faces.items():
        if len(fs) != 2:
            raise ValidationError(f"edge {e} bounds {len(fs)} faces")

    vertex_faces: dict[int, set[int]] = {v: set() for v in vertices}
    for fi, cycle in face_vertex_cycles.items():
        for v in cycle:
            vertex_faces[v].add(fi)
    for v, fs in vertex_faces.items():
        if len(fs) != 4:
            raise ValidationError(f"vertex {v} has degree {len(fs)}")

    connected = _connected(faces, face_edge_cycles, edge_faces)
    orientable = _orientable(face_edge_cycles, face_vertex_cycles, edge_faces)
    chi = len(vertices) - len(edges) + len(faces)
    return CellComplex(
        faces=faces,
        edges=edges,
        vertices=vertices,
        face_edge_cycles=face_edge_cycles,
        face_vertex_cycles=face_vertex_cycles,
        euler_characteristic=chi,
        genus=(2 - chi) // 2,
        orientable=orientable,
        connected=connected,
    )


def _corner_cycle(face_cyc: CyclicOrder, p1, p2, single):
    """Doubly degenerate corner between two boundary edges of a face,
    with its three groups in the cyclic order induced by the face."""
    labels = [g[0] for g in face_cyc]
    pos = {x: i for i, x in enumerate(labels)}
    # collapse both pairs: each pair occupies the earlier of its positions
    items = [(min(pos[p1[0]], pos[p1[1]]), tuple(sorted(p1))),
             (min(pos[p2[0]], pos[p2[1]]), tuple(sorted(p2))),
             (pos[single], (single,))]
    items.sort()
    return canonical_cycle([g for _, g in items])


def _connected(faces, face_edge_cycles, edge_faces) -> bool:
    seen = {faces[0]}
    stack = [faces[0]]
    while stack:
        f = stack.pop()
        for e in face_edge_cycles[f]:
            for g in edge_faces[e]:
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
    return len(seen) == len(faces)


def _orientable(face_edge_cycles, face_vertex_cycles, edge_faces) -> bool:
    """Try to orient every face so shared edges are traversed oppositely.

    Boundary edge i of a face runs from corner i-1 to corner i; an edge's
    traversal is recorded as that ordered corner pair.
    """

    def darts(fi):
        es, vs = face_edge_cycles[fi], face_vertex_cycles[fi]
        return {es[i]: (vs[(i - 1) % 5], vs[i]) for i in range(5)}

    sign: dict[int, int] = {}
    first = next(iter(face_edge_cycles))
    sign[first] = 1
    stack = [first]
    while stack:
        f = stack.pop()
        df = darts(f)
        for e, (u, v) in df.items():
            for g in edge_faces[e]:
                if g == f:
                    continue
                du, dv = darts(g)[e]
                # aligned orientations traverse shared edges oppositely
                needed = sign[f] if (du, dv) == (v, u) else -sign[f]
                if (du, dv) not in ((v, u), (u, v)):
                    # corner pair can coincide reversed only
                    raise ValidationError("boundary darts disagree")
                if g not in sign:
                    sign[g] = needed
                    stack.append(g)
                elif sign[g] != needed:
                    return False
    return True


def naive_realize(alpha: float, beta: float, branch: int = 0):
    """Pin p_0=0, p_1=1, slide p_2 and p_4 by the two angles, and close up
    through a circle-circle intersection for p_3.  Returns None when the
    two unit circles around p_2 and p_4 miss each other."""
    from .linkage import Linkage

    if branch not in (0, 1):
        raise ValidationError("branch must be 0 or 1")
    p0, p1 = 0.0 + 0.0j, 1.0 + 0.0j
    p2 = p1 + complex(math.cos(alpha), math.sin(alpha))
    p4 = p0 - complex(math.cos(beta), math.sin(beta))
    d = abs(p2 - p4)
    if d > 2.0 + 1e-9 or d < 1e-15:
        return None
    mid = (p2 + p4) / 2.0
    half = math.sqrt(max(0.0, 1.0 - (d / 2.0) ** 2))
    normal = 1j * (p2 - p4) / d
    p3 = mid + (half if branch == 0 else -half) * normal
    vertices = (p0, p1, p2, p3, p4)
    return Linkage.from_vertices(vertices)


def type_table_json() -> str:
    """JSON export: index, degeneracy, cyclic order, Hasse neighbors."""
    above: dict[int, list[int]] = {t.index: [] for t in _TYPES}
    below: dict[int, list[int]] = {t.index: [] for t in _TYPES}
    for lo, hi in hasse_order():
        above[lo].append(hi)
        below[hi].append(lo)
    rows = [
        {
            "index": t.index,
            "degeneracy": t.degeneracy,
            "cyclicOrder": [list(g) for g in t.cyclic_order],
            "above": sorted(above[t.index]),
            "below": sorted(below[t.index]),
        }
        for t in _TYPES
    ]
    return json.dumps(rows, indent=2)
