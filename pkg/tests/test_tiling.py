import cmath
import math

import pytest

from pentamap.errors import OutOfRangeError, ResourceLimitError
from pentamap.hyperbolic import hyperbolic_distance
from pentamap.tiling import (
    ALPHA,
    CIRCUMRADIUS,
    INRADIUS,
    VERTEX_RADIUS,
    base_edge_pair,
    base_midpoint,
    base_pentagon,
    base_vertex,
    generate_tiling,
    generators,
    side_line,
)


@pytest.fixture(scope="module")
def tiling():
    return generate_tiling(radius=2.6)


class TestBasePentagon:
    def test_first_vertex_on_positive_imaginary_axis(self):
        v = base_pentagon()[0]
        assert abs(v.real) < 1e-15 and v.imag > 0

    def test_circumradius_value(self):
        # cosh(R) = cot(pi/5), forced by the right angles
        assert abs(math.cosh(CIRCUMRADIUS) - 1.0 / math.tan(math.pi / 5)) < 1e-14
        assert abs(abs(base_pentagon()[0]) - math.tanh(CIRCUMRADIUS / 2)) < 1e-15
        assert abs(VERTEX_RADIUS - 0.3979754) < 1e-6

    def test_interior_angles_are_right(self):
        # tangents of adjacent side circles at the shared vertex
        for j in range(5):
            a = side_line(j)
            b = side_line((j + 1) % 5)
            v = base_vertex((3 + j) % 5)
            ta = 1j * (v - a.center) if not a.is_diameter else a.direction
            tb = 1j * (v - b.center) if not b.is_diameter else b.direction
            ang = abs(cmath.phase(tb / ta))
            ang = min(ang, math.pi - ang)
            assert abs(ang - math.pi / 2) < 1e-9

    def test_midpoints_on_sides(self):
        for j in range(5):
            m = base_midpoint(j)
            assert side_line(j).contains(m, tol=1e-12)
            assert abs(abs(m) - math.tanh(INRADIUS / 2)) < 1e-15

    def test_equilateral(self):
        vs = base_pentagon()
        lengths = {
            round(hyperbolic_distance(vs[j], vs[(j + 1) % 5]), 12)
            for j in range(5)
        }
        assert len(lengths) == 1


class TestGeneration:
    def test_central_face_identity(self, tiling):
        base = tiling.face_at(0.0)
        assert base.address.word == ()
        assert base.parity == 0
        assert base.perm == (0, 1, 2, 3, 4)

    def test_face_across_s_edge(self, tiling):
        s_face_center = generators()["s"].apply(0.0)
        f = tiling.face_at(s_face_center)
        assert f.address.word == ("s",)
        # crossing the bottom side swaps labels 2 and 3
        assert f.perm == (0, 1, 3, 2, 4)
        assert f.parity == 1

    def test_transform_composes_word(self, tiling):
        gens = generators()
        for cell in tiling.faces + tiling.edges + tiling.vertices:
            addr = cell.address
            m = None
            for sym in addr.word:
                m = gens[sym] if m is None else m.compose(gens[sym])
            if m is None:
                continue
            for z in (0.0, 0.31, 0.11 - 0.2j):
                assert abs(m.apply(z) - addr.transform.apply(z)) < 1e-10

    def test_deterministic(self):
        t1 = generate_tiling(radius=1.8)
        t2 = generate_tiling(radius=1.8)
        assert [f.address.word for f in t1.faces] == [
            f.address.word for f in t2.faces
        ]
        assert [f.center for f in t1.faces] == [f.center for f in t2.faces]

    def test_adjacent_faces_opposite_parity(self, tiling):
        for e in tiling.edges:
            if len(e.face_keys) == 2:
                f1 = tiling._face_by_key[e.face_keys[0]]
                f2 = tiling._face_by_key[e.face_keys[1]]
                assert f1.parity != f2.parity

    def test_four_faces_per_interior_vertex(self, tiling):
        interior = [
            v
            for v in tiling.vertices
            if hyperbolic_distance(0, v.point) < tiling.radius - CIRCUMRADIUS
        ]
        assert interior
        for v in interior:
            assert len(v.face_keys) == 4

    def test_edge_pair_well_defined(self, tiling):
        # generation raises on holonomy mismatch; spot-check values here
        base_edges = {
            tuple(sorted(base_edge_pair(j))) for j in range(5)
        }
        assert base_edges == {(2, 3), (0, 4), (1, 2), (3, 4), (0, 1)}
        for e in tiling.edges:
            assert e.pair is not None
            assert len(set(e.pair)) == 2

    def test_perm_transport_around_vertex_closes(self, tiling):
        # crossing the four edges around a vertex returns the identity:
        # the two lines through the vertex carry the same two pairs
        v = base_vertex(0)
        lines = set()
        for e in tiling.edges:
            if any(abs(p - v) < 1e-9 for p in e.endpoints):
                lines.add(e.pair)
        assert len(lines) == 2
        a, b = lines
        assert set(a).isdisjoint(set(b)) or a == b
        # disjoint pairs commute, so the product over the 4-cycle is trivial
        assert set(a).isdisjoint(set(b))

    def test_face_budget(self):
        with pytest.raises(ResourceLimitError):
            generate_tiling(radius=2.6, max_cells=10)

    def test_fundamental_block_within_word_length_8(self):
        t = generate_tiling(radius=4.2, max_cells=100000)
        cycles = set()
        for f in t.faces:
            if len(f.address.word) <= 8:
                seq = f.perm
                rots = [tuple(seq[(i + k) % 5] for i in range(5)) for k in range(5)]
                cycles.add(min(rots))
        assert len(cycles) == 24


class TestLocate:
    def test_center_is_central_face(self, tiling):
        res = tiling.locate(0.05 + 0.02j)
        assert res.address.kind == "face"
        assert res.address.word == ()

    def test_bottom_edge_midpoint_resolves_to_edge(self, tiling):
        res = tiling.locate(base_midpoint(0))
        assert res.address.kind == "edge"
        assert res.address.word == ()

    def test_vertex_resolves_to_vertex(self, tiling):
        res = tiling.locate(base_vertex(0))
        assert res.address.kind == "vertex"

    def test_triangle_sector_range(self, tiling):
        for k in range(10):
            z = 0.2 * cmath.exp(1j * (0.1 + k * 0.6))
            res = tiling.locate(z)
            assert 0 <= res.triangle <= 9

    def test_out_of_range(self, tiling):
        with pytest.raises(OutOfRangeError):
            tiling.locate(0.9999 * cmath.exp(0.3j))

    def test_tie_breaks_lexicographic(self, tiling):
        # a point deep inside the s-face but reflected into two distant
        # candidates never ties; instead check midpoint tie resolves to the
        # edge address whose word is minimal (the base edge has empty word)
        res = tiling.locate(base_midpoint(0))
        assert res.address.word == ()
