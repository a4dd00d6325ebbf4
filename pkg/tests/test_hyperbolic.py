import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pentamap.errors import OutsideDiskError, ValidationError
from pentamap.hyperbolic import (
    ALPHA,
    DiskPoint,
    Geodesic,
    MobiusMap,
    central_reflection,
    disk_automorphism,
    hyperbolic_distance,
    point_reflection,
    rotation,
)
from pentamap.tiling import generators, s_reflection


def disk_points(max_radius=0.95):
    return st.tuples(
        st.floats(0, max_radius), st.floats(0, 2 * math.pi)
    ).map(lambda r_t: r_t[0] * cmath.exp(1j * r_t[1]))


def random_disk(rng, max_radius=0.9):
    r = max_radius * math.sqrt(rng.random())
    return r * cmath.exp(2j * math.pi * rng.random())


class TestDiskPoint:
    def test_accepts_interior(self):
        assert DiskPoint(0.3 + 0.4j).z == 0.3 + 0.4j

    def test_rejects_boundary_and_exterior(self):
        with pytest.raises(OutsideDiskError):
            DiskPoint(1.0)
        with pytest.raises(OutsideDiskError):
            DiskPoint(1.2j)


class TestMobiusMap:
    def test_identity(self):
        m = MobiusMap.identity()
        assert m.apply(0.3 + 0.1j) == 0.3 + 0.1j

    def test_disk_automorphism_sends_center_to_zero(self):
        # mu_c(z) = (z - c) / (1 - conj(c) z) up to scale
        mu = disk_automorphism(0.4)
        assert abs(mu.apply(0.4)) < 1e-14
        assert abs(mu.apply(0.0) - (-0.4)) < 1e-14

    def test_rotation(self):
        rot = rotation(math.pi / 2)
        assert abs(rot.apply(0.5) - 0.5j) < 1e-14

    def test_determinant_normalized(self):
        m = MobiusMap(3.0, 1.0, 1.0, 3.0)
        det = m.a * m.d - m.b * m.c
        assert abs(abs(det) - 1.0) < 1e-12

    def test_singular_rejected(self):
        with pytest.raises(ValidationError):
            MobiusMap(1.0, 1.0, 1.0, 1.0)

    def test_compose_matches_pointwise(self):
        rng = random.Random(7)
        maps = [
            disk_automorphism(0.3 + 0.2j),
            rotation(1.1),
            central_reflection(2),
            s_reflection(),
            point_reflection(0.1 - 0.25j),
        ]
        for f in maps:
            for g in maps:
                fg = f.compose(g)
                for _ in range(20):
                    z = random_disk(rng)
                    assert abs(fg.apply(z) - f.apply(g.apply(z))) < 1e-12

    def test_inverse(self):
        rng = random.Random(11)
        maps = [
            disk_automorphism(0.3 + 0.2j).compose(rotation(0.7)),
            s_reflection(),
            central_reflection(3).compose(disk_automorphism(-0.2j)),
        ]
        for m in maps:
            inv = m.inverse()
            for _ in range(20):
                z = random_disk(rng)
                assert abs(inv.apply(m.apply(z)) - z) < 1e-12

    def test_call_preserves_point_type(self):
        m = rotation(0.3)
        p = m(DiskPoint(0.5))
        assert isinstance(p, DiskPoint)

    def test_central_reflection_is_antiholomorphic_involution(self):
        r2 = central_reflection(2)
        assert r2.conjugating
        z = 0.3 + 0.45j
        assert abs(r2.apply(r2.apply(z)) - z) < 1e-14
        # mirror axis at angle pi/2 + 2*pi/5 stays fixed
        axis = 0.4 * cmath.exp(1j * (math.pi / 2 + 2 * ALPHA / 2))
        assert abs(r2.apply(axis) - axis) < 1e-14

    def test_point_reflection_fixes_center(self):
        w = 0.31 - 0.12j
        sigma = point_reflection(w)
        assert abs(sigma.apply(w) - w) < 1e-13
        z = 0.05 + 0.4j
        # an involution exchanging z with its image
        assert abs(sigma.apply(sigma.apply(z)) - z) < 1e-12
        # midpoint property: w is the hyperbolic midpoint
        d1 = hyperbolic_distance(w, z)
        d2 = hyperbolic_distance(w, sigma.apply(z))
        assert abs(d1 - d2) < 1e-12


class TestDistance:
    def test_origin_to_tanh_half(self):
        # d(0, tanh(1/2)) = 1 by definition of the disk metric
        assert abs(hyperbolic_distance(0.0, math.tanh(0.5)) - 1.0) < 1e-14

    def test_symmetry_and_triangle(self):
        rng = random.Random(3)
        for _ in range(50):
            a, b, c = (random_disk(rng) for _ in range(3))
            assert abs(
                hyperbolic_distance(a, b) - hyperbolic_distance(b, a)
            ) < 1e-12
            assert hyperbolic_distance(a, c) <= (
                hyperbolic_distance(a, b) + hyperbolic_distance(b, c) + 1e-12
            )

    @given(disk_points(), disk_points())
    @settings(max_examples=60, deadline=None)
    def test_rotation_invariance(self, p, q):
        rot = rotation(0.83)
        d0 = hyperbolic_distance(p, q)
        d1 = hyperbolic_distance(rot.apply(p), rot.apply(q))
        assert abs(d0 - d1) < 1e-10


class TestGeodesic:
    def test_diameter_through_origin(self):
        g = Geodesic.through(0.2j, -0.5j)
        assert g.is_diameter
        assert abs(g.reflect(0.3 + 0.1j) - (-0.3 + 0.1j)) < 1e-13

    def test_circle_inversion_known_value(self):
        # circle centered 2 with radius sqrt(3) is orthogonal to the unit
        # circle; inversion sends 0 to 2 - 3/2 = 1/2
        g = Geodesic.circle(2.0, math.sqrt(3.0))
        assert abs(g.reflect(0.0) - 0.5) < 1e-14

    def test_orthogonality_validated(self):
        with pytest.raises(ValidationError):
            Geodesic.circle(2.0, 1.0)

    def test_through_points_lie_on_it(self):
        rng = random.Random(5)
        for _ in range(40):
            p, q = random_disk(rng), random_disk(rng)
            if abs(p - q) < 1e-3:
                continue
            g = Geodesic.through(p, q)
            assert g.contains(p, tol=1e-9)
            assert g.contains(q, tol=1e-9)

    def test_reflection_is_isometric_involution(self):
        g = Geodesic.through(0.3 + 0.1j, 0.1 - 0.4j)
        m = g.reflection()
        assert m.conjugating
        rng = random.Random(9)
        for _ in range(30):
            z, w = random_disk(rng), random_disk(rng)
            assert abs(m.apply(m.apply(z)) - z) < 1e-12
            assert abs(
                hyperbolic_distance(m.apply(z), m.apply(w))
                - hyperbolic_distance(z, w)
            ) < 1e-11

    def test_ideal_endpoints_on_unit_circle(self):
        g = Geodesic.through(0.3 + 0.1j, 0.1 - 0.4j)
        u, v = g.ideal_endpoints()
        assert abs(abs(u) - 1) < 1e-12 and abs(abs(v) - 1) < 1e-12


@pytest.fixture()
def gens():
    return generators()


class TestGroupRelations:
    """The six defining relations of the tiling symmetry group."""

    def _is_identity(self, m, rng, n=100, tol=1e-10):
        for _ in range(n):
            z = random_disk(rng)
            if abs(m.apply(z) - z) > tol:
                return False
        return True

    def test_involutions(self, gens):
        rng = random.Random(21)
        for name in ("s", "r0", "r1", "r2", "r3", "r4"):
            g = gens[name]
            assert self._is_identity(g.compose(g), rng), name

    def test_s_r0_commute(self, gens):
        rng = random.Random(22)
        sr0 = gens["s"].compose(gens["r0"])
        assert self._is_identity(sr0.compose(sr0), rng)

    def test_s_r1_order_four(self, gens):
        rng = random.Random(23)
        sr1 = gens["s"].compose(gens["r1"])
        m = sr1
        for _ in range(3):
            m = m.compose(sr1)
        assert self._is_identity(m, rng)

    def test_r0_r1_order_five(self, gens):
        rng = random.Random(24)
        r0r1 = gens["r0"].compose(gens["r1"])
        m = r0r1
        for _ in range(4):
            m = m.compose(r0r1)
        assert self._is_identity(m, rng)

    def test_rotation_subgroup(self, gens):
        # r1 r0 rotates by 2*pi/5 about the origin
        rho = gens["r1"].compose(gens["r0"])
        z = 0.37 - 0.22j
        assert abs(rho.apply(z) - z * cmath.exp(1j * ALPHA)) < 1e-12
