"""Poincare disk model: points, Mobius maps, geodesics, reflections.

Maps are represented projectively by 2x2 complex matrices (a, b; c, d),
optionally precomposed with complex conjugation for orientation-reversing
isometries:

    m(z) = (a*w + b) / (c*w + d),   w = conj(z) if m.conjugating else z

Entries are normalized to |ad - bc| = 1 on construction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import OutsideDiskError, ValidationError

ALPHA = 2.0 * math.pi / 5.0

EPSILON = 1e-12

ComplexLike = complex


def _as_complex(p: object) -> complex:
    if isinstance(p, DiskPoint) or isinstance(p, CirclePoint):
        return p.z
    return complex(p)


class DiskPoint:
    """Point strictly inside the unit disk."""

    __slots__ = ("z",)

    def __init__(self, z: ComplexLike):
        z = complex(z)
        if abs(z) >= 1.0:
            raise OutsideDiskError(f"|z| = {abs(z)!r} is not < 1")
        self.z = z

    def __repr__(self) -> str:
        return f"DiskPoint({self.z!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DiskPoint) and self.z == other.z

    def __hash__(self) -> int:
        return hash(("DiskPoint", self.z))


class CirclePoint:
    """Point on the unit circle; renormalized so |z| = 1 exactly."""

    __slots__ = ("z",)

    def __init__(self, z: ComplexLike):
        z = complex(z)
        r = abs(z)
        if r == 0.0:
            raise ValidationError("cannot normalize 0 onto the unit circle")
        self.z = z / r

    @property
    def angle(self) -> float:
        return cmath.phase(self.z)

    def __repr__(self) -> str:
        return f"CirclePoint({self.z!r})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CirclePoint) and self.z == other.z

    def __hash__(self) -> int:
        return hash(("CirclePoint", self.z))


@dataclass(frozen=True)
class MobiusMap:
    """Disk isometry, holomorphic or (with conjugating=True) anti-holomorphic."""

    a: complex
    b: complex
    c: complex
    d: complex
    conjugating: bool = False

    def __post_init__(self):
        det = self.a * self.d - self.b * self.c
        scale = abs(det)
        if scale < EPSILON:
            raise ValidationError("degenerate matrix: |ad - bc| ~ 0")
        s = 1.0 / math.sqrt(scale)
        object.__setattr__(self, "a", self.a * s)
        object.__setattr__(self, "b", self.b * s)
        object.__setattr__(self, "c", self.c * s)
        object.__setattr__(self, "d", self.d * s)

    @staticmethod
    def identity() -> "MobiusMap":
        return MobiusMap(1, 0, 0, 1)

    def apply(self, z: complex) -> complex:
        w = z.conjugate() if self.conjugating else z
        return (self.a * w + self.b) / (self.c * w + self.d)

    def __call__(self, p):
        """Apply to a raw complex, DiskPoint, or CirclePoint (class preserved)."""
        if isinstance(p, DiskPoint):
            return DiskPoint(self.apply(p.z))
        if isinstance(p, CirclePoint):
            return CirclePoint(self.apply(p.z))
        return self.apply(complex(p))

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other: (self.compose(other))(z) = self(other(z))."""
        if self.conjugating:
            a2, b2 = other.a.conjugate(), other.b.conjugate()
            c2, d2 = other.c.conjugate(), other.d.conjugate()
        else:
            a2, b2, c2, d2 = other.a, other.b, other.c, other.d
        return MobiusMap(
            self.a * a2 + self.b * c2,
            self.a * b2 + self.b * d2,
            self.c * a2 + self.d * c2,
            self.c * b2 + self.d * d2,
            conjugating=self.conjugating ^ other.conjugating,
        )

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return self.compose(other)

    def inverse(self) -> "MobiusMap":
        a, b, c, d = self.d, -self.b, -self.c, self.a
        if self.conjugating:
            a, b, c, d = a.conjugate(), b.conjugate(), c.conjugate(), d.conjugate()
        return MobiusMap(a, b, c, d, conjugating=self.conjugating)

    def probe_signature(self, quantum: float = 1e-9) -> tuple:
        """Hashable key identifying the map: quantized images of 3 probe points."""
        key = [self.conjugating]
        for p in (0.0 + 0.0j, 0.31 + 0.0j, 0.0 + 0.23j):
            w = self.apply(p)
            key.append((round(w.real / quantum), round(w.imag / quantum)))
        return tuple(key)


def rotation(theta: float) -> MobiusMap:
    """Rotation about the origin by theta."""
    return MobiusMap(cmath.exp(1j * theta), 0, 0, 1)


def disk_automorphism(c: ComplexLike) -> MobiusMap:
    """mu_c(z) = (z - c) / (1 - conj(c) z); sends c to 0."""
    c = complex(c)
    if abs(c) >= 1.0:
        raise OutsideDiskError("automorphism center must lie inside the disk")
    return MobiusMap(1, -c, -c.conjugate(), 1)


def central_reflection(k: int, doubled: bool = False) -> MobiusMap:
    """Reflection z -> -e^{i m alpha} conj(z), m = 2k if doubled else k.

    The mirror is the diameter at angle pi/2 + m*alpha/2.
    """
    m = (2 * k) if doubled else k
    return MobiusMap(-cmath.exp(1j * m * ALPHA), 0, 0, 1, conjugating=True)


def point_reflection(w0: ComplexLike) -> MobiusMap:
    """Half-turn of the disk about the point w0."""
    mu = disk_automorphism(w0)
    flip = MobiusMap(-1, 0, 0, 1)
    return mu.inverse().compose(flip).compose(mu)


def hyperbolic_distance(p, q) -> float:
    zp, zq = _as_complex(p), _as_complex(q)
    num = abs(zp - zq)
    den = abs(1.0 - zq.conjugate() * zp)
    delta = num / den
    if delta >= 1.0:
        raise OutsideDiskError("distance undefined outside the open disk")
    return 2.0 * math.atanh(delta)


@dataclass(frozen=True)
class Geodesic:
    """Hyperbolic line: circle orthogonal to the unit circle, or a diameter.

    Circle form: center/radius with |center|^2 = radius^2 + 1.
    Diameter form: center is None, direction is a unit complex.
    """

    center: complex | None
    radius: float
    direction: complex | None

    @staticmethod
    def circle(center: ComplexLike, radius: float) -> "Geodesic":
        center = complex(center)
        if abs(abs(center) ** 2 - radius**2 - 1.0) > 1e-9:
            raise ValidationError("circle not orthogonal to the unit circle")
        return Geodesic(center, float(radius), None)

    @staticmethod
    def diameter(direction: ComplexLike) -> "Geodesic":
        u = complex(direction)
        if abs(u) < EPSILON:
            raise ValidationError("diameter direction must be nonzero")
        return Geodesic(None, 0.0, u / abs(u))

    @property
    def is_diameter(self) -> bool:
        return self.center is None

    @staticmethod
    def through(p, q) -> "Geodesic":
        """The unique geodesic through two distinct disk points."""
        zp, zq = _as_complex(p), _as_complex(q)
        if abs(zp - zq) < EPSILON:
            raise ValidationError("need two distinct points")
        # Collinear with the origin: a diameter.
        if abs((zp.conjugate() * zq).imag) < EPSILON * max(1.0, abs(zp * zq)):
            return Geodesic.diameter(zq - zp)
        # Otherwise the circle through p, q and the inversion of p in the unit circle.
        z3 = 1.0 / zp.conjugate()
        center = _circumcenter(zp, zq, z3)
        radius = abs(zp - center)
        return Geodesic(center, radius, None)

    def signed_value(self, z: ComplexLike) -> float:
        """Zero on the line; sign distinguishes the two half-planes."""
        z = complex(z)
        if self.is_diameter:
            return (self.direction.conjugate() * z).imag
        return abs(z - self.center) ** 2 - self.radius**2

    def contains(self, z: ComplexLike, tol: float = 1e-9) -> bool:
        return abs(self.signed_value(z)) <= tol

    def reflect(self, z: complex) -> complex:
        """Reflect a raw complex across the line (circle inversion)."""
        if self.is_diameter:
            u2 = self.direction * self.direction
            return u2 * z.conjugate()
        d = z.conjugate() - self.center.conjugate()
        return self.center + (self.radius**2) / d

    def reflection(self) -> MobiusMap:
        """The reflection across this geodesic as an anti-holomorphic map."""
        if self.is_diameter:
            u2 = self.direction * self.direction
            return MobiusMap(u2, 0, 0, 1, conjugating=True)
        c = self.center
        return MobiusMap(c, self.radius**2 - abs(c) ** 2, 1, -c.conjugate(), conjugating=True)

    def ideal_endpoints(self) -> tuple[complex, complex]:
        """The two intersections with the unit circle."""
        if self.is_diameter:
            return (self.direction, -self.direction)
        phi = math.acos(1.0 / abs(self.center))
        theta = cmath.phase(self.center)
        return (cmath.exp(1j * (theta - phi)), cmath.exp(1j * (theta + phi)))

    def closest_point_to_origin(self) -> complex:
        if self.is_diameter:
            return 0.0 + 0.0j
        return self.center * (1.0 - self.radius / abs(self.center))


def _circumcenter(z1: complex, z2: complex, z3: complex) -> complex:
    num = (
        abs(z1) ** 2 * (z2 - z3)
        + abs(z2) ** 2 * (z3 - z1)
        + abs(z3) ** 2 * (z1 - z2)
    )
    den = (
        z1.conjugate() * (z2 - z3)
        + z2.conjugate() * (z3 - z1)
        + z3.conjugate() * (z1 - z2)
    )
    if abs(den) < EPSILON:
        raise ValidationError("collinear points have no circumcircle")
    return num / den


def reflect_in_geodesic(g: Geodesic, p):
    """Reflect a point (class preserved) across a geodesic."""
    if isinstance(p, DiskPoint):
        return DiskPoint(g.reflect(p.z))
    if isinstance(p, CirclePoint):
        return CirclePoint(g.reflect(p.z))
    return g.reflect(complex(p))
