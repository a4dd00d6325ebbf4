"""Centroid normalization of five circle points by a disk automorphism.

Among all maps mu_c(z) = (z - c)/(1 - conj(c) z) with |c| < 1 there is
exactly one sending the five points to a configuration whose center of
gravity is the origin (provided no three of them coincide).  That c is
the unique interior minimum of the barrier energy

    E(c) = -5 log(1 - |c|^2) + 2 sum_k log |1 - conj(c) v_k|,

which this module minimizes with a damped Newton iteration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .combinatorics import _cluster_labels
from .errors import ConvergenceError, ThreeCoincideError, ValidationError
from .hyperbolic import CirclePoint, disk_automorphism

_DEFAULT_TOL = 1e-12
_DEFAULT_MAX_ITER = 64


@dataclass(frozen=True)
class NormalizationResult:
    c: complex
    normalized: tuple[CirclePoint, ...]
    residual: float
    iterations: int


def _as_circle_points(points) -> tuple[CirclePoint, ...]:
    pts = tuple(p if isinstance(p, CirclePoint) else CirclePoint(p) for p in points)
    if len(pts) != 5:
        raise ValidationError("expected exactly five circle points")
    return pts


def _check_no_triple(pts: tuple[CirclePoint, ...]):
    try:
        _cluster_labels(tuple(p.angle for p in pts), tol=1e-9)
    except ThreeCoincideError:
        raise ThreeCoincideError(
            "three of the five points coincide; no centering transformation exists"
        ) from None


def centroid_energy(c: complex, points) -> tuple[float, tuple[float, float]]:
    """Barrier energy and its real gradient; stationary exactly where the
    mu_c image has centroid zero."""
    pts = _as_circle_points(points)
    c = complex(c)
    rr = 1.0 - abs(c) ** 2
    if rr <= 0.0:
        raise ValidationError("the parameter must lie in the open disk")
    value = -5.0 * math.log(rr)
    dbar = 5.0 * c / rr
    for p in pts:
        w = 1.0 - c.conjugate() * p.z
        value += 2.0 * math.log(abs(w))
        dbar -= p.z / w
    return value, (2.0 * dbar.real, 2.0 * dbar.imag)


def _centroid(c: complex, pts) -> complex:
    mu = disk_automorphism(c)
    return sum(mu.apply(p.z) for p in pts) / 5.0


def _newton_step(c: complex, pts) -> complex:
    rr = 1.0 - abs(c) ** 2
    w_mixed = 5.0 / rr**2
    v_pure = 5.0 * c**2 / rr**2
    dbar = 5.0 * c / rr
    for p in pts:
        denom = 1.0 - c.conjugate() * p.z
        dbar -= p.z / denom
        v_pure -= p.z**2 / denom**2
    gx, gy = 2.0 * dbar.real, 2.0 * dbar.imag
    a = 2.0 * (w_mixed + v_pure.real)
    b = 2.0 * v_pure.imag
    d = 2.0 * (w_mixed - v_pure.real)
    det = a * d - b * b
    if det <= 1e-30:
        # fall back to a plain gradient step scaled to the disk
        g = complex(gx, gy)
        return -0.1 * rr * g
    dx = (-gx * d + gy * b) / det
    dy = (gx * b - gy * a) / det
    return complex(dx, dy)


def normalize(
    points,
    tol: float = _DEFAULT_TOL,
    max_iter: int = _DEFAULT_MAX_ITER,
    initial: complex | None = None,
    fix_first: bool = False,
) -> NormalizationResult:
    """Find the unique disk automorphism parameter centering the points.

    The result applies the bare mu_c with no extra rotation; pass
    fix_first=True to post-rotate so the image of the first point is 1.
    """
    pts = _as_circle_points(points)
    _check_no_triple(pts)
    if initial is None:
        c = 0.5 * sum(p.z for p in pts) / 5.0
    else:
        c = complex(initial)
    if abs(c) > 0.9:
        c = 0.9 * c / abs(c)

    energy, _ = centroid_energy(c, pts)
    best_c, best_res = c, abs(_centroid(c, pts))
    iterations = 0
    for iterations in range(1, max_iter + 1):
        residual = abs(_centroid(c, pts))
        if residual <= tol:
            break
        step = _newton_step(c, pts)
        trial = c + step
        for _ in range(60):
            if abs(trial) < 1.0:
                trial_energy, _ = centroid_energy(trial, pts)
                if trial_energy <= energy + 1e-15:
                    break
            step *= 0.5
            trial = c + step
        else:
            break
        c, energy = trial, trial_energy
        res = abs(_centroid(c, pts))
        if res < best_res:
            best_c, best_res = c, res
    else:
        raise ConvergenceError(
            f"no convergence after {max_iter} iterations; "
            f"best |centroid| = {best_res:.3e} at c = {best_c}"
        )
    residual = abs(_centroid(c, pts))
    if residual > tol:
        raise ConvergenceError(
            f"stalled at |centroid| = {residual:.3e} (tolerance {tol:.1e})"
        )
    mu = disk_automorphism(c)
    images = [mu.apply(p.z) for p in pts]
    if fix_first:
        phase = images[0] / abs(images[0])
        images = [z / phase for z in images]
    return NormalizationResult(
        c=c,
        normalized=tuple(CirclePoint(z) for z in images),
        residual=residual,
        iterations=iterations,
    )
