"""Metric and differential analyzers for curves.

Parameters are native (see :mod:`constwidth.curves`). Extrema are located on a
dense grid and refined by golden-section search, never by Newton steps, since
arc chains are only piecewise smooth.
"""

from __future__ import annotations

import math

import numpy as np

from ._numerics import gauss_legendre, golden_section
from .curves import Curve, PiecewiseArcCurve, Transformed
from .errors import NonConvergence, SingularPoint

WIDTH_GRID = 2048
NEAREST_GRID = 4096
REFINE_TOL = 1e-12


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def _norm(v: np.ndarray) -> np.ndarray:
    return np.hypot(v[..., 0], v[..., 1])


def _arc_chain(curve: Curve) -> PiecewiseArcCurve | None:
    while isinstance(curve, Transformed):
        curve = curve.base
    return curve if isinstance(curve, PiecewiseArcCurve) else None


def curvature(curve: Curve, u) -> np.ndarray | float:
    """Unsigned curvature ``|g' x g''| / |g'|^3`` from exact derivatives."""
    arcs = _arc_chain(curve)
    if arcs is not None:
        k = 1.0 / arcs.radius_at(u)
        return float(k) if np.ndim(u) == 0 else k
    d1 = curve.eval(u, 1)
    d2 = curve.eval(u, 2)
    speed = _norm(d1)
    if np.any(speed < 1e-12 * curve.scale):
        bad = np.atleast_1d(np.asarray(u, dtype=float))[np.atleast_1d(speed < 1e-12 * curve.scale)]
        raise SingularPoint(f"derivative vanishes at u = {bad[0]:.12g}")
    k = np.abs(_cross(d1, d2)) / speed**3
    return float(k) if np.ndim(k) == 0 else k


def unit_tangent(curve: Curve, u) -> np.ndarray:
    d1 = curve.eval(u, 1)
    return d1 / _norm(d1)[..., None]


def inward_normal(curve: Curve, u) -> np.ndarray:
    """Tangent turned by +90 degrees; inward for counterclockwise curves."""
    t = unit_tangent(curve, u)
    return np.stack([-t[..., 1], t[..., 0]], axis=-1)


def perimeter(curve: Curve) -> float:
    """Arc length by composite Gauss-Legendre on each smooth piece."""
    rtol = 1e-13 * curve.scale
    total = 0.0
    for a, b in curve.pieces():
        try:
            total += gauss_legendre(lambda u: _norm(curve.eval(u, 1)), a, b, rtol=rtol)
        except ArithmeticError as exc:
            raise NonConvergence(str(exc)) from exc
    return total


def support(curve: Curve, direction, grid: int = WIDTH_GRID) -> tuple[float, float]:
    """``(max, min)`` of ``<p, direction>`` over the curve."""
    d = np.asarray(direction, dtype=float)
    u, pts = curve.grid(grid)
    h = curve.period / grid
    proj = pts @ d

    def extreme(sign: float) -> float:
        v = sign * proj
        peaks = np.flatnonzero((v >= np.roll(v, 1)) & (v >= np.roll(v, -1)))
        peaks = peaks[np.argsort(-v[peaks], kind="stable")[:3]]
        _, fx = golden_section(
            lambda x: sign * (curve.eval(x) @ d), u[peaks] - h, u[peaks] + h, tol=REFINE_TOL, maximize=True
        )
        return sign * float(max(np.max(fx), np.max(v)))

    return extreme(1.0), extreme(-1.0)


def width(curve: Curve, direction, grid: int = WIDTH_GRID) -> float:
    """Distance between the two supporting lines orthogonal to ``direction``."""
    hi, lo = support(curve, direction, grid)
    return hi - lo


def chord(curve: Curve, theta, phi) -> np.ndarray | float:
    """``f_theta(phi) = |gamma(theta) - gamma(theta + phi)|``."""
    theta = np.asarray(theta, dtype=float)
    d = _norm(curve.eval(theta) - curve.eval(theta + np.asarray(phi, dtype=float)))
    return float(d) if np.ndim(d) == 0 else d


def nearest_points(
    curve: Curve,
    points,
    grid: int = NEAREST_GRID,
    basins: int = 3,
    cutoff: float | None = None,
    chunk: int = 512,
) -> tuple[np.ndarray, np.ndarray]:
    """Native parameters and distances of the closest curve points.

    The best ``basins`` grid local minima of each query are refined by
    golden-section. With ``cutoff``, queries whose grid distance provably
    exceeds it skip refinement and report the grid distance (still above
    the cutoff).
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    u, P = curve.grid(grid)
    h = curve.period / grid
    slack = 1.5 * curve.max_speed() * h
    out_u = np.empty(len(pts))
    out_d = np.empty(len(pts))
    for sl in [slice(i, i + chunk) for i in range(0, len(pts), chunk)]:
        q = pts[sl]
        d = np.hypot(P[None, :, 0] - q[:, None, 0], P[None, :, 1] - q[:, None, 1])
        is_min = (d <= np.roll(d, 1, axis=1)) & (d <= np.roll(d, -1, axis=1))
        masked = np.where(is_min, d, np.inf)
        order = np.argsort(masked, axis=1, kind="stable")[:, :basins]
        gmin = np.min(d, axis=1)
        best_u = u[np.argmin(d, axis=1)]
        todo = np.ones(len(q), dtype=bool) if cutoff is None else gmin - slack <= cutoff
        rows = np.flatnonzero(todo)
        if rows.size:
            idx = order[rows]
            valid = np.isfinite(np.take_along_axis(masked[rows], idx, axis=1))
            rr = np.repeat(rows, idx.shape[1])[valid.ravel()]
            cu = u[idx.ravel()[valid.ravel()]]
            qq = q[rr]

            def dist(x: np.ndarray) -> np.ndarray:
                return _norm(curve.eval(x) - qq)

            x, fx = golden_section(dist, cu - h, cu + h, tol=REFINE_TOL)
            # per-row minimum over refined basins, seeded with the grid minimum
            srt = np.lexsort((fx, rr))
            first = srt[np.r_[True, rr[srt][1:] != rr[srt][:-1]]]
            row_best = np.full(len(q), np.inf)
            row_u = best_u.copy()
            row_best[rr[first]] = fx[first]
            row_u[rr[first]] = x[first]
            better = row_best < gmin
            gmin = np.where(better, row_best, gmin)
            best_u = np.where(better, row_u, best_u)
        out_u[sl] = np.mod(best_u, curve.period)
        out_d[sl] = gmin
    return out_u, out_d


def nearest_point(curve: Curve, p, grid: int = NEAREST_GRID) -> tuple[float, float]:
    """``(u, distance)`` of the curve point closest to ``p``."""
    u, d = nearest_points(curve, [p], grid=grid)
    return float(u[0]), float(d[0])


def signed_area(curve: Curve, samples: int = 4096) -> float:
    _, p = curve.grid(samples)
    q = np.roll(p, -1, axis=0)
    return 0.5 * float(np.sum(_cross(p, q)))


def turning_angles(curve: Curve, samples: int) -> np.ndarray:
    """Tangent-angle increments between consecutive grid samples."""
    u = np.arange(samples) * (curve.period / samples)
    t = curve.eval(u, 1)
    ang = np.arctan2(t[:, 1], t[:, 0])
    return np.remainder(np.diff(np.concatenate([ang, ang[:1]])) + math.pi, 2 * math.pi) - math.pi
