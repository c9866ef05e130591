"""Curve families: Fourier constant-diameter curves, rotor curves, arc chains.

All curves share one evaluation contract. ``curve.eval(u, order)`` takes the
native parameter ``u`` (an angle for Fourier curves, circles and ellipses,
the normalized arc-chain parameter for arc curves) and returns the position
or its first/second derivative with respect to ``u``, shaped ``u.shape + (2,)``.
``curve.period`` is the native period, so ``evaluate(curve, t, order)`` with
``t`` in ``[0, 1)`` addresses every family the same way.

Curves are immutable; evaluation is pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._numerics import golden_section
from .errors import (
    AmplitudeViolation,
    BadOrder,
    BadRadius,
    ConstructionError,
    EvenOrder,
    FrequencyViolation,
    GuardViolation,
    HarmonicViolation,
)

TWO_PI = 2.0 * math.pi

# Rotor smallness guard: sum|c| + sum(freq*|c|) <= ROTOR_GUARD * R. At 1.0 it
# bounds |G'| below R, which keeps the rotor regular.
ROTOR_GUARD = 1.0

AMPLITUDE_GRID = 4096
AMPLITUDE_MARGIN = 1e-9


def _unit(theta: np.ndarray) -> np.ndarray:
    return np.stack([np.cos(theta), np.sin(theta)], axis=-1)


def _unit_perp(theta: np.ndarray) -> np.ndarray:
    return np.stack([-np.sin(theta), np.cos(theta)], axis=-1)


# ---------------------------------------------------------------------------
# Trigonometric series

_SPLIT = 2.0**27 + 1.0


def _sincos_multiple(x: np.ndarray, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``sin(f x)``, ``cos(f x)`` for integer frequencies without product rounding.

    ``x`` is split into two halves of at most 27 significant bits so that both
    partial products with a small integer ``f`` are exact; the rounding error of
    their sum is carried as a first-order correction. Plain ``sin(f * x)``
    loses an ulp of ``f x``, which is visible in curvature where the speed is
    tiny.
    """
    t = _SPLIT * x
    x_hi = t - (t - x)
    x_lo = x - x_hi
    p = x_hi[..., None] * f
    q = x_lo[..., None] * f
    hi = p + q
    lo = q - (hi - p)
    sn, cs = np.sin(hi), np.cos(hi)
    return sn + lo * cs, cs - lo * sn


@dataclass(frozen=True)
class TrigSeries:
    """Finite series ``sum_j s_j sin(f_j x) + c_j cos(f_j x)``."""

    freqs: tuple[int, ...] = ()
    sin: tuple[float, ...] = ()
    cos: tuple[float, ...] = ()

    @classmethod
    def from_dict(cls, coeffs: dict[int, tuple[float, float]]) -> "TrigSeries":
        keys = sorted(coeffs)
        return cls(
            tuple(keys),
            tuple(float(coeffs[k][0]) for k in keys),
            tuple(float(coeffs[k][1]) for k in keys),
        )

    def as_dict(self) -> dict[int, tuple[float, float]]:
        return {f: (s, c) for f, s, c in zip(self.freqs, self.sin, self.cos)}

    def __call__(self, x, order: int = 0) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if not self.freqs:
            return np.zeros(x.shape)
        f = np.asarray(self.freqs, dtype=float)
        s = np.asarray(self.sin)
        c = np.asarray(self.cos)
        sn, cs = _sincos_multiple(x, f)
        if order == 0:
            return sn @ s + cs @ c
        if order == 1:
            return cs @ (f * s) - sn @ (f * c)
        if order == 2:
            return -(sn @ (f * f * s) + cs @ (f * f * c))
        raise ValueError(f"order must be 0, 1 or 2, got {order}")

    def abs_sum(self, weighted: bool = False) -> float:
        total = 0.0
        for f, s, c in zip(self.freqs, self.sin, self.cos):
            w = f if weighted else 1.0
            total += w * (abs(s) + abs(c))
        return total


@dataclass(frozen=True)
class PlanarSeries:
    """Two trigonometric series sharing one sine/cosine evaluation."""

    freqs: np.ndarray
    sin: np.ndarray  # (m, 2)
    cos: np.ndarray  # (m, 2)

    @classmethod
    def of(cls, sx: TrigSeries, sy: TrigSeries) -> "PlanarSeries":
        freqs = sorted(set(sx.freqs) | set(sy.freqs))
        dx, dy = sx.as_dict(), sy.as_dict()
        S = np.array([[dx.get(f, (0.0, 0.0))[0], dy.get(f, (0.0, 0.0))[0]] for f in freqs]).reshape(-1, 2)
        C = np.array([[dx.get(f, (0.0, 0.0))[1], dy.get(f, (0.0, 0.0))[1]] for f in freqs]).reshape(-1, 2)
        return cls(np.asarray(freqs, dtype=float), S, C)

    def __call__(self, x, order: int = 0) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if self.freqs.size == 0:
            return np.zeros(x.shape + (2,))
        f = self.freqs[:, None]
        sn, cs = _sincos_multiple(x, self.freqs)
        if order == 0:
            return sn @ self.sin + cs @ self.cos
        if order == 1:
            return cs @ (f * self.sin) - sn @ (f * self.cos)
        if order == 2:
            return -(sn @ (f * f * self.sin) + cs @ (f * f * self.cos))
        raise ValueError(f"order must be 0, 1 or 2, got {order}")


class _Accumulator:
    """Sparse Fourier coefficients keyed by non-negative frequency."""

    def __init__(self) -> None:
        self.coeffs: dict[int, list[float]] = {}

    def add(self, freq: int, s: float, c: float) -> None:
        if freq < 0:
            freq, s = -freq, -s
        if freq == 0:
            s = 0.0
        entry = self.coeffs.setdefault(freq, [0.0, 0.0])
        entry[0] += s
        entry[1] += c

    def times_cos(self, freq: int, s: float, c: float, scale: float = 1.0) -> None:
        self.add(freq + 1, 0.5 * scale * s, 0.5 * scale * c)
        self.add(freq - 1, 0.5 * scale * s, 0.5 * scale * c)

    def times_sin(self, freq: int, s: float, c: float, scale: float = 1.0) -> None:
        self.add(freq + 1, 0.5 * scale * c, -0.5 * scale * s)
        self.add(freq - 1, -0.5 * scale * c, 0.5 * scale * s)


# ---------------------------------------------------------------------------
# Profiles and the midpoint curve


@dataclass(frozen=True)
class TrigTerm:
    """One odd harmonic ``a sin(m x) + b cos(m x)`` of a profile, ``m >= 3``."""

    m: int
    a: float = 0.0
    b: float = 0.0

    def __post_init__(self) -> None:
        m = self.m
        if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 3 or m % 2 == 0:
            raise HarmonicViolation(f"harmonic m={m!r} is not an odd integer >= 3")
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))


def _check_terms(terms: Iterable) -> tuple[TrigTerm, ...]:
    out = []
    for t in terms:
        if isinstance(t, TrigTerm):
            out.append(t)
        elif isinstance(t, dict):
            out.append(TrigTerm(t["m"], t.get("a", 0.0), t.get("b", 0.0)))
        else:
            out.append(TrigTerm(*t))
    return tuple(out)


def profile_series(terms: Sequence[TrigTerm]) -> TrigSeries:
    acc = _Accumulator()
    for t in _check_terms(terms):
        acc.add(t.m, t.a, t.b)
    return TrigSeries.from_dict({k: tuple(v) for k, v in acc.coeffs.items()})


def integrate_profile(terms: Sequence[TrigTerm]) -> tuple[TrigSeries, TrigSeries]:
    """Fourier coefficients of the midpoint curve ``G`` for a profile ``r``.

    ``G' = r (-sin x, cos x)`` is expanded by product-to-sum into even
    harmonics ``m - 1`` and ``m + 1`` and integrated term by term with zero
    mean, so ``G(x + pi) = G(x)``.
    """
    terms = _check_terms(terms)
    dx, dy = _Accumulator(), _Accumulator()
    for t in terms:
        dx.times_sin(t.m, t.a, t.b, scale=-1.0)
        dy.times_cos(t.m, t.a, t.b)
    return _antiderivative(dx), _antiderivative(dy)


def _antiderivative(acc: _Accumulator) -> TrigSeries:
    out = {}
    for f, (s, c) in acc.coeffs.items():
        if f == 0:
            # m >= 3 never produces a constant term in G'
            continue
        out[f] = (c / f, -s / f)
    return TrigSeries.from_dict(out)


def differentiate_midpoint(gx: TrigSeries, gy: TrigSeries, tol: float = 1e-14) -> list[TrigTerm]:
    """Recover the profile ``r = <G', (-sin x, cos x)>`` at coefficient level.

    Inverse of :func:`integrate_profile`; coefficients below ``tol`` (relative
    to the largest) are dropped.
    """
    acc = _Accumulator()
    for f, s, c in zip(gx.freqs, gx.sin, gx.cos):
        # d/dx: s sin + c cos -> f (s cos - c sin), then times -sin x
        acc.times_sin(f, -f * c, f * s, scale=-1.0)
    for f, s, c in zip(gy.freqs, gy.sin, gy.cos):
        acc.times_cos(f, -f * c, f * s)
    scale = max([abs(v) for pair in acc.coeffs.values() for v in pair], default=0.0)
    terms = []
    for m in sorted(acc.coeffs):
        a, b = acc.coeffs[m]
        if max(abs(a), abs(b)) <= tol * scale:
            continue
        terms.append(TrigTerm(m, a, b))
    return terms


# ---------------------------------------------------------------------------
# Curve base


class Curve:
    """Common evaluation facade. Subclasses define ``period``, ``scale``, ``eval``."""

    kind = "curve"
    period: float = TWO_PI

    @property
    def scale(self) -> float:
        raise NotImplementedError

    def eval(self, u, order: int = 0) -> np.ndarray:
        raise NotImplementedError

    def at(self, t, order: int = 0) -> np.ndarray:
        return self.eval(np.asarray(t, dtype=float) * self.period, order)

    def pieces(self) -> list[tuple[float, float]]:
        """Native-parameter intervals on which the curve is smooth."""
        return [(0.0, self.period)]

    def grid(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """Cached ``(u, points)`` on a uniform native grid of ``n`` samples."""
        cache = self.__dict__.setdefault("_grid_cache", {})
        if n not in cache:
            u = np.arange(n) * (self.period / n)
            cache[n] = (u, self.eval(u))
        return cache[n]

    def max_speed(self, n: int = 4096) -> float:
        cache = self.__dict__.setdefault("_speed_cache", {})
        if n not in cache:
            u = np.arange(n) * (self.period / n)
            cache[n] = float(np.max(np.hypot(*np.moveaxis(self.eval(u, 1), -1, 0))))
        return cache[n]


def evaluate(curve: Curve, t, order: int = 0) -> np.ndarray:
    """Evaluate at normalized parameter ``t`` (wrapped mod 1).

    Derivatives are with respect to the curve's native parameter.
    """
    return curve.at(np.mod(np.asarray(t, dtype=float), 1.0), order)


# ---------------------------------------------------------------------------
# Fixtures


@dataclass(frozen=True)
class Circle(Curve):
    radius: float
    center: tuple[float, float] = (0.0, 0.0)
    kind = "circle"

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise ConstructionError("circle radius must be positive")

    @property
    def scale(self) -> float:
        return 2.0 * self.radius

    def eval(self, u, order: int = 0) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if order == 0:
            return np.asarray(self.center) + self.radius * _unit(u)
        if order == 1:
            return self.radius * _unit_perp(u)
        if order == 2:
            return -self.radius * _unit(u)
        raise ValueError(f"order must be 0, 1 or 2, got {order}")


@dataclass(frozen=True)
class Ellipse(Curve):
    a: float
    b: float
    kind = "ellipse"

    def __post_init__(self) -> None:
        if not (self.a > 0 and self.b > 0):
            raise ConstructionError("ellipse semi-axes must be positive")

    @property
    def scale(self) -> float:
        return 2.0 * max(self.a, self.b)

    def eval(self, u, order: int = 0) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        c, s = np.cos(u), np.sin(u)
        if order == 0:
            return np.stack([self.a * c, self.b * s], axis=-1)
        if order == 1:
            return np.stack([-self.a * s, self.b * c], axis=-1)
        if order == 2:
            return np.stack([-self.a * c, -self.b * s], axis=-1)
        raise ValueError(f"order must be 0, 1 or 2, got {order}")


# ---------------------------------------------------------------------------
# Constant-diameter Fourier curves


@dataclass(frozen=True)
class ConstantDiameterCurve(Curve):
    """``gamma(x) = G(x) + (D/2)(cos x, sin x)`` with ``G' = r(x)(-sin x, cos x)``."""

    D: float
    terms: tuple[TrigTerm, ...] = ()
    profile: TrigSeries = field(init=False, repr=False, compare=False)
    gx: TrigSeries = field(init=False, repr=False, compare=False)
    gy: TrigSeries = field(init=False, repr=False, compare=False)
    _g: PlanarSeries = field(init=False, repr=False, compare=False)
    kind = "trig"

    def __post_init__(self) -> None:
        if not self.D > 0:
            raise ConstructionError(f"diameter must be positive, got {self.D}")
        terms = _check_terms(self.terms)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "profile", profile_series(terms))
        gx, gy = integrate_profile(terms)
        object.__setattr__(self, "gx", gx)
        object.__setattr__(self, "gy", gy)
        object.__setattr__(self, "_g", PlanarSeries.of(gx, gy))
        theta, value = max_abs_profile(self.profile)
        if value >= self.D / 2 - AMPLITUDE_MARGIN * self.D:
            raise AmplitudeViolation(
                f"max |r| = {value:.12g} at theta = {theta:.12g} is not below D/2 = {self.D / 2:.12g}",
                theta=theta,
                value=value,
            )

    @property
    def scale(self) -> float:
        return self.D

    @property
    def g_terms(self) -> tuple[TrigSeries, TrigSeries]:
        return self.gx, self.gy

    def r(self, theta, order: int = 0) -> np.ndarray:
        return self.profile(theta, order)

    def midpoint(self, theta, order: int = 0) -> np.ndarray:
        return self._g(theta, order)

    def eval(self, u, order: int = 0) -> np.ndarray:
        # Derivatives use G' = r u_perp so that the speed r + D/2 is never
        # formed by cancelling G' against (D/2) u_perp.
        u = np.asarray(u, dtype=float)
        h = 0.5 * self.D
        if order == 0:
            return self.midpoint(u) + h * _unit(u)
        speed = self.profile(u) + h
        if order == 1:
            return speed[..., None] * _unit_perp(u)
        if order == 2:
            return self.profile(u, 1)[..., None] * _unit_perp(u) - speed[..., None] * _unit(u)
        raise ValueError(f"order must be 0, 1 or 2, got {order}")


def max_abs_profile(profile: TrigSeries, samples: int = AMPLITUDE_GRID) -> tuple[float, float]:
    """``(theta, max |r|)`` by dense grid plus golden-section refinement."""
    if not profile.freqs:
        return 0.0, 0.0
    h = TWO_PI / samples
    theta = np.arange(samples) * h
    v = np.abs(profile(theta))
    peaks = np.flatnonzero((v >= np.roll(v, 1)) & (v >= np.roll(v, -1)))
    x, fx = golden_section(
        lambda x: np.abs(profile(x)), theta[peaks] - h, theta[peaks] + h, tol=1e-12, maximize=True
    )
    k = int(np.argmax(fx))
    return float(np.mod(x[k], TWO_PI)), float(fx[k])


def make_constant_diameter(D: float, terms: Sequence[TrigTerm] = ()) -> ConstantDiameterCurve:
    """Constant-diameter curve of diameter ``D`` from an odd-harmonic profile."""
    return ConstantDiameterCurve(float(D), _check_terms(terms))


# ---------------------------------------------------------------------------
# Rotor curves


def _check_coeffs(coeffs: Iterable, n: int, name: str) -> tuple[tuple[int, float, float], ...]:
    out = []
    for item in coeffs:
        if isinstance(item, dict):
            freq, a, b = item["freq"], item.get("a", 0.0), item.get("b", 0.0)
        else:
            freq, a, b = item
        if isinstance(freq, bool) or int(freq) != freq or freq <= 0 or int(freq) % n:
            raise FrequencyViolation(f"{name} frequency {freq!r} is not a positive multiple of n={n}")
        out.append((int(freq), float(a), float(b)))
    return tuple(out)


def _series(coeffs: Sequence[tuple[int, float, float]]) -> TrigSeries:
    acc = _Accumulator()
    for f, a, b in coeffs:
        acc.add(f, a, b)
    return TrigSeries.from_dict({k: tuple(v) for k, v in acc.coeffs.items()})


@dataclass(frozen=True)
class RotorCurve(Curve):
    """``gamma(x) = G(x) + R (cos x, sin x)`` with ``G`` of period ``2 pi / n``.

    The points ``gamma(x + 2 pi k / n)`` are the vertices of a regular n-gon of
    side ``D`` for every ``x``.
    """

    n: int
    D: float
    gx: tuple[tuple[int, float, float], ...] = ()
    gy: tuple[tuple[int, float, float], ...] = ()
    check_guard: bool = field(default=True, compare=False)
    sx: TrigSeries = field(init=False, repr=False, compare=False)
    sy: TrigSeries = field(init=False, repr=False, compare=False)
    _g: PlanarSeries = field(init=False, repr=False, compare=False)
    kind = "rotor"

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 3:
            raise BadOrder(f"rotor order must be an integer >= 3, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not self.D > 0:
            raise ConstructionError(f"edge length must be positive, got {self.D}")
        gx = _check_coeffs(self.gx, self.n, "gx")
        gy = _check_coeffs(self.gy, self.n, "gy")
        object.__setattr__(self, "gx", gx)
        object.__setattr__(self, "gy", gy)
        object.__setattr__(self, "sx", _series(gx))
        object.__setattr__(self, "sy", _series(gy))
        object.__setattr__(self, "_g", PlanarSeries.of(self.sx, self.sy))
        if self.check_guard:
            measured, bound = self.guard_measure(), ROTOR_GUARD * self.R
            if measured > bound:
                raise GuardViolation(
                    f"displacement size {measured:.6g} exceeds guard {bound:.6g}",
                    measured=measured,
                    bound=bound,
                )

    @property
    def R(self) -> float:
        return self.D / (2.0 * math.sin(math.pi / self.n))

    @property
    def scale(self) -> float:
        return 2.0 * self.R

    def guard_measure(self) -> float:
        return sum(s.abs_sum() + s.abs_sum(weighted=True) for s in (self.sx, self.sy))

    def displacement(self, theta, order: int = 0) -> np.ndarray:
        return self._g(theta, order)

    def eval(self, u, order: int = 0) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        g = self.displacement(u, order)
        if order == 0:
            return g + self.R * _unit(u)
        if order == 1:
            return g + self.R * _unit_perp(u)
        return g - self.R * _unit(u)


def make_rotor(n: int, D: float, gx: Iterable = (), gy: Iterable = ()) -> RotorCurve:
    return RotorCurve(n, float(D), tuple(gx), tuple(gy))


# ---------------------------------------------------------------------------
# Arc chains


@dataclass(frozen=True)
class ArcSegment:
    center: tuple[float, float]
    radius: float
    start: float
    end: float

    def __post_init__(self) -> None:
        if not self.radius > 0:
            raise ConstructionError("arc radius must be positive")
        if not (self.end > self.start and self.end - self.start < TWO_PI):
            raise ConstructionError("arc sweep must lie in (0, 2 pi)")

    @property
    def sweep(self) -> float:
        return self.end - self.start

    @property
    def length(self) -> float:
        return self.radius * self.sweep

    def point(self, angle: float) -> np.ndarray:
        return np.asarray(self.center) + self.radius * np.array([math.cos(angle), math.sin(angle)])


@dataclass(frozen=True)
class PiecewiseArcCurve(Curve):
    """Closed counterclockwise chain of circular arcs.

    The native parameter is normalized arc length, so each arc owns a
    parameter slice proportional to its length and the speed is the total
    length everywhere.
    """

    arcs: tuple[ArcSegment, ...]
    width: float | None = None
    junctions: np.ndarray = field(init=False, repr=False, compare=False)
    kind = "arcs"
    period = 1.0

    def __post_init__(self) -> None:
        arcs = tuple(self.arcs)
        if not arcs:
            raise ConstructionError("arc chain is empty")
        object.__setattr__(self, "arcs", arcs)
        lengths = np.array([a.length for a in arcs])
        cum = np.concatenate([[0.0], np.cumsum(lengths)])
        object.__setattr__(self, "junctions", cum / cum[-1])
        scale = self.scale
        for i, arc in enumerate(arcs):
            nxt = arcs[(i + 1) % len(arcs)]
            gap = float(np.hypot(*(arc.point(arc.end) - nxt.point(nxt.start))))
            if gap > 1e-12 * scale:
                raise ConstructionError(f"arcs {i} and {(i + 1) % len(arcs)} do not meet (gap {gap:.3g})")
        turning = sum(a.sweep for a in arcs) + sum(t for _, t in self.junction_turns())
        if abs(turning - TWO_PI) > 1e-9:
            raise ConstructionError(f"total turning {turning:.12g} is not 2 pi")

    @property
    def scale(self) -> float:
        if self.width is not None:
            return float(self.width)
        pts = np.array([a.point(a.start) for a in self.arcs])
        span = pts.max(axis=0) - pts.min(axis=0)
        return float(max(np.hypot(*span), max(a.radius for a in self.arcs)))

    @property
    def total_length(self) -> float:
        return float(sum(a.length for a in self.arcs))

    @property
    def centers(self) -> list[tuple[float, float]]:
        return [a.center for a in self.arcs]

    def pieces(self) -> list[tuple[float, float]]:
        j = self.junctions
        return [(float(j[i]), float(j[i + 1])) for i in range(len(self.arcs))]

    def junction_turns(self) -> list[tuple[float, float]]:
        """Exterior turning angle at each junction ``(param, angle)``.

        The tangent direction of an arc at polar angle ``a`` is ``a + pi/2``.
        """
        out = []
        for i, arc in enumerate(self.arcs):
            nxt = self.arcs[(i + 1) % len(self.arcs)]
            jump = math.remainder(nxt.start - arc.end, TWO_PI)
            out.append((float(self.junctions[i + 1] % 1.0), jump))
        return out

    def locate(self, u) -> tuple[np.ndarray, np.ndarray]:
        """Arc index and polar angle for native parameters (right-continuous)."""
        u = np.mod(np.asarray(u, dtype=float), 1.0)
        idx = np.searchsorted(self.junctions, u, side="right") - 1
        idx = np.clip(idx, 0, len(self.arcs) - 1)
        start = np.array([a.start for a in self.arcs])
        sweep = np.array([a.sweep for a in self.arcs])
        j0 = self.junctions[:-1]
        j1 = self.junctions[1:]
        frac = (u - j0[idx]) / (j1[idx] - j0[idx])
        return idx, start[idx] + frac * sweep[idx]

    def eval(self, u, order: int = 0) -> np.ndarray:
        idx, ang = self.locate(u)
        centers = np.array([a.center for a in self.arcs])
        radii = np.array([a.radius for a in self.arcs])
        total = self.total_length
        if order == 0:
            return centers[idx] + radii[idx][..., None] * _unit(ang)
        if order == 1:
            return total * _unit_perp(ang)
        if order == 2:
            return -(total * total / radii[idx])[..., None] * _unit(ang)
        raise ValueError(f"order must be 0, 1 or 2, got {order}")

    def radius_at(self, u) -> np.ndarray:
        idx, _ = self.locate(u)
        return np.array([a.radius for a in self.arcs])[idx]


def _polygon_radius(n: int, D: float) -> float:
    # circumradius of the regular odd n-gon whose longest diagonal is D
    return D / (2.0 * math.cos(math.pi / (2 * n)))


def _check_odd(n: int) -> int:
    if isinstance(n, bool) or int(n) != n or n < 3 or int(n) % 2 == 0:
        raise EvenOrder(f"Reuleaux polygons need odd n >= 3, got {n!r}")
    return int(n)


def reuleaux_vertices(n: int, D: float) -> np.ndarray:
    """Vertices of the underlying regular n-gon, first vertex on the +y axis."""
    n = _check_odd(n)
    rho = _polygon_radius(n, D)
    ang = math.pi / 2 + TWO_PI * np.arange(n) / n
    return rho * _unit(ang)


def make_reuleaux(n: int, D: float) -> PiecewiseArcCurve:
    """Reuleaux polygon of width ``D``: n arcs of radius D about opposite vertices."""
    n = _check_odd(n)
    if not D > 0:
        raise ConstructionError(f"width must be positive, got {D}")
    verts = reuleaux_vertices(n, D)
    half = math.pi / (2 * n)
    arcs = []
    for j in range(n):
        psi = -math.pi / 2 + TWO_PI * j / n
        arcs.append(ArcSegment(tuple(map(float, verts[j])), float(D), psi - half, psi + half))
    return PiecewiseArcCurve(tuple(arcs), width=float(D))


def make_rounded_reuleaux(n: int, D: float, b: float) -> PiecewiseArcCurve:
    """Reuleaux polygon with corners rounded by radius ``b``; width stays ``D``.

    The underlying Reuleaux polygon has width ``s = D - 2b``; outer arcs have
    radius ``s + b`` and corner arcs radius ``b``, both about the polygon's
    vertices, and they meet tangentially.
    """
    n = _check_odd(n)
    if not D > 0:
        raise ConstructionError(f"width must be positive, got {D}")
    if not (0 <= b < D / 2):
        raise BadRadius(f"rounding radius b={b} must satisfy 0 <= b < D/2 = {D / 2}")
    if b == 0:
        return make_reuleaux(n, D)
    s = D - 2.0 * b
    verts = reuleaux_vertices(n, s)
    half = math.pi / (2 * n)
    arcs = []
    for j in range(n):
        psi = -math.pi / 2 + TWO_PI * j / n
        arcs.append(ArcSegment(tuple(map(float, verts[j])), s + b, psi - half, psi + half))
        corner = verts[j] + s * np.array([math.cos(psi + half), math.sin(psi + half)])
        arcs.append(ArcSegment(tuple(map(float, corner)), float(b), psi + half, psi + 3 * half))
    return PiecewiseArcCurve(tuple(arcs), width=float(D))


# ---------------------------------------------------------------------------
# Rigid motions


@dataclass(frozen=True)
class Transformed(Curve):
    """A curve moved by a rotation about the origin followed by a translation."""

    base: Curve
    angle: float = 0.0
    shift: tuple[float, float] = (0.0, 0.0)

    @property
    def kind(self) -> str:  # type: ignore[override]
        return self.base.kind

    @property
    def period(self) -> float:  # type: ignore[override]
        return self.base.period

    @property
    def scale(self) -> float:
        return self.base.scale

    def pieces(self) -> list[tuple[float, float]]:
        return self.base.pieces()

    def eval(self, u, order: int = 0) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        rot = np.array([[c, -s], [s, c]])
        p = self.base.eval(u, order) @ rot.T
        return p + np.asarray(self.shift) if order == 0 else p
