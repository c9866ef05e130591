"""Search for non-circular curves with a constant diameter and an inscribed
regular polygon at every point.

A penalty measures how badly a curve violates both properties at once; a
derivative-free simplex search minimizes it over Fourier coefficients held on
a sphere of radius ``delta`` so the circle itself is never a candidate. A
small best penalty is evidence, not proof, and a large one proves nothing
either way.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from scipy.optimize import minimize

from .curves import Curve, RotorCurve, TrigTerm, make_constant_diameter
from .errors import ConstructionError, NonMonotoneAngle, NormalMiss
from .geometry import nearest_points
from .verify import (
    VerificationOptions,
    VerificationReport,
    _bases,
    _points_at_distance,
    check_cn,
    check_constant_diameter,
    recover_midpoint_curve,
    regular_polygon,
    scan_chord_maxima,
)

PROBE_OPTIONS = VerificationOptions(theta_samples=128, phi_samples=512)
PROBE_NEAREST_GRID = 1024


def penalty_terms(
    curve: Curve, D: float, n: int, side: float, opts: VerificationOptions = PROBE_OPTIONS
) -> tuple[float, float]:
    """``(diameter term, polygon term)`` of the penalty.

    The diameter term averages ``(max chord - D)^2`` plus the squared excess of
    the runner-up chord maximum over ``D - uniq_tol``. The polygon term
    averages, per base, the smallest sum of squared vertex-to-curve distances
    over all candidate n-gons of side ``side``; bases with no candidate cost
    ``side^2``.
    """
    value_tol, uniq_tol, _ = opts.tolerances(D)
    bases = _bases(curve, opts.theta_samples)
    maxima = scan_chord_maxima(curve, bases, opts.phi_samples, D, value_tol)
    cd = 0.0
    for m in maxima:
        excess = max(0.0, m.second_value - (D - uniq_tol))
        cd += (m.max_value - D) ** 2 + excess**2
    cd /= len(maxima)

    sols = _points_at_distance(curve, bases, side, opts)
    xs = curve.eval(bases)
    owner, polys = [], []
    for i, (b, ss) in enumerate(zip(bases, sols)):
        if not ss:
            continue
        ys = curve.eval(np.array([b + s.phi for s in ss]))
        for y in ys:
            if n == 2:
                owner.append(i)
                polys.append(np.stack([xs[i], y]))
                continue
            for sigma in (1, -1):
                owner.append(i)
                polys.append(regular_polygon(xs[i], y, n, side, sigma)[0])
    energy = np.full(len(bases), side**2)
    if polys and n > 2:
        q = np.concatenate([p[2:] for p in polys])
        _, dist = nearest_points(curve, q, grid=PROBE_NEAREST_GRID)
        e = np.sum(dist.reshape(len(polys), n - 2) ** 2, axis=1)
        np.minimum.at(energy, np.asarray(owner), e)
    elif polys:
        energy[np.asarray(owner)] = 0.0
    return cd, float(np.mean(energy))


def penalty(curve: Curve, D: float, n: int, side: float, opts: VerificationOptions = PROBE_OPTIONS) -> float:
    """Zero exactly when both properties hold at grid resolution."""
    cd, cn = penalty_terms(curve, D, n, side, opts)
    return cd + cn


@dataclass(frozen=True)
class ProbeFamily:
    """Coefficient family searched by :func:`counterexample_search`.

    ``kind="trig"``: odd profile harmonics, two coefficients (sine, cosine)
    each. ``kind="rotor"``: displacement frequencies (multiples of ``n``),
    four coefficients each (x sine, x cosine, y sine, y cosine).
    """

    kind: str
    D: float
    harmonics: tuple[int, ...]
    n: int | None = None
    delta: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("trig", "rotor"):
            raise ValueError(f"unknown family kind {self.kind!r}")
        if not self.harmonics:
            raise ValueError("a probe family needs at least one free coefficient")
        if not self.D > 0:
            raise ValueError("D must be positive")
        if self.delta is not None and not self.delta > 0:
            raise ValueError("delta must be positive")
        if self.kind == "trig":
            for m in self.harmonics:
                TrigTerm(m)
        else:
            if self.n is None or self.n < 3:
                raise ValueError("rotor families need n >= 3")
            if any(f <= 0 or f % self.n for f in self.harmonics):
                raise ValueError(f"rotor frequencies must be positive multiples of {self.n}")

    @property
    def dims(self) -> int:
        return (2 if self.kind == "trig" else 4) * len(self.harmonics)

    @property
    def radius(self) -> float:
        return self.delta if self.delta is not None else 0.05 * self.D

    def project(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        norm = float(np.linalg.norm(x))
        if norm == 0.0:
            x = np.zeros(self.dims)
            x[0] = 1.0
            norm = 1.0
        return self.radius * x / norm

    def build(self, coeffs: np.ndarray, side: float) -> Curve:
        c = np.asarray(coeffs, dtype=float)
        if self.kind == "trig":
            terms = [TrigTerm(m, c[2 * i], c[2 * i + 1]) for i, m in enumerate(self.harmonics)]
            return make_constant_diameter(self.D, terms)
        gx = [(f, c[4 * i], c[4 * i + 1]) for i, f in enumerate(self.harmonics)]
        gy = [(f, c[4 * i + 2], c[4 * i + 3]) for i, f in enumerate(self.harmonics)]
        return RotorCurve(self.n, side, tuple(gx), tuple(gy))


@dataclass(frozen=True)
class TraceRow:
    iteration: int
    penalty: float
    best: float
    cd_term: float
    cn_term: float


@dataclass
class ProbeResult:
    family: ProbeFamily
    n: int
    side: float
    seed: int
    best_coefficients: np.ndarray
    best_penalty: float
    evaluations: int
    trace: list[TraceRow] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "family": {
                "kind": self.family.kind,
                "D": self.family.D,
                "harmonics": list(self.family.harmonics),
                "n": self.family.n,
                "delta": self.family.radius,
            },
            "n": self.n,
            "side": self.side,
            "seed": self.seed,
            "best_coefficients": [float(v) for v in self.best_coefficients],
            "best_penalty": self.best_penalty,
            "evaluations": self.evaluations,
        }

    def trace_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["iteration", "penalty", "best", "cd_term", "cn_term"])
        for row in self.trace:
            w.writerow([row.iteration] + [repr(float(v)) for v in (row.penalty, row.best, row.cd_term, row.cn_term)])
        return buf.getvalue()


def counterexample_search(
    family: ProbeFamily,
    n: int,
    side: float,
    iterations: int = 200,
    restarts: int = 1,
    seed: int = 0,
    opts: VerificationOptions = PROBE_OPTIONS,
) -> ProbeResult:
    """Nelder-Mead over the coefficient sphere with seeded random restarts.

    ``iterations`` caps penalty evaluations per restart. Exhausting the budget
    is normal; the best point seen is returned.
    """
    if family.kind == "rotor" and family.n != n:
        raise ValueError("rotor family order must match n")
    rng = np.random.default_rng(seed)
    cap = 4.0 * (family.D**2 + side**2)
    trace: list[TraceRow] = []
    best = [math.inf, family.project(np.ones(family.dims))]

    def objective(x: np.ndarray) -> float:
        coeffs = family.project(x)
        try:
            cd, cn = penalty_terms(family.build(coeffs, side), family.D, n, side, opts)
            value = cd + cn
        except ConstructionError:
            cd = cn = value = cap
        if value < best[0]:
            best[0], best[1] = value, coeffs
        trace.append(TraceRow(len(trace), value, best[0], cd, cn))
        return value

    for _ in range(max(1, restarts)):
        x0 = family.project(rng.standard_normal(family.dims))
        minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={"maxfev": iterations, "maxiter": iterations, "xatol": 1e-12, "fatol": 1e-18},
        )
    return ProbeResult(family, n, side, seed, np.asarray(best[1]), float(best[0]), len(trace), trace)


@dataclass
class C2nReport:
    D: float
    n: int
    side: float
    diameter: VerificationReport
    polygon: VerificationReport
    diameter_defect: float
    polygon_defect: float
    periodicity_defect: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "D": self.D,
            "n": self.n,
            "polygon_order": 2 * self.n,
            "side": self.side,
            "diameter_passed": self.diameter.passed,
            "polygon_passed": self.polygon.passed,
            "diameter_defect": self.diameter_defect,
            "polygon_defect": self.polygon_defect,
            "periodicity_defect": self.periodicity_defect if math.isfinite(self.periodicity_defect) else None,
        }


def probe_c2n(
    curve: Curve, D: float, n: int, opts: VerificationOptions = VerificationOptions(theta_samples=128)
) -> C2nReport:
    """Check diameter ``D`` together with inscribed regular 2n-gons of circumdiameter ``D``.

    The defects are: worst ``|max chord - D|`` (plus one if uniqueness fails
    anywhere), the fraction of bases without exactly one 2n-gon, and
    ``max |G(theta + pi/n) - G(theta)|`` for the recovered midpoint curve
    (infinite when it cannot be recovered).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    side = D * math.sin(math.pi / (2 * n))
    cd = check_constant_diameter(curve, D, opts)
    cn = check_cn(curve, 2 * n, side, opts)
    cd_defect = cd.max_value_defect + (0.0 if cd.passed else 1.0)
    cn_defect = sum(1 for c in cn.counts if c != 1) / len(cn.counts)
    samples = 2 * n * math.ceil(1024 / (2 * n))
    try:
        rec = recover_midpoint_curve(curve, D, samples)
        g_defect = rec.shift_defect(math.pi / n)
    except (NormalMiss, NonMonotoneAngle):
        g_defect = math.inf
    return C2nReport(D, n, side, cd, cn, cd_defect, cn_defect, g_defect)
