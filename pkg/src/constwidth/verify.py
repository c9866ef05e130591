"""Numerical certification of constant diameter and inscribed-polygon properties.

Two properties are checked pointwise over a grid of base points ``x = gamma(u)``:

* constant diameter ``D``: the farthest curve point from ``x`` is at distance
  exactly ``D`` and (optionally) is the only point at that distance;
* inscribed ``n``-gons: exactly one regular ``n``-gon of side ``D`` with all
  vertices on the curve has ``x`` as a vertex.

Everything is driven by the chord function ``f_u(phi) = |gamma(u) - gamma(u + phi)|``
sampled on a uniform ``phi`` grid and refined by golden-section (maxima) or
bisection (crossings of ``D``). Tolerances are floating-point and documented
on :class:`VerificationOptions`; nothing here is interval-certified.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._numerics import bisect, chunked, golden_section, ordered_map
from .curves import TWO_PI, Curve, PiecewiseArcCurve, Transformed
from .geometry import REFINE_TOL, inward_normal, nearest_points, turning_angles
from .errors import NonMonotoneAngle, NormalMiss

BASE_CHUNK = 64
PLATEAU_SEPARATION = 1e-3  # radians of normalized angle
PLATEAU_MIN_POINTS = 3
ROOT_DEDUP = 1e-9


@dataclass(frozen=True)
class VerificationOptions:
    """Sampling densities and tolerances.

    Tolerances left as ``None`` scale with the length ``D`` being checked:
    ``value_tol = 1e-9 D``, ``uniq_tol = 1e-6 D``, ``membership_tol = 1e-7 D``.
    """

    theta_samples: int = 512
    phi_samples: int = 2048
    value_tol: float | None = None
    uniq_tol: float | None = None
    membership_tol: float | None = None
    epsilon_margin: float = 0.1

    def __post_init__(self) -> None:
        if self.theta_samples < 1 or self.phi_samples < 8:
            raise ValueError("sample counts must be positive (phi_samples >= 8)")
        for name in ("value_tol", "uniq_tol", "membership_tol"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ValueError(f"{name} must be positive")
        if not 0 < self.epsilon_margin < math.pi / 4:
            raise ValueError("epsilon_margin must lie in (0, pi/4)")

    def tolerances(self, D: float) -> tuple[float, float, float]:
        return (
            self.value_tol if self.value_tol is not None else 1e-9 * D,
            self.uniq_tol if self.uniq_tol is not None else 1e-6 * D,
            self.membership_tol if self.membership_tol is not None else 1e-7 * D,
        )


DEFAULT_OPTIONS = VerificationOptions()


def _bases(curve: Curve, count: int) -> np.ndarray:
    return np.arange(count) * (curve.period / count)


def _phi_grid(curve: Curve, count: int) -> np.ndarray:
    return np.arange(1, count) * (curve.period / count)


def _chord_rows(curve: Curve, bases: np.ndarray, phis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    x = curve.eval(bases)
    p = curve.eval(bases[:, None] + phis[None, :])
    d = p - x[:, None, :]
    return x, np.hypot(d[..., 0], d[..., 1])


def _chord_fun(curve: Curve, base_of_bracket: np.ndarray):
    x = curve.eval(base_of_bracket)

    def f(phi: np.ndarray) -> np.ndarray:
        d = curve.eval(base_of_bracket + phi) - x
        return np.hypot(d[:, 0], d[:, 1])

    return f


# ---------------------------------------------------------------------------
# Chord maxima


@dataclass
class ChordMaxima:
    """Refined local maxima of one chord function."""

    base: float
    max_value: float
    argmax: float
    second_value: float
    plateau: bool


def _separated_count(phis: np.ndarray, sep: float) -> int:
    count, last = 0, -np.inf
    for p in np.sort(phis):
        if p - last > sep:
            count += 1
            last = p
    return count


def scan_chord_maxima(
    curve: Curve, bases: np.ndarray, phi_samples: int, D: float, value_tol: float
) -> list[ChordMaxima]:
    """Global maximum, runner-up maximum and plateau flag per base."""
    phis = _phi_grid(curve, phi_samples)
    h = curve.period / phi_samples
    dedup = 1e-6 * curve.period
    sep = PLATEAU_SEPARATION * curve.period / TWO_PI

    def work(sl: slice) -> list[ChordMaxima]:
        b = bases[sl]
        _, F = _chord_rows(curve, b, phis)
        inner = F[:, 1:-1]
        peak = (inner >= F[:, :-2]) & (inner >= F[:, 2:])
        rows, cols = np.nonzero(peak)
        cols = cols + 1
        x, fx = golden_section(
            _chord_fun(curve, b[rows]), phis[cols] - h, phis[cols] + h, tol=REFINE_TOL, maximize=True
        )
        out = []
        for i in range(len(b)):
            sel = rows == i
            px, pf = x[sel], fx[sel]
            j = int(np.argmax(F[i]))
            px = np.append(px, phis[j])
            pf = np.append(pf, F[i, j])
            order = np.argsort(-pf, kind="stable")
            px, pf = px[order], pf[order]
            best_x, best_f = float(px[0]), float(pf[0])
            far = np.abs(px - best_x) > dedup
            second = float(pf[far][0]) if np.any(far) else -np.inf
            near = np.concatenate([phis[np.abs(F[i] - D) <= value_tol], px[np.abs(pf - D) <= value_tol]])
            plateau = _separated_count(near, sep) >= PLATEAU_MIN_POINTS
            out.append(ChordMaxima(float(b[i]), best_f, best_x, second, plateau))
        return out

    parts = ordered_map(work, chunked(len(bases), BASE_CHUNK))
    return [m for part in parts for m in part]


# ---------------------------------------------------------------------------
# Points at a given distance


@dataclass(frozen=True)
class DistanceSolution:
    phi: float  # offset from the base, native units
    kind: str  # "transversal" or "tangential"

    def param(self, base: float, period: float) -> float:
        return float(np.mod(base + self.phi, period))


def _solutions_for_rows(
    curve: Curve, bases: np.ndarray, phis: np.ndarray, F: np.ndarray, D: float, tol: float
) -> list[list[DistanceSolution]]:
    h = phis[1] - phis[0]
    g = F - D
    sgn = np.where(g > tol, 1, np.where(g < -tol, -1, 0))
    lo_b, hi_b, base_b = [], [], []
    for i in range(len(bases)):
        nz = np.flatnonzero(sgn[i])
        if nz.size < 2:
            continue
        sv = sgn[i, nz]
        ch = np.flatnonzero(sv[1:] != sv[:-1])
        lo_b.extend(phis[nz[ch]])
        hi_b.extend(phis[nz[ch + 1]])
        base_b.extend([i] * len(ch))
    base_b = np.asarray(base_b, dtype=int)
    lo_b = np.asarray(lo_b, dtype=float)
    hi_b = np.asarray(hi_b, dtype=float)

    # grid extrema near D: tangential touches, or double crossings the grid missed
    inner = F[:, 1:-1]
    is_max = (inner >= F[:, :-2]) & (inner >= F[:, 2:])
    is_min = (inner <= F[:, :-2]) & (inner <= F[:, 2:])
    slack = 2.0 * curve.max_speed() * h
    tang_base, tang_phi = [], []
    extra_lo, extra_hi, extra_base = [], [], []
    for kind_mask, maximize in ((is_max, True), (is_min, False)):
        cand = kind_mask & (np.abs(inner - D) <= slack)
        rows, cols = np.nonzero(cand)
        if rows.size == 0:
            continue
        cols = cols + 1
        x, fx = golden_section(
            _chord_fun(curve, bases[rows]), phis[cols] - h, phis[cols] + h, tol=REFINE_TOL, maximize=maximize
        )
        for r, c, xv, fv in zip(rows, cols, x, fx):
            if abs(fv - D) <= tol:
                tang_base.append(r)
                tang_phi.append(xv)
                continue
            outside = -1 if maximize else 1
            crossed = (fv - D > tol) if maximize else (D - fv > tol)
            if crossed and sgn[r, c - 1] == outside and sgn[r, c + 1] == outside and sgn[r, c] != -outside:
                extra_lo += [phis[c - 1], xv]
                extra_hi += [xv, phis[c + 1]]
                extra_base += [r, r]
    if extra_base:
        lo_b = np.concatenate([lo_b, extra_lo])
        hi_b = np.concatenate([hi_b, extra_hi])
        base_b = np.concatenate([base_b, np.asarray(extra_base, dtype=int)])

    roots = np.empty(0)
    if base_b.size:
        fb = _chord_fun(curve, bases[base_b])
        roots = bisect(lambda p: fb(p) - D, lo_b, hi_b, tol=REFINE_TOL)

    out: list[list[DistanceSolution]] = [[] for _ in range(len(bases))]
    for r, p in zip(base_b, roots):
        out[r].append(DistanceSolution(float(p), "transversal"))
    for r, p in zip(tang_base, tang_phi):
        out[r].append(DistanceSolution(float(p), "tangential"))
    dedup = ROOT_DEDUP * curve.period / TWO_PI
    for i, sols in enumerate(out):
        sols.sort(key=lambda s: (s.phi, s.kind))
        kept: list[DistanceSolution] = []
        for s in sols:
            if kept and s.phi - kept[-1].phi <= dedup:
                if s.kind == "tangential":
                    kept[-1] = s
                continue
            kept.append(s)
        out[i] = kept
    return out


def _points_at_distance(
    curve: Curve, bases: np.ndarray, D: float, opts: VerificationOptions
) -> list[list[DistanceSolution]]:
    phis = _phi_grid(curve, opts.phi_samples)
    value_tol = opts.tolerances(D)[0]

    def work(sl: slice):
        b = bases[sl]
        _, F = _chord_rows(curve, b, phis)
        return _solutions_for_rows(curve, b, phis, F, D, value_tol)

    parts = ordered_map(work, chunked(len(bases), BASE_CHUNK))
    return [s for part in parts for s in part]


def find_points_at_distance(
    curve: Curve, t0: float, D: float, opts: VerificationOptions = DEFAULT_OPTIONS
) -> list[tuple[float, str]]:
    """All curve parameters at distance ``D`` from ``gamma(t0)``.

    Returns ``(parameter, kind)`` pairs, kind being ``"transversal"`` for sign
    changes of ``f - D`` and ``"tangential"`` for touches at a local extremum.
    """
    sols = _points_at_distance(curve, np.array([float(t0)]), D, opts)[0]
    return [(s.param(float(t0), curve.period), s.kind) for s in sols]


# ---------------------------------------------------------------------------
# Inscribed regular polygons


@dataclass
class NGonWitness:
    base: float
    vertices: np.ndarray
    orientation: str
    residuals: np.ndarray
    center: np.ndarray

    @property
    def max_residual(self) -> float:
        return float(np.max(self.residuals))

    @property
    def n(self) -> int:
        return len(self.vertices)

    def to_dict(self) -> dict[str, Any]:
        return {
            "base": self.base,
            "orientation": self.orientation,
            "vertices": self.vertices.tolist(),
            "center": self.center.tolist(),
            "residuals": self.residuals.tolist(),
            "max_residual": self.max_residual,
        }


def regular_polygon(x: np.ndarray, y: np.ndarray, n: int, D: float, sigma: int) -> tuple[np.ndarray, np.ndarray]:
    """Regular n-gon of side ``D`` with ``x`` as a vertex and an edge toward ``y``.

    ``sigma = +1`` puts the center left of ``x -> y`` (counterclockwise
    polygon), ``-1`` right. Returns ``(vertices, center)``; vertex 1 lies on
    the ray from ``x`` through ``y`` at distance exactly ``D``.
    """
    e = (y - x) / np.hypot(*(y - x))
    perp = np.array([-e[1], e[0]])
    apothem = 0.5 * D / math.tan(math.pi / n)
    c = x + 0.5 * D * e + sigma * apothem * perp
    k = np.arange(n)
    ang = sigma * TWO_PI * k / n
    cs, sn = np.cos(ang), np.sin(ang)
    v = x - c
    verts = c + np.stack([cs * v[0] - sn * v[1], sn * v[0] + cs * v[1]], axis=-1)
    verts[0] = x
    return verts, c


def _same_polygon(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    if len(a) != len(b):
        return False
    d = np.hypot(a[:, None, 0] - b[None, :, 0], a[:, None, 1] - b[None, :, 1])
    return bool(np.all(np.min(d, axis=1) <= tol) and np.all(np.min(d, axis=0) <= tol))


def _witnesses_for_bases(
    curve: Curve, bases: np.ndarray, n: int, D: float, opts: VerificationOptions
) -> list[list[NGonWitness]]:
    member_tol = opts.tolerances(D)[2]
    sols = _points_at_distance(curve, bases, D, opts)
    xs = curve.eval(bases)
    ys_all = [curve.eval(np.array([b + s.phi for s in ss])) if ss else np.empty((0, 2)) for b, ss in zip(bases, sols)]
    candidates: list[tuple[int, np.ndarray, np.ndarray, str]] = []
    for i, (x, ys) in enumerate(zip(xs, ys_all)):
        for y in ys:
            if n == 2:
                candidates.append((i, np.stack([x, y]), 0.5 * (x + y), "ccw"))
                continue
            for sigma, label in ((1, "ccw"), (-1, "cw")):
                verts, c = regular_polygon(x, y, n, D, sigma)
                candidates.append((i, verts, c, label))
    out: list[list[NGonWitness]] = [[] for _ in bases]
    if not candidates:
        return out
    if n == 2:
        resid = np.zeros((len(candidates), 2))
    else:
        queries = np.concatenate([v[1:] for _, v, _, _ in candidates])
        _, dist = nearest_points(curve, queries, cutoff=member_tol)
        resid = np.concatenate([np.zeros((len(candidates), 1)), dist.reshape(len(candidates), n - 1)], axis=1)
    # polygons closer than the membership tolerance cannot be told apart
    same_tol = max(1e-9 * curve.scale, member_tol)
    for (i, verts, c, label), rr in zip(candidates, resid):
        if np.max(rr) >= member_tol:
            continue
        if any(_same_polygon(w.vertices, verts, same_tol) for w in out[i]):
            continue
        out[i].append(NGonWitness(float(bases[i]), verts, label, rr, c))
    return out


def find_inscribed_ngons(
    curve: Curve, t0: float, n: int, D: float, opts: VerificationOptions = DEFAULT_OPTIONS
) -> list[NGonWitness]:
    """Distinct regular n-gons of side ``D`` inscribed in the curve at ``gamma(t0)``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return _witnesses_for_bases(curve, np.array([float(t0)]), n, D, opts)[0]


# ---------------------------------------------------------------------------
# Reports


def _finite(x: float) -> float | None:
    return float(x) if math.isfinite(x) else None


@dataclass
class BaseRecord:
    base: float
    passed: bool
    max_chord: float | None = None
    argmax: float | None = None
    uniqueness_gap: float | None = None
    plateau: bool = False
    ngon_count: int | None = None
    max_residual: float | None = None
    witnesses: list[NGonWitness] = field(default_factory=list)

    def to_dict(self, with_witnesses: bool = False) -> dict[str, Any]:
        d = {k: v for k, v in asdict(self).items() if k != "witnesses"}
        for k in ("max_chord", "argmax", "uniqueness_gap", "max_residual"):
            if d[k] is not None:
                d[k] = _finite(d[k])
        if with_witnesses:
            d["witnesses"] = [w.to_dict() for w in self.witnesses]
        return d


@dataclass
class VerificationReport:
    property: str  # "C(D)" or "C_n(D)"
    D: float
    n: int
    passed: bool
    records: list[BaseRecord]
    require_unique: bool = True
    options: VerificationOptions = DEFAULT_OPTIONS

    @property
    def failed_bases(self) -> list[float]:
        return [r.base for r in self.records if not r.passed]

    @property
    def plateau_bases(self) -> list[float]:
        return [r.base for r in self.records if r.plateau]

    @property
    def counts(self) -> list[int]:
        return [r.ngon_count if r.ngon_count is not None else 0 for r in self.records]

    def worst(self) -> BaseRecord:
        if self.property == "C(D)":
            def badness(r: BaseRecord) -> tuple:
                return (not r.passed, abs((r.max_chord or 0.0) - self.D))
        else:
            def badness(r: BaseRecord) -> tuple:
                return (not r.passed, r.max_residual if r.max_residual is not None else 0.0)
        return max(self.records, key=badness)

    @property
    def max_value_defect(self) -> float:
        vals = [abs(r.max_chord - self.D) for r in self.records if r.max_chord is not None]
        return max(vals, default=0.0)

    def to_dict(self, with_witnesses: bool = False) -> dict[str, Any]:
        value_tol, uniq_tol, member_tol = self.options.tolerances(self.D)
        worst = self.worst()
        return {
            "property": self.property,
            "D": self.D,
            "n": self.n,
            "passed": self.passed,
            "require_unique": self.require_unique,
            "options": {
                "theta_samples": self.options.theta_samples,
                "phi_samples": self.options.phi_samples,
                "value_tol": value_tol,
                "uniq_tol": uniq_tol,
                "membership_tol": member_tol,
                "epsilon_margin": self.options.epsilon_margin,
            },
            "summary": {
                "bases": len(self.records),
                "failed": len(self.failed_bases),
                "plateau_bases": self.plateau_bases,
                "worst": worst.to_dict(),
            },
            "per_base": [r.to_dict(with_witnesses) for r in self.records],
        }


def check_constant_diameter(
    curve: Curve,
    D: float,
    opts: VerificationOptions = DEFAULT_OPTIONS,
    require_unique: bool = True,
) -> VerificationReport:
    """Certify that every base point has its farthest point at distance ``D``.

    With ``require_unique`` the farthest point must also be isolated: every
    other local maximum of the chord function stays below ``D - uniq_tol`` and
    no diametral plateau (three or more near-``D`` maxima spread over more
    than a milliradian) occurs.
    """
    value_tol, uniq_tol, _ = opts.tolerances(D)
    bases = _bases(curve, opts.theta_samples)
    records = []
    for m in scan_chord_maxima(curve, bases, opts.phi_samples, D, value_tol):
        ok = abs(m.max_value - D) <= value_tol
        gap = D - m.second_value
        if require_unique:
            ok = ok and not m.plateau and m.second_value < D - uniq_tol
        records.append(BaseRecord(m.base, ok, m.max_value, m.argmax, gap, m.plateau))
    return VerificationReport("C(D)", D, 2, all(r.passed for r in records), records, require_unique, opts)


def check_cn(curve: Curve, n: int, D: float, opts: VerificationOptions = DEFAULT_OPTIONS) -> VerificationReport:
    """Pass iff exactly one inscribed regular n-gon of side ``D`` exists at every base."""
    if n < 2:
        raise ValueError("n must be at least 2")
    bases = _bases(curve, opts.theta_samples)

    def work(sl: slice) -> list[list[NGonWitness]]:
        return _witnesses_for_bases(curve, bases[sl], n, D, opts)

    parts = ordered_map(work, chunked(len(bases), 64))
    witnesses = [w for part in parts for w in part]
    records = []
    for b, ws in zip(bases, witnesses):
        res = max((w.max_residual for w in ws), default=None)
        records.append(BaseRecord(float(b), len(ws) == 1, ngon_count=len(ws), max_residual=res, witnesses=ws))
    return VerificationReport("C_n(D)", D, n, all(r.passed for r in records), records, True, opts)


# ---------------------------------------------------------------------------
# Midpoint curve recovery


@dataclass
class MidpointRecovery:
    theta: np.ndarray
    G: np.ndarray
    r: np.ndarray
    G_prime: np.ndarray
    chord_angle: np.ndarray  # unwrapped chord angle at each native sample
    normal_residual: float

    @property
    def orthogonality_defect(self) -> float:
        u = np.stack([np.cos(self.theta), np.sin(self.theta)], axis=-1)
        return float(np.max(np.abs(np.sum(self.G_prime * u, axis=-1))))

    def shift_defect(self, shift: float) -> float:
        """``max |G(theta + shift) - G(theta)|`` on the grid (shift a grid multiple)."""
        h = TWO_PI / len(self.theta)
        k = int(round(shift / h))
        if abs(k * h - shift) > 1e-9:
            raise ValueError("shift must be a multiple of the grid spacing")
        d = np.roll(self.G, -k, axis=0) - self.G
        return float(np.max(np.hypot(d[:, 0], d[:, 1])))


def _fd4_periodic(values: np.ndarray, h: float) -> np.ndarray:
    r = lambda k: np.roll(values, -k, axis=0)  # noqa: E731
    return (-r(2) + 8 * r(1) - 8 * r(-1) + r(-2)) / (12 * h)


def recover_midpoint_curve(
    curve: Curve, D: float, samples: int = 1024, opts: VerificationOptions = DEFAULT_OPTIONS
) -> MidpointRecovery:
    """Midpoints of diametral chords indexed by chord angle, and the profile ``r``.

    Each partner point is found along the inward normal at distance ``D``;
    the chord angle must increase strictly through one full turn.
    """
    member_tol = opts.tolerances(D)[2]
    u = np.arange(samples) * (curve.period / samples)
    x = curve.eval(u)
    y = x + D * inward_normal(curve, u)
    _, dist = nearest_points(curve, y)
    worst = float(np.max(dist))
    if worst >= member_tol:
        k = int(np.argmax(dist))
        raise NormalMiss(f"normal point at u = {u[k]:.12g} misses the curve by {worst:.3g}", worst)
    d = x - y
    ang = np.unwrap(np.arctan2(d[:, 1], d[:, 0]))
    step = np.diff(np.append(ang, ang[0] + TWO_PI))
    if np.any(step <= 0):
        raise NonMonotoneAngle("diametral chord angle is not strictly increasing")
    total = ang[-1] + step[-1] - ang[0]
    if abs(total - TWO_PI) > 1e-6:
        raise NonMonotoneAngle(f"chord angle turns by {total:.9g}, expected 2 pi")
    mid = 0.5 * (x + y)
    # periodic extension, then resample on a uniform angle grid
    ext_ang = np.concatenate([ang - TWO_PI, ang, ang + TWO_PI])
    ext_mid = np.concatenate([mid, mid, mid])
    theta = np.arange(samples) * (TWO_PI / samples)
    shift = np.floor((ang[0]) / TWO_PI) * TWO_PI
    G = PchipInterpolator(ext_ang, ext_mid, axis=0)(theta + shift)
    Gp = _fd4_periodic(G, TWO_PI / samples)
    r = -Gp[:, 0] * np.sin(theta) + Gp[:, 1] * np.cos(theta)
    return MidpointRecovery(theta, G, r, Gp, ang, worst)


# ---------------------------------------------------------------------------
# Square-center argument


@dataclass
class SquareCenterReport:
    D: float
    bases: list[float]
    counts: list[int]
    diagonal_errors: list[float | None]
    center_errors: list[float | None]
    passed: bool
    max_abs_r: float | None
    quarter_shift_defect: float | None

    @property
    def bases_count_not_one(self) -> list[float]:
        return [b for b, c in zip(self.bases, self.counts) if c != 1]

    def to_dict(self) -> dict[str, Any]:
        return {
            "D": self.D,
            "passed": self.passed,
            "bases_count_not_one": self.bases_count_not_one,
            "max_abs_r": self.max_abs_r,
            "quarter_shift_defect": self.quarter_shift_defect,
            "per_base": [
                {"base": b, "count": c, "diagonal_error": de, "center_error": ce}
                for b, c, de, ce in zip(self.bases, self.counts, self.diagonal_errors, self.center_errors)
            ],
        }


def check_square_center_property(
    curve: Curve, D: float, opts: VerificationOptions = DEFAULT_OPTIONS
) -> SquareCenterReport:
    """Where a unique inscribed square of diagonal ``D`` exists, its far vertex
    must be the diametral partner and its center the chord midpoint.

    Bases with a square count other than one are listed, not failed.
    """
    member_tol = opts.tolerances(D)[2]
    bases = _bases(curve, opts.theta_samples)
    side = D / math.sqrt(2.0)
    wit = _witnesses_for_bases(curve, bases, 4, side, opts)
    x = curve.eval(bases)
    y = x + D * inward_normal(curve, bases)
    g = 0.5 * (x + y)
    counts, derr, cerr = [], [], []
    ok = True
    for i, ws in enumerate(wit):
        counts.append(len(ws))
        if len(ws) != 1:
            derr.append(None)
            cerr.append(None)
            continue
        w = ws[0]
        de = float(np.hypot(*(w.vertices[2] - y[i])))
        ce = float(np.hypot(*(w.center - g[i])))
        derr.append(de)
        cerr.append(ce)
        ok = ok and de < member_tol and ce < member_tol
    max_r = shift_def = None
    try:
        samples = 4 * max(1, opts.theta_samples // 4)
        rec = recover_midpoint_curve(curve, D, samples, opts)
        max_r = float(np.max(np.abs(rec.r)))
        shift_def = rec.shift_defect(math.pi / 2)
    except (NormalMiss, NonMonotoneAngle):
        pass
    return SquareCenterReport(D, [float(b) for b in bases], counts, derr, cerr, ok, max_r, shift_def)


# ---------------------------------------------------------------------------
# Corners


def _arc_chain(curve: Curve) -> PiecewiseArcCurve | None:
    while isinstance(curve, Transformed):
        curve = curve.base
    return curve if isinstance(curve, PiecewiseArcCurve) else None


def detect_corners(curve: Curve, samples: int = 8192, jump_tol: float = 1e-6) -> list[tuple[float, float]]:
    """Tangent discontinuities as ``(parameter, exterior turning angle)``.

    Arc chains are inspected exactly at their junctions. For other curves the
    largest tangent-angle increment on ``samples`` points must halve when the
    spacing halves; if it does not, the offending location is reported.
    """
    arcs = _arc_chain(curve)
    if arcs is not None:
        return [(p, t) for p, t in arcs.junction_turns() if abs(t) > jump_tol]
    coarse = np.abs(turning_angles(curve, samples))
    fine = np.abs(turning_angles(curve, 2 * samples))
    if np.max(fine) <= 0.6 * np.max(coarse) or np.max(fine) <= jump_tol:
        return []
    k = int(np.argmax(fine))
    u = (k + 0.5) * curve.period / (2 * samples)
    return [(float(u), float(turning_angles(curve, 2 * samples)[k]))]
