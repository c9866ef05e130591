"""Static SVG figures and CSV sample exports.

Output is a pure function of the inputs: coordinates are printed with a fixed
number of decimals and elements are emitted in a fixed order, so rendering
the same curve twice yields identical bytes.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from .curves import TWO_PI, Circle, ConstantDiameterCurve, Curve, PiecewiseArcCurve, RotorCurve
from .geometry import curvature
from .verify import VerificationOptions, find_inscribed_ngons, scan_chord_maxima

MARGIN = 0.05
DECIMALS = 6


@dataclass(frozen=True)
class RenderOptions:
    """Figure options. Stroke width and dot radius are fractions of ``D``."""

    samples: int = 720
    chords: int = 0
    ngon: int | None = None
    side: float | None = None
    show_centers: bool = False
    show_midpoint: bool = True
    stroke_width: float = 0.005
    dot_radius: float = 0.01

    def __post_init__(self) -> None:
        if self.samples < 64:
            raise ValueError("samples must be at least 64")
        if self.chords < 0:
            raise ValueError("chords must be non-negative")
        if self.ngon is not None and self.ngon < 2:
            raise ValueError("ngon must be at least 2")
        if not (self.stroke_width > 0 and self.dot_radius > 0):
            raise ValueError("stroke width and dot radius must be positive")


def _fmt(v: float) -> str:
    s = f"{v:.{DECIMALS}f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def _points_attr(pts: np.ndarray) -> str:
    # SVG's y axis points down; flip so figures read as in the plane
    return " ".join(f"{_fmt(x)},{_fmt(-y)}" for x, y in pts)


def _centers(curve: Curve) -> np.ndarray:
    if isinstance(curve, PiecewiseArcCurve):
        seen: list[tuple[float, float]] = []
        tol = 1e-9 * curve.scale
        for c in curve.centers:
            if not any(math.hypot(c[0] - s[0], c[1] - s[1]) <= tol for s in seen):
                seen.append(c)
        return np.array(seen)
    if isinstance(curve, Circle):
        return np.array([curve.center])
    return np.empty((0, 2))


def _chord_segments(curve: Curve, count: int) -> list[tuple[np.ndarray, np.ndarray]]:
    bases = np.arange(count) * (curve.period / count)
    if isinstance(curve, ConstantDiameterCurve):
        partners = bases + math.pi
    else:
        maxima = scan_chord_maxima(curve, bases, 2048, curve.scale, 1e-9 * curve.scale)
        partners = bases + np.array([m.argmax for m in maxima])
    return list(zip(curve.eval(bases), curve.eval(partners)))


def default_side(curve: Curve, n: int) -> float:
    """Side of the n-gon to overlay when none is given."""
    if isinstance(curve, RotorCurve) and n == curve.n:
        return curve.D
    return curve.scale * math.sin(math.pi / n)


def render_svg(curve: Curve, opts: RenderOptions = RenderOptions()) -> str:
    D = curve.scale
    sw = opts.stroke_width * D
    dot = opts.dot_radius * D
    u = np.arange(opts.samples) * (curve.period / opts.samples)
    pts = curve.eval(u)
    layers: list[str] = []
    extent = [pts]

    if opts.show_midpoint and isinstance(curve, ConstantDiameterCurve) and curve.terms:
        g = curve.midpoint(np.arange(opts.samples) * (TWO_PI / opts.samples))
        extent.append(g)
        layers.append(
            f'<polygon points="{_points_attr(g)}" fill="none" stroke="#808080" '
            f'stroke-width="{_fmt(sw)}" stroke-dasharray="{_fmt(4 * sw)} {_fmt(2 * sw)}"/>'
        )
    for a, b in _chord_segments(curve, opts.chords) if opts.chords else []:
        layers.append(
            f'<line x1="{_fmt(a[0])}" y1="{_fmt(-a[1])}" x2="{_fmt(b[0])}" y2="{_fmt(-b[1])}" '
            f'stroke="#1f5fbf" stroke-width="{_fmt(0.5 * sw)}"/>'
        )
    if opts.ngon is not None:
        side = opts.side if opts.side is not None else default_side(curve, opts.ngon)
        ws = find_inscribed_ngons(curve, 0.0, opts.ngon, side, VerificationOptions())
        if ws:
            verts = ws[0].vertices
            extent.append(verts)
            layers.append(
                f'<polygon points="{_points_attr(verts)}" fill="none" stroke="#c0392b" stroke-width="{_fmt(sw)}"/>'
            )
    layers.insert(0, f'<polygon points="{_points_attr(pts)}" fill="none" stroke="black" stroke-width="{_fmt(sw)}"/>')
    if opts.show_centers:
        cs = _centers(curve)
        if len(cs):
            extent.append(cs)
        for c in cs:
            layers.append(f'<circle cx="{_fmt(c[0])}" cy="{_fmt(-c[1])}" r="{_fmt(dot)}" fill="black"/>')

    allp = np.concatenate(extent)
    lo, hi = allp.min(axis=0), allp.max(axis=0)
    pad = MARGIN * float(max(hi - lo))
    x0, x1 = lo[0] - pad, hi[0] + pad
    y0, y1 = -hi[1] - pad, -lo[1] + pad
    w, h = x1 - x0, y1 - y0
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(x0)} {_fmt(y0)} {_fmt(w)} {_fmt(h)}" '
        f'width="{_fmt(500 * w / max(w, h))}" height="{_fmt(500 * h / max(w, h))}">'
    )
    return "\n".join([head, *layers, "</svg>"]) + "\n"


def export_csv(curve: Curve, samples: int) -> str:
    """Rows ``theta, x, y, kappa`` at ``samples`` equally spaced angles.

    ``theta`` runs over ``[0, 2 pi)`` and maps linearly onto the curve's
    native parameter. Values carry 17 significant digits, enough to
    reproduce every double exactly.
    """
    if samples < 1:
        raise ValueError("samples must be positive")
    k = np.arange(samples)
    theta = TWO_PI * k / samples
    u = theta if curve.period == TWO_PI else curve.period * k / samples
    pts = curve.eval(u)
    kappa = np.atleast_1d(curvature(curve, u))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "x", "y", "kappa"])
    for row in zip(theta, pts[:, 0], pts[:, 1], kappa):
        w.writerow(["%.17g" % v for v in row])
    return buf.getvalue()
