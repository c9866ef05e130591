import json
import math

import jsonschema
import numpy as np
import pytest
from conftest import INV_SQRT2, reference_curve

from constwidth.config import load_schema
from constwidth.curves import Circle, Ellipse, RotorCurve, Transformed, make_reuleaux, make_rotor
from constwidth.errors import NonMonotoneAngle, NormalMiss
from constwidth.verify import (
    VerificationOptions,
    check_cn,
    check_constant_diameter,
    check_square_center_property,
    detect_corners,
    find_inscribed_ngons,
    find_points_at_distance,
    recover_midpoint_curve,
    regular_polygon,
)

SMALL = VerificationOptions(theta_samples=64)


def _sorted_params(sols):
    return sorted(p for p, _ in sols)


# --- points at a given distance ---------------------------------------------------


def test_circle_diameter_is_a_tangential_touch(circle):
    sols = find_points_at_distance(circle, 0.4, 1.0)
    assert len(sols) == 1
    p, kind = sols[0]
    assert kind == "tangential"
    assert p == pytest.approx(0.4 + math.pi, abs=1e-6)


def test_circle_square_side_has_two_transversal_roots(circle):
    sols = find_points_at_distance(circle, 0.0, INV_SQRT2)
    assert [k for _, k in sols] == ["transversal", "transversal"]
    assert np.allclose(_sorted_params(sols), [math.pi / 2, 3 * math.pi / 2], atol=1e-10)


@pytest.mark.parametrize("t0, D", [(0.0, 0.8), (1.3, 0.5), (4.0, 0.95)])
def test_roots_match_dense_sign_scan(curve1, t0, D):
    phi = np.linspace(1e-4, 2 * math.pi - 1e-4, 400_001)
    f = np.hypot(*(curve1.eval(t0 + phi) - curve1.eval(t0)).T) - D
    idx = np.flatnonzero(np.sign(f[:-1]) != np.sign(f[1:]))
    # linear interpolation inside each sign change bracket
    dense = phi[idx] - f[idx] * (phi[idx + 1] - phi[idx]) / (f[idx + 1] - f[idx])
    got = np.sort(np.mod(np.array(_sorted_params(find_points_at_distance(curve1, t0, D))) - t0, 2 * math.pi))
    assert len(got) == len(dense)
    assert np.allclose(got, dense, atol=1e-8)


def test_no_points_beyond_the_diameter(curve1):
    assert find_points_at_distance(curve1, 0.0, 1.5) == []


def test_distance_roots_on_arc_chain(reuleaux):
    sols = find_points_at_distance(reuleaux, 0.1, 0.6)
    assert len(sols) == 2
    x = reuleaux.eval(0.1)
    for p, _ in sols:
        assert np.hypot(*(reuleaux.eval(p) - x)) == pytest.approx(0.6, abs=1e-10)


# --- inscribed polygons ------------------------------------------------------------


@pytest.mark.parametrize("n", [3, 4, 7])
def test_regular_polygon_geometry(n):
    x, y = np.array([0.2, -0.1]), np.array([1.0, 0.5])
    D = 0.3
    for sigma in (1, -1):
        v, c = regular_polygon(x, y, n, D, sigma)
        sides = np.hypot(*(np.roll(v, -1, axis=0) - v).T)
        assert np.allclose(sides, D, atol=1e-14)
        assert np.allclose(np.hypot(*(v - c).T), D / (2 * math.sin(math.pi / n)), atol=1e-14)
        e = (y - x) / np.hypot(*(y - x))
        assert np.allclose(v[1], x + D * e, atol=1e-14)


def test_rotor_has_exactly_one_square_per_base():
    R = 1 / math.sqrt(2)
    c = make_rotor(4, 1.0, [(4, 0.0, 0.02 * R)], [(4, 0.02 * R, 0.0)])
    ws = find_inscribed_ngons(c, 0.3, 4, 1.0)
    assert len(ws) == 1
    expected = c.eval(0.3 + np.arange(4) * math.pi / 2)
    got = ws[0].vertices
    for p in expected:
        assert np.min(np.hypot(*(got - p).T)) < 1e-9


def test_circle_has_one_inscribed_triangle(circle):
    ws = find_inscribed_ngons(circle, 1.0, 3, math.sqrt(3) / 2)
    assert len(ws) == 1
    assert ws[0].max_residual < 1e-12
    assert np.allclose(ws[0].center, [0.0, 0.0], atol=1e-12)


def test_two_gons_are_diametral_pairs(circle):
    ws = find_inscribed_ngons(circle, 0.0, 2, 1.0)
    assert len(ws) == 1 and ws[0].n == 2


def test_ngon_order_must_be_at_least_two(circle):
    with pytest.raises(ValueError):
        find_inscribed_ngons(circle, 0.0, 1, 1.0)
    with pytest.raises(ValueError):
        check_cn(circle, 1, 1.0)


def test_rotor_wrong_side_fails():
    c = RotorCurve(5, 1.0, ((5, 0.01, 0.0),))
    assert not check_cn(c, 5, 0.9, SMALL).passed


# --- certification reports ---------------------------------------------------------


def test_ellipse_fails_constant_diameter(ellipse):
    rep = check_constant_diameter(ellipse, 2.0, SMALL)
    assert not rep.passed
    assert rep.max_value_defect > 0.1


def test_reuleaux_passes_without_uniqueness(reuleaux):
    assert check_constant_diameter(reuleaux, 1.0, SMALL, require_unique=False).passed
    assert not check_constant_diameter(reuleaux, 1.0, SMALL, require_unique=True).passed


def test_rigid_motion_does_not_change_verdict(curve1):
    moved = Transformed(curve1, 2.0, (10.0, -4.0))
    assert check_constant_diameter(moved, 1.0, SMALL).passed


def test_wrong_diameter_fails(curve1):
    assert not check_constant_diameter(curve1, 0.99, SMALL).passed


def test_report_matches_schema(curve1):
    schema = load_schema("report")
    for rep in (check_constant_diameter(curve1, 1.0, SMALL), check_cn(curve1, 4, INV_SQRT2, SMALL)):
        doc = json.loads(json.dumps(rep.to_dict(with_witnesses=True)))
        jsonschema.validate(doc, schema)


def test_reports_independent_of_thread_count(monkeypatch, curve1):
    monkeypatch.setenv("CONSTWIDTH_THREADS", "1")
    a = check_cn(curve1, 3, math.sqrt(3) / 2, SMALL).to_dict(True)
    b = check_constant_diameter(curve1, 1.0, VerificationOptions(theta_samples=256)).to_dict()
    monkeypatch.setenv("CONSTWIDTH_THREADS", "4")
    assert check_cn(curve1, 3, math.sqrt(3) / 2, SMALL).to_dict(True) == a
    assert check_constant_diameter(curve1, 1.0, VerificationOptions(theta_samples=256)).to_dict() == b


def test_options_validation():
    with pytest.raises(ValueError):
        VerificationOptions(theta_samples=0)
    with pytest.raises(ValueError):
        VerificationOptions(value_tol=-1.0)
    with pytest.raises(ValueError):
        VerificationOptions(epsilon_margin=1.0)
    assert VerificationOptions().tolerances(2.0) == (2e-9, 2e-6, 2e-7)


# --- midpoint recovery and the square-center argument ----------------------------


def test_circle_recovery_is_constant(circle):
    rec = recover_midpoint_curve(circle, 1.0)
    assert np.max(np.abs(rec.r)) < 1e-12
    assert np.max(np.abs(rec.G)) < 1e-12
    assert rec.shift_defect(math.pi / 2) < 1e-12


def test_recovered_midpoint_curve_has_period_pi(curve1):
    rec = recover_midpoint_curve(curve1, 1.0, samples=2048)
    assert rec.shift_defect(math.pi) < 1e-9
    assert rec.shift_defect(math.pi / 2) > 1e-3
    with pytest.raises(ValueError):
        rec.shift_defect(0.1234)


def test_recovery_rejects_non_constant_diameter(ellipse):
    with pytest.raises((NormalMiss, NonMonotoneAngle)):
        recover_midpoint_curve(ellipse, 2.0)


def test_square_center_property():
    circ = check_square_center_property(Circle(0.5), 1.0, SMALL)
    assert circ.passed and circ.bases_count_not_one == []
    assert circ.max_abs_r < 1e-12
    c1 = check_square_center_property(reference_curve("curve1"), 1.0, SMALL)
    assert len(c1.bases_count_not_one) == 64
    assert c1.max_abs_r > 0.1
    assert c1.to_dict()["per_base"][0]["count"] == 0


# --- corners --------------------------------------------------------------------


def test_corners_of_reuleaux_pentagon():
    corners = detect_corners(make_reuleaux(5, 1.0))
    assert len(corners) == 5
    assert all(abs(a - math.pi / 5) < 1e-12 for _, a in corners)


@pytest.mark.parametrize(
    "curve",
    [Circle(1.0), Ellipse(1.0, 0.3), RotorCurve(4, 1.0, ((4, 0.01, 0.0),)), reference_curve("curve2")],
    ids=["circle", "ellipse", "rotor", "curve2"],
)
def test_smooth_curves_have_no_corners(curve):
    assert detect_corners(curve) == []


def test_close_roots_inside_one_grid_cell_are_resolved(circle):
    sols = find_points_at_distance(circle, 0.0, 1 - 1e-8)
    assert [k for _, k in sols] == ["transversal", "transversal"]
    expected = [math.pi - 2 * math.acos(1 - 1e-8), math.pi + 2 * math.acos(1 - 1e-8)]
    assert np.allclose(_sorted_params(sols), expected, atol=1e-9)
    # inside the value tolerance the two merge into one touch; beyond the diameter nothing remains
    assert [k for _, k in find_points_at_distance(circle, 0.0, 1 - 1e-13)] == ["tangential"]
    assert find_points_at_distance(circle, 0.0, 1 + 1e-8) == []
