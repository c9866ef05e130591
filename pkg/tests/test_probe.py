import math

import numpy as np
import pytest
from conftest import INV_SQRT2, reference_curve

from constwidth.curves import Circle, RotorCurve, Transformed
from constwidth.probe import ProbeFamily, counterexample_search, penalty, penalty_terms, probe_c2n


def test_circle_penalty_vanishes_for_several_orders():
    for n in (3, 4, 5, 6):
        assert penalty(Circle(0.5), 1.0, n, math.sin(math.pi / n)) < 1e-18


def test_penalty_is_rigid_motion_invariant(curve1):
    moved = Transformed(curve1, 0.4, (1.0, 2.0))
    assert penalty(moved, 1.0, 4, INV_SQRT2) == pytest.approx(penalty(curve1, 1.0, 4, INV_SQRT2), rel=1e-9)


def test_penalty_terms_split(curve1):
    cd, cn = penalty_terms(curve1, 1.0, 4, INV_SQRT2)
    assert cd < 1e-20
    assert cn > 1e-6


def test_rotor_pays_diameter_term_only():
    n = 3
    rotor = RotorCurve(n, 1.0, ((3, 0.01, 0.0),))
    cd, cn = penalty_terms(rotor, 2 * rotor.R, n, 1.0)
    assert cd > 0
    assert cn < 1e-16


def test_family_validation():
    with pytest.raises(ValueError):
        ProbeFamily("spline", 1.0, (3,))
    with pytest.raises(ValueError):
        ProbeFamily("trig", 1.0, (4,))
    with pytest.raises(ValueError):
        ProbeFamily("rotor", 1.0, (6,), n=4)
    with pytest.raises(ValueError):
        ProbeFamily("trig", 1.0, ())
    fam = ProbeFamily("rotor", 1.0, (4, 8), n=4)
    assert fam.dims == 8 and fam.radius == 0.05


def test_family_projects_onto_sphere():
    fam = ProbeFamily("trig", 2.0, (3, 5), delta=0.03)
    x = fam.project(np.array([1.0, -2.0, 0.5, 4.0]))
    assert np.linalg.norm(x) == pytest.approx(0.03, rel=1e-15)
    assert np.linalg.norm(fam.project(np.zeros(4))) == pytest.approx(0.03)


def test_search_is_deterministic_and_traced():
    fam = ProbeFamily("trig", 1.0, (3,))
    a = counterexample_search(fam, 4, INV_SQRT2, iterations=12, restarts=2, seed=3)
    b = counterexample_search(fam, 4, INV_SQRT2, iterations=12, restarts=2, seed=3)
    assert a.trace_csv() == b.trace_csv()
    assert a.evaluations == len(a.trace) <= 24
    assert a.best_penalty == min(r.penalty for r in a.trace)
    assert a.best_penalty > 0
    assert a.trace_csv().splitlines()[0] == "iteration,penalty,best,cd_term,cn_term"
    bests = [r.best for r in a.trace]
    assert bests == sorted(bests, reverse=True)


def test_trig_search_keeps_diameter_term_zero():
    fam = ProbeFamily("trig", 1.0, (3,))
    res = counterexample_search(fam, 2, 1.0, iterations=10, seed=1)
    assert all(r.cd_term < 1e-20 for r in res.trace)


def test_rotor_search_maps_construction_errors_to_cap():
    fam = ProbeFamily("rotor", 1.0, (4,), n=4, delta=5.0)
    res = counterexample_search(fam, 4, 1.0, iterations=5, seed=0)
    cap = 4.0 * (1.0 + 1.0)
    assert all(r.penalty == cap for r in res.trace)
    with pytest.raises(ValueError):
        counterexample_search(fam, 3, 1.0, iterations=5)


def test_probe_c2n_circle_and_curve1():
    for n in (2, 3):
        rep = probe_c2n(Circle(0.5), 1.0, n)
        assert rep.diameter_defect < 1e-9 and rep.polygon_defect == 0 and rep.periodicity_defect < 1e-9
        assert rep.to_dict()["polygon_order"] == 2 * n
    rep = probe_c2n(reference_curve("curve1"), 1.0, 2)
    assert rep.diameter_defect < 1e-9
    assert rep.polygon_defect == 1.0
    assert rep.periodicity_defect > 1e-3


@pytest.mark.slow
def test_long_search_stays_away_from_zero():
    fam = ProbeFamily("trig", 1.0, (3, 5))
    res = counterexample_search(fam, 4, INV_SQRT2, iterations=2000, seed=42)
    print(f"best penalty after {res.evaluations} evaluations: {res.best_penalty:.3e}")
    assert res.best_penalty > 0
    assert 0 < res.evaluations <= 2000
