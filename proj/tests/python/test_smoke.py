"""Smoke tests for the trivortex Python bindings."""

import math

import pytest

tv = pytest.importorskip("trivortex")


def strengths():
    return tv.parabolic_strengths(2.0, 1.0)


def test_strengths_and_classification():
    s = strengths()
    assert s.k3 == pytest.approx(-2.0 / 3.0)
    assert abs(s.K) < 1e-14
    assert tv.classify_k(s) == tv.KClass.parabolic
    with pytest.raises(tv.TrivortexError):
        tv.parabolic_strengths(1.0, 2.0)


def test_geometry_values():
    s = strengths()
    x = tv.TrilinearPoint(0.18195, 0.44396, 0.37409, 1)
    assert tv.cal_y(x, s) == pytest.approx(-0.00498, abs=1e-4)
    assert tv.ibar(x, s) == pytest.approx(0.68503, abs=1e-4)

    cp = tv.critical_points(s)
    assert cp.i4 == pytest.approx(0.46605, abs=1e-4)
    assert cp.i5 == pytest.approx(0.31786, abs=1e-4)
    assert cp.i6 == pytest.approx(4.0 / 27.0)
    assert cp.q5.x2 == pytest.approx(0.5)

    ab = tv.to_alpha_beta(x)
    back = tv.from_alpha_beta(ab, 1)
    assert back.x1 == pytest.approx(x.x1, abs=1e-14)


def test_short_integration_and_classification():
    s = strengths()
    spec = tv.InitialSpec([0.18195, 0.44396, 0.37409], 1, s)
    state = tv.positions_from_config(spec)
    assert abs(s.k1 * state.z1 + s.k2 * state.z2 + s.k3 * state.z3) < 1e-13

    settings = tv.IntegratorSettings()
    settings.t_max = 5.0
    record = tv.integrate(state, s, settings)
    assert record.drift.ibar_rel < 1e-6
    assert len(record.crossings) == 1
    assert record.crossings[0].edge == tv.Edge.Q3Q1

    report = tv.observe(record, s)
    assert report.observed_type == tv.TrajectoryType.I

    pred = tv.predict(tv.TrilinearPoint(0.18195, 0.44396, 0.37409, 1), s)
    assert pred.type == tv.TrajectoryType.I


def test_similar_solution():
    s = strengths()
    x = tv.curve_point(0.4, s)
    sol = tv.similar_solution(x, s, 1, 1.0)
    assert sol.expanding
    assert sol.p_at(0.1) == pytest.approx(
        math.sqrt(1.0 + 0.1 * sol.p_squared_rate))
    back = tv.similar_solution(x, s, -1, 1.0)
    assert not back.expanding
    assert back.coalescence_time == pytest.approx(0.1296945, abs=1e-6)


def test_point_at_offset_roundtrip():
    s = strengths()
    x = tv.point_at_offset(0.685, -0.005, 1, s)
    assert tv.ibar(x, s) == pytest.approx(0.685, abs=1e-11)
    assert tv.cal_y(x, s) == pytest.approx(-0.005, abs=1e-11)
