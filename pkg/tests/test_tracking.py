import math

import numpy as np
import pytest

from bentswimmer.dynamics import control_vector_fields, equilibrium_state, state_derivative
from bentswimmer.integrators import IntegratorOptions
from bentswimmer.model import SwimmerState
from bentswimmer.records import CSV_COLUMNS
from bentswimmer.tracking import (
    OUTCOME_COMPLETED,
    OUTCOME_SINGULAR,
    TrackingSingularity,
    Trajectory,
    circle_trajectory,
    constant_trajectory,
    line_trajectory,
    scan_determinant,
    simulate_closed_loop,
    solve_tracking_controls,
    tracking_determinant,
    waypoint_trajectory,
)

from oracles import cofactor_inverse


# ---------------------------------------------------------------- determinant

def test_determinant_zero_straight(params):
    assert tracking_determinant(0.0, 0.0, params) == 0.0


def test_determinant_nonzero_at_bent_rest(params):
    assert abs(tracking_determinant(0.0, params.alpha0, params)) > 1.0


def test_determinant_against_cofactor_path(params):
    from bentswimmer.dynamics import build_mobility_matrix

    a1, a2 = 0.4, -0.9
    minv = cofactor_inverse(build_mobility_matrix(a1, a2, params).m)
    s1, c1 = math.sin(a1), math.cos(a1)
    s12, c12 = math.sin(a1 + a2), math.cos(a1 + a2)
    f1 = (params.m2 * s1 + params.m3 * s12) * (minv[:, 2] + minv[:, 3]) \
        + params.m3 * s12 * minv[:, 4]
    f2 = -params.m1 * minv[:, 2] \
        - (params.m2 * c1 + params.m3 * c12) * (minv[:, 2] + minv[:, 3]) \
        - params.m3 * c12 * minv[:, 4]
    want = f1[0] * f2[1] - f1[1] * f2[0]
    got = tracking_determinant(a1, a2, params)
    assert got == pytest.approx(want, rel=1e-9)


def test_scan_reports_origin_and_off_origin_minimum(params):
    scan = scan_determinant(params, 51)
    assert abs(scan.d_origin) <= 1e-12
    assert scan.min_abs_off_origin > 0.0
    assert scan.values.shape == (51, 51)
    # the grid stays inside the open square (folded shapes excluded)
    assert scan.grid.min() > -math.pi and scan.grid.max() < math.pi


def test_scan_degenerate_grid(params):
    scan = scan_determinant(params, 2)
    assert scan.values.shape == (2, 2)
    assert np.isfinite(scan.values).all()


def test_scan_rejects_bad_grid(params):
    with pytest.raises(ValueError):
        scan_determinant(params, 1)


# ---------------------------------------------------------------- trajectories

def test_trajectory_fd_fallback():
    traj = Trajectory(f=lambda t: t * t, g=lambda t: math.sin(t), horizon=2.0)
    assert traj.df(0.5) == pytest.approx(1.0, rel=1e-6)
    assert traj.dg(0.5) == pytest.approx(math.cos(0.5), rel=1e-6)
    assert traj.max_derivative_mismatch() < 1e-6


def test_trajectory_presets_are_consistent():
    line = line_trajectory((1.0, -2.0), math.radians(30), 5.0, 2.0)
    circ = circle_trajectory((0.0, 5.0), 5.0, 20.0, turns=1.0, phase=-math.pi / 2)
    wps = waypoint_trajectory([0.0, 0.5, 1.0, 1.5], [0, 1, 3, 4], [0, 1, -1, 0])
    const = constant_trajectory((2.0, 3.0), 1.0)
    for traj in (line, circ, wps, const):
        assert traj.max_derivative_mismatch() < 1e-6
    assert circ.start() == pytest.approx((0.0, 0.0), abs=1e-12)
    assert circ.horizon == pytest.approx(2 * math.pi / 20.0)
    assert wps.f(0.5) == pytest.approx(1.0, abs=1e-12)


def test_circle_start_point_form():
    circ = circle_trajectory((0.0, 5.0), 5.0, 20.0, start=(0.0, 0.0))
    assert circ.start() == pytest.approx((0.0, 0.0), abs=1e-9)
    with pytest.raises(ValueError):
        circle_trajectory((0.0, 5.0), 5.0, 20.0, start=(1.0, 0.0))


def test_waypoint_validation():
    with pytest.raises(ValueError):
        waypoint_trajectory([0.0, 1.0], [0, 1], [0, 1])  # too few
    with pytest.raises(ValueError):
        waypoint_trajectory([0.0, 1.0, 0.5], [0, 1, 2], [0, 1, 2])
    with pytest.raises(ValueError):
        waypoint_trajectory([0.1, 0.5, 1.0], [0, 1, 2], [0, 1, 2])


# ------------------------------------------------------------- feedback solve

def test_controls_zero_at_rest_zero_demand(params):
    st = equilibrium_state(params)
    h = solve_tracking_controls(st, 0.0, 0.0, params)
    assert h.h_par == 0.0 and h.h_perp == 0.0


def test_controls_singular_at_straight_shape(params):
    st = SwimmerState(0, 0, 0, 0.0, 0.0)
    with pytest.raises(TrackingSingularity):
        solve_tracking_controls(st, 1.0, 0.0, params)


def test_controls_residual_small_demand(params):
    # bent rest state, 1 um/s demand: the absolute 2x2 defect stays tiny
    st = SwimmerState(0, 0, 0, 0.0, math.pi / 3)
    p = params
    h = solve_tracking_controls(st, 1.0, 0.0, p)
    cvf = control_vector_fields(0.0, math.pi / 3, p)
    r1 = 1.0 - cvf.f0[0]
    r2 = 0.0 - cvf.f0[1]
    res1 = cvf.f1[0] * h.h_par + cvf.f2[0] * h.h_perp - r1
    res2 = cvf.f1[1] * h.h_par + cvf.f2[1] * h.h_perp - r2
    assert max(abs(res1), abs(res2)) <= 1e-10


def test_noninteraction_exact_velocity(params):
    # with the solved field substituted, (xdot, ydot) equals the demand at
    # any state, each channel untouched by the other
    rng = np.random.default_rng(53)
    for _ in range(200):
        st = SwimmerState(
            rng.uniform(-5, 5),
            rng.uniform(-5, 5),
            rng.uniform(-6, 6),
            rng.uniform(-2.5, 2.5),
            rng.uniform(-2.5, 2.5),
        )
        if abs(tracking_determinant(st.alpha1, st.alpha2, params)) < 1e-3:
            continue
        fp, gp = rng.uniform(-100, 100, 2)
        h = solve_tracking_controls(st, fp, gp, params)
        zdot = state_derivative(st, h, params)
        scale = max(1.0, float(np.abs(zdot).max()))
        assert abs(zdot[0] - fp) <= 1e-10 * scale
        assert abs(zdot[1] - gp) <= 1e-10 * scale
        # each channel only sees its own demand: perturbing one leaves the
        # other's velocity untouched
        h2 = solve_tracking_controls(st, fp, gp + 37.0, params)
        zdot2 = state_derivative(st, h2, params)
        assert abs(zdot2[0] - fp) <= 1e-10 * max(1.0, float(np.abs(zdot2).max()))
        h3 = solve_tracking_controls(st, fp - 12.0, gp, params)
        zdot3 = state_derivative(st, h3, params)
        assert abs(zdot3[1] - gp) <= 1e-10 * max(1.0, float(np.abs(zdot3).max()))


# ------------------------------------------------------------- closed loop

def test_constant_trajectory_stays_at_rest(params):
    st = equilibrium_state(params, x=1.0, y=2.0)
    traj = constant_trajectory((1.0, 2.0), 1e-3)
    record, status = simulate_closed_loop(
        st, traj, params,
        IntegratorOptions(method="trapezoidal_adaptive"),
        samples=50,
    )
    assert status.outcome == OUTCOME_COMPLETED
    np.testing.assert_allclose(record.column("x"), 1.0, atol=1e-9)
    np.testing.assert_allclose(record.column("y"), 2.0, atol=1e-9)
    np.testing.assert_allclose(record.column("h_par"), 0.0, atol=1e-9)
    np.testing.assert_allclose(record.column("h_perp"), 0.0, atol=1e-9)
    assert status.max_field_norm <= 1e-9


def test_initial_position_mismatch_rejected(params):
    st = equilibrium_state(params)
    traj = constant_trajectory((0.5, 0.0), 1.0)
    with pytest.raises(ValueError):
        simulate_closed_loop(st, traj, params)


def test_short_line_tracks_exactly(params):
    st = equilibrium_state(params)
    traj = line_trajectory((0.0, 0.0), 0.0, 50.0, 0.02)
    record, status = simulate_closed_loop(st, traj, params, samples=200)
    assert status.outcome == OUTCOME_COMPLETED
    assert status.max_feedback_residual <= 1e-10
    t = record.column("t")
    err = np.hypot(record.column("x") - 50.0 * t, record.column("y"))
    assert err.max() <= 1e-8  # 10x the 1e-9 integrator tolerance
    # record sanity: increasing time, finite rows, schema
    assert (np.diff(t) > 0).all()
    assert np.isfinite(record.data).all()
    assert record.data.shape[1] == len(CSV_COLUMNS)


def test_backward_line_aborts_with_blowup(params):
    st = equilibrium_state(params)
    traj = line_trajectory((0.0, 0.0), math.pi, 50.0, 0.2)
    record, status = simulate_closed_loop(st, traj, params, samples=400)
    assert status.outcome == OUTCOME_SINGULAR
    assert status.t_stop < 0.2
    assert status.min_abs_d <= 1e-8
    # shape has straightened out
    assert abs(record.column("alpha1")[-1]) < 0.05
    assert abs(record.column("alpha2")[-1]) < 0.05
    # field blow-up signature over the sampled series
    h = np.hypot(record.column("h_par"), record.column("h_perp"))
    h = h[np.isfinite(h)]
    tail = h[int(math.ceil(0.99 * len(h))) - 1:]
    assert tail.max() >= 10.0 * np.median(h)


def test_custom_eps_d_is_honoured(params):
    st = equilibrium_state(params)
    traj = line_trajectory((0.0, 0.0), math.pi, 50.0, 0.2)
    _, status = simulate_closed_loop(st, traj, params, eps_d=1e-2, samples=50)
    assert status.outcome == OUTCOME_SINGULAR
    assert status.min_abs_d <= 1e-2
