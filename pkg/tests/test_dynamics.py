import math

import numpy as np
import pytest

from bentswimmer.dynamics import (
    assemble_generalized_force,
    build_mobility_matrix,
    control_vector_fields,
    equilibrium_state,
    state_derivative,
)
from bentswimmer.integrators import IntegratorOptions, integrate
from bentswimmer.linalg import SingularMatrixError, lu_factor, solve
from bentswimmer.model import ControlField, SwimmerState, rotation_block

from conftest import table1
from oracles import cofactor_inverse, fd_jacobian, magnetic_row_sums, quadrature_mobility

ZERO = ControlField(0.0, 0.0)


# ------------------------------------------------------------------ mobility

def test_mobility_deterministic(params):
    a = build_mobility_matrix(0.3, -0.7, params)
    b = build_mobility_matrix(0.3, -0.7, params)
    np.testing.assert_array_equal(a.m, b.m)
    assert a.det_m == b.det_m


def test_mobility_symmetric(params):
    rng = np.random.default_rng(3)
    for _ in range(50):
        a1, a2 = rng.uniform(-3.1, 3.1, 2)
        m = build_mobility_matrix(a1, a2, params).m
        np.testing.assert_allclose(m, m.T, rtol=0, atol=1e-12 * np.abs(m).max())


def test_mobility_against_quadrature_oracle(params):
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(50):
        a1, a2 = rng.uniform(-math.pi + 0.01, math.pi - 0.01, 2)
        m = build_mobility_matrix(a1, a2, params).m
        ref = quadrature_mobility(a1, a2, params)
        scale = np.abs(ref).max()
        worst = max(worst, float(np.abs(m - ref).max() / scale))
    assert worst <= 1e-10


def test_mobility_theta_independent(params):
    # the quadrature assembly at any orientation must reproduce the same
    # body-frame matrix
    for th in (0.0, 0.9, -2.3, 4.0):
        ref = quadrature_mobility(0.5, 1.0, params, theta=th)
        m = build_mobility_matrix(0.5, 1.0, params).m
        np.testing.assert_allclose(m, ref, rtol=1e-10, atol=1e-12)


def test_mobility_determinant_negative_straight(params):
    assert build_mobility_matrix(0.0, 0.0, params).det_m < 0.0


def test_mobility_determinant_negative_grid(params):
    pts = np.linspace(-math.pi + 0.01, math.pi - 0.01, 41)
    for a1 in pts:
        for a2 in pts:
            assert build_mobility_matrix(a1, a2, params).det_m < 0.0


# ---------------------------------------------------------- generalized force

def test_force_zero_at_rest_without_field(params):
    state = SwimmerState(0.4, -2.0, 1.3, 0.0, params.alpha0)
    y = assemble_generalized_force(state, ZERO, params)
    np.testing.assert_array_equal(y.y, np.zeros(5))


def test_force_row3_straight_perpendicular_field(params):
    h = ControlField(0.0, 123.0)
    state = SwimmerState(0, 0, 0, 0.0, 0.0)
    y = assemble_generalized_force(state, h, params)
    expected = -123.0 * (params.m1 + params.m2 + params.m3)
    assert y.y[2] == pytest.approx(expected, rel=1e-14)
    assert y.y[0] == 0.0 and y.y[1] == 0.0


def test_force_rows_match_closed_forms(params):
    # rows 3..5 as explicit trigonometric polynomials; restoring springs
    rng = np.random.default_rng(13)
    k = params.kappa
    m1, m2, m3 = params.m1, params.m2, params.m3
    for _ in range(1000):
        a1, a2 = rng.uniform(-3.1, 3.1, 2)
        hp, hq = rng.uniform(-1e4, 1e4, 2)
        state = SwimmerState(0, 0, rng.uniform(-5, 5), a1, a2)
        y = assemble_generalized_force(state, ControlField(hp, hq), params).y
        s1, c1 = math.sin(a1), math.cos(a1)
        s12, c12 = math.sin(a1 + a2), math.cos(a1 + a2)
        row3 = hp * (m2 * s1 + m3 * s12) - hq * (m1 + m2 * c1 + m3 * c12)
        row4 = k * a1 + hp * (m2 * s1 + m3 * s12) - hq * (m2 * c1 + m3 * c12)
        row5 = k * (a2 - params.alpha0) + hp * m3 * s12 - hq * m3 * c12
        for got, want in zip(y[2:], (row3, row4, row5)):
            assert abs(got - want) <= 1e-12 * max(1.0, abs(want))


def test_force_magnetic_part_against_cross_product_oracle(params):
    rng = np.random.default_rng(17)
    for _ in range(500):
        a1, a2 = rng.uniform(-3.1, 3.1, 2)
        th = rng.uniform(-7, 7)
        hp, hq = rng.uniform(-1e4, 1e4, 2)
        state = SwimmerState(0, 0, th, a1, a2)
        field = ControlField(hp, hq)
        got = assemble_generalized_force(state, field, params).magnetic
        hx, hy = field.lab_components(th)
        want = magnetic_row_sums(state, hx, hy, params)
        for g, w in zip(got[2:], want):
            assert abs(g - w) <= 1e-10 * max(1.0, abs(w))


def test_force_elastic_part_is_energy_gradient(params):
    # elastic rows equal the gradient of U = k/2 (a1^2 + (a2-a0)^2)
    k, a0 = params.kappa, params.alpha0

    def energy(a1, a2):
        return 0.5 * k * (a1 * a1 + (a2 - a0) ** 2)

    rng = np.random.default_rng(19)
    for _ in range(100):
        a1, a2 = rng.uniform(-3.0, 3.0, 2)
        state = SwimmerState(0, 0, 0, a1, a2)
        ela = assemble_generalized_force(state, ZERO, params).elastic
        d = 1e-6
        g1 = (energy(a1 + d, a2) - energy(a1 - d, a2)) / (2 * d)
        g2 = (energy(a1, a2 + d) - energy(a1, a2 - d)) / (2 * d)
        assert ela[3] == pytest.approx(g1, rel=1e-8, abs=1e-3)
        assert ela[4] == pytest.approx(g2, rel=1e-8, abs=1e-3)


# ------------------------------------------------------- control vector fields

def test_f0_vanishes_at_rest_shape(params):
    cvf = control_vector_fields(0.0, params.alpha0, params)
    np.testing.assert_array_equal(cvf.f0, np.zeros(5))


def test_f1_vanishes_straight(params):
    cvf = control_vector_fields(0.0, 0.0, params)
    np.testing.assert_array_equal(cvf.f1, np.zeros(5))


def test_columns_solve_unit_systems(params):
    cvf = control_vector_fields(0.4, -0.9, params)
    m = build_mobility_matrix(0.4, -0.9, params).m
    for k, col in ((2, cvf.x3), (3, cvf.x4), (4, cvf.x5)):
        e = np.zeros(5)
        e[k] = 1.0
        np.testing.assert_allclose(m @ col, e, atol=1e-12)


def test_fields_against_cofactor_inverse_oracle(params):
    rng = np.random.default_rng(23)
    for _ in range(25):
        a1, a2 = rng.uniform(-3.0, 3.0, 2)
        cvf = control_vector_fields(a1, a2, params)
        minv = cofactor_inverse(build_mobility_matrix(a1, a2, params).m)
        for got, col in ((cvf.x3, 2), (cvf.x4, 3), (cvf.x5, 4)):
            np.testing.assert_allclose(got, minv[:, col], rtol=1e-10, atol=1e-14)
        k, a0 = params.kappa, params.alpha0
        s1, c1 = math.sin(a1), math.cos(a1)
        s12, c12 = math.sin(a1 + a2), math.cos(a1 + a2)
        f0 = k * (a1 * minv[:, 3] + (a2 - a0) * minv[:, 4])
        f1 = (params.m2 * s1 + params.m3 * s12) * (minv[:, 2] + minv[:, 3]) \
            + params.m3 * s12 * minv[:, 4]
        f2 = -params.m1 * minv[:, 2] \
            - (params.m2 * c1 + params.m3 * c12) * (minv[:, 2] + minv[:, 3]) \
            - params.m3 * c12 * minv[:, 4]
        scale = max(1.0, float(np.abs(f2).max()))
        np.testing.assert_allclose(cvf.f0, f0, rtol=1e-9, atol=1e-9 * scale)
        np.testing.assert_allclose(cvf.f1, f1, rtol=1e-9, atol=1e-9 * scale)
        np.testing.assert_allclose(cvf.f2, f2, rtol=1e-9, atol=1e-9 * scale)


def test_f2_nonzero_at_bent_rest(params):
    cvf = control_vector_fields(0.0, params.alpha0, params)
    assert np.linalg.norm(cvf.f2) > 1e-3


def test_singular_solve_raises():
    singular = [[1.0, 2.0], [2.0, 4.0]]
    with pytest.raises(SingularMatrixError):
        lu_factor([row[:] for row in singular])
    with pytest.raises(SingularMatrixError):
        solve(singular, [1.0, 1.0])


# ------------------------------------------------------------ state derivative

def test_derivative_zero_at_equilibrium(params):
    st = equilibrium_state(params, x=2.0, y=-1.0, theta=0.7)
    np.testing.assert_array_equal(state_derivative(st, ZERO, params), np.zeros(5))


def test_derivative_translation_invariant(params):
    rng = np.random.default_rng(29)
    for _ in range(200):
        th = rng.uniform(-5, 5)
        a1, a2 = rng.uniform(-3.0, 3.0, 2)
        h = ControlField(*rng.uniform(-1e3, 1e3, 2))
        z1 = state_derivative(SwimmerState(0, 0, th, a1, a2), h, params)
        z2 = state_derivative(SwimmerState(13.0, -8.5, th, a1, a2), h, params)
        np.testing.assert_array_equal(z1, z2)


def test_derivative_rotation_equivariant(params):
    rng = np.random.default_rng(31)
    for _ in range(500):
        th = rng.uniform(-5, 5)
        phi = rng.uniform(-5, 5)
        a1, a2 = rng.uniform(-3.0, 3.0, 2)
        h = ControlField(*rng.uniform(-1e3, 1e3, 2))  # body components co-rotate
        z1 = state_derivative(SwimmerState(0, 0, th, a1, a2), h, params)
        z2 = state_derivative(SwimmerState(0, 0, th + phi, a1, a2), h, params)
        np.testing.assert_allclose(
            z2, rotation_block(phi) @ z1,
            atol=1e-12 * max(1.0, float(np.linalg.norm(z1))),
        )


def test_equilibrium_shape_is_unique(params):
    # away from (0, alpha0) the zero-field drift is nonzero
    pts = np.linspace(-math.pi + 0.05, math.pi - 0.05, 41)
    for a1 in pts:
        for a2 in pts:
            if math.hypot(a1, a2 - params.alpha0) <= 1e-6:
                continue
            z = state_derivative(SwimmerState(0, 0, 0, a1, a2), ZERO, params)
            assert np.linalg.norm(z) > 0.0


def test_open_loop_relaxation_to_bent_shape(params):
    a0 = params.alpha0

    def rhs(t, z):
        return list(
            state_derivative(SwimmerState.from_array(z), ZERO, params)
        )

    opts = IntegratorOptions(method="trapezoidal_adaptive")
    res = integrate(rhs, [0, 0, 0, 0.3, a0 + 0.4], (0.0, 5e-4), opts)
    assert res.status == "completed"
    zf = res.z_final
    assert abs(zf[3]) < 1e-6
    assert abs(zf[4] - a0) < 1e-6


def test_shape_block_eigenvalues_stable():
    from bentswimmer.controllability import linearize

    for a0 in (math.pi / 6, math.pi / 3):
        p = table1(alpha0=a0)
        lin = linearize(equilibrium_state(p), p)
        block = lin.a[3:, 3:]
        eig = np.linalg.eigvals(block)
        assert (eig.real < 0.0).all()


def test_analytic_jacobian_matches_finite_differences(params):
    # Jacobian of the zero-field derivative at the rest shape
    from bentswimmer.controllability import linearize

    st = equilibrium_state(params, theta=0.9, x=3.0, y=-2.0)
    lin = linearize(st, params)

    def fun(z):
        return state_derivative(SwimmerState.from_array(z), ZERO, params)

    jac = fd_jacobian(fun, st.as_array(), step=1e-6)
    scale = np.abs(lin.a).max()
    assert np.abs(jac - lin.a).max() / scale <= 1e-6
