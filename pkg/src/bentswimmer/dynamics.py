"""Resistive-force-theory equations of motion for the three-link swimmer.

At zero Reynolds number the swimmer obeys force- and torque-balance only. We
use five balances: total force on x and y; total torque about the proximal
end (x, y); torque on the tail pair {S2, S3} about the first joint; torque
on S3 alone about the second joint. Taking torques about the joints removes
the unknown joint constraint forces.

Drag is local and anisotropic: a point moving with velocity u on a segment
with frame (e, n) feels the force density

    f = -xi (u . e) e - eta (u . n) n        [pN / um]

Writing the rigid-chain velocity field at theta = 0 for each unit
generalized velocity and integrating f (and its moments) over each segment
gives the body-frame drag matrix M(alpha1, alpha2):

    M(alpha1, alpha2) . R_{-theta} Zdot  =  Y(state, H)

where R_theta is the block rotation (model.rotation_block) and Y collects
the negated magnetic and elastic generalized forces. All integrands are
polynomials of degree <= 2 in the arclength, so M is assembled in closed
form; a Gauss-quadrature oracle in the test suite checks it entrywise.

M is symmetric (the balance functionals and the velocity fields pair through
the same drag inner product) and its determinant is negative for every
physical shape, so the system inverts to the control-affine form

    R_{-theta} Zdot = F0 + H_par F1 + H_perp F2

with F0, F1, F2 combinations of columns 3..5 of M^{-1}.

Sign conventions: angles counterclockwise, torques about +z. The springs are
restoring: the spring at the first joint drives alpha1 to 0, the second
drives alpha2 to alpha0, which makes (alpha1, alpha2) = (0, alpha0) an
attracting rest shape under zero field (the opposite choice makes the rest
shape repelling and the whole model unphysical).
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import SingularMatrixError, lu_det, lu_factor, lu_solve
from .model import ControlField, SwimmerParams, SwimmerState

# |det M| below this (internal units) is treated as an assembly fault: the
# determinant is provably bounded away from zero on (-pi, pi)^2.
DET_WARN_FLOOR = 1e-14


def mobility_entries(
    a1: float, a2: float, ell: float, xi: float, eta: float
) -> list[list[float]]:
    """Closed-form 5x5 drag matrix at theta = 0, as a list of row lists.

    Unrolled over the three segments for speed (this sits inside the ODE
    right-hand side). For a velocity field a + s*b*n on a segment with frame
    (e, n) and origin o, the exact arclength integrals give

        force  = fe * e + fn * n,
        torque about r = fe * (d x e) + fn * (d x n) - eta*(l2*(a.n) + b*l3),

    with d = o - r, fe = -xi*ell*(a.e), fn = -eta*(ell*(a.n) + b*l2),
    l2 = ell^2/2, l3 = ell^3/3. Only the upper triangle is computed; M is
    symmetric because each balance row and each generalized velocity pair
    through the same drag inner product.
    """
    c1 = math.cos(a1)
    s1 = math.sin(a1)
    c12 = math.cos(a1 + a2)
    s12 = math.sin(a1 + a2)
    ca2 = c1 * c12 + s1 * s12  # cos(a2)
    sa2 = c1 * s12 - s1 * c12  # sin(a2)
    l2 = 0.5 * ell * ell
    l3 = ell * ell * ell / 3.0
    xl = xi * ell
    el = eta * ell
    el2 = eta * l2

    # --- segment 1: e=(1,0), n=(0,1), o=(0,0) ---------------------------
    # unit x, unit y, and rotation about its own origin (a = 0, b = 1)
    m00 = -xl
    m01 = 0.0
    m11 = -el
    m02 = 0.0
    m12 = -el2
    m22 = -eta * l3

    # --- segment 2: e=(c1,s1), n=(-s1,c1), o=(ell,0) --------------------
    m00 += -xl * c1 * c1 - el * s1 * s1
    m01 += (el - xl) * s1 * c1
    m11 += -xl * s1 * s1 - el * c1 * c1
    dxe = ell * s1  # (o - o1) x e
    dxn = ell * c1  # (o - o1) x n
    # rotation about o1: a = zhat x (o - o1) = (0, ell)
    fe = -xl * ell * s1
    fn = -eta * (ell * ell * c1 + l2)
    m02 += fe * c1 - fn * s1
    m12 += fe * s1 + fn * c1
    m22 += fe * dxe + fn * dxn - eta * (l2 * ell * c1 + l3)
    # rotation about o2 (own origin): a = 0
    m03 = el2 * s1
    m13 = -el2 * c1
    m23 = -el2 * ell * c1 - eta * l3  # torque of that field about o1
    m33 = -eta * l3

    # --- segment 3: e=(c12,s12), n=(-s12,c12), o=o2+ell*(c1,s1) ----------
    ox = ell + ell * c1
    oy = ell * s1
    m00 += -xl * c12 * c12 - el * s12 * s12
    m01 += (el - xl) * s12 * c12
    m11 += -xl * s12 * s12 - el * c12 * c12
    d1e = ox * s12 - oy * c12  # (o - o1) x e
    d1n = ox * c12 + oy * s12  # (o - o1) x n
    d2e = ell * sa2            # (o - o2) x e
    d2n = ell * ca2            # (o - o2) x n
    # rotation about o1: a = zhat x (o - o1) = (-oy, ox); a.e = d1e, a.n = d1n
    fe = -xl * d1e
    fn = -eta * (ell * d1n + l2)
    tz = -eta * (l2 * d1n + l3)
    m02 += fe * c12 - fn * s12
    m12 += fe * s12 + fn * c12
    m22 += fe * d1e + fn * d1n + tz
    m23 += fe * d2e + fn * d2n + tz
    m24 = tz
    # rotation about o2: a = zhat x (o - o2); a.e = d2e, a.n = d2n
    fe = -xl * d2e
    fn = -eta * (ell * d2n + l2)
    tz = -eta * (l2 * d2n + l3)
    m03 += fe * c12 - fn * s12
    m13 += fe * s12 + fn * c12
    m33 += fe * d2e + fn * d2n + tz
    m34 = tz
    # rotation about o3 (own origin): a = 0
    m04 = el2 * s12
    m14 = -el2 * c12
    m44 = -eta * l3

    return [
        [m00, m01, m02, m03, m04],
        [m01, m11, m12, m13, m14],
        [m02, m12, m22, m23, m24],
        [m03, m13, m23, m33, m34],
        [m04, m14, m24, m34, m44],
    ]


@dataclass(frozen=True)
class MobilityMatrix:
    """The 5x5 drag matrix M(alpha1, alpha2) and its determinant."""

    m: np.ndarray
    det_m: float


def build_mobility_matrix(
    alpha1: float, alpha2: float, params: SwimmerParams
) -> MobilityMatrix:
    rows = mobility_entries(alpha1, alpha2, params.ell, params.xi, params.eta)
    lu = [row[:] for row in rows]
    perm, parity = lu_factor(lu)
    det = lu_det(lu, parity)
    if abs(det) < DET_WARN_FLOOR:
        warnings.warn(
            f"near-singular drag matrix: det = {det:.3e} at "
            f"({alpha1}, {alpha2})",
            RuntimeWarning,
        )
    return MobilityMatrix(m=np.array(rows), det_m=det)


@dataclass(frozen=True)
class GeneralizedForce:
    """Right-hand side Y of the balance equations, split by origin.

    y = magnetic + elastic. The force rows (1, 2) are always zero: springs
    are internal and a uniform field exerts pure torques.
    """

    y: np.ndarray
    magnetic: np.ndarray
    elastic: np.ndarray


def _force_rows(
    alpha1: float,
    alpha2: float,
    h_par: float,
    h_perp: float,
    params: SwimmerParams,
) -> tuple[list[float], list[float]]:
    """(magnetic, elastic) rows as lists; rows 1-2 are zero."""
    s1 = math.sin(alpha1)
    c1 = math.cos(alpha1)
    s12 = math.sin(alpha1 + alpha2)
    c12 = math.cos(alpha1 + alpha2)
    m1, m2, m3 = params.m1, params.m2, params.m3
    g_sin = m2 * s1 + m3 * s12
    g_cos = m2 * c1 + m3 * c12
    magnetic = [
        0.0,
        0.0,
        h_par * g_sin - h_perp * (m1 + g_cos),
        h_par * g_sin - h_perp * g_cos,
        h_par * m3 * s12 - h_perp * m3 * c12,
    ]
    elastic = [
        0.0,
        0.0,
        0.0,
        params.kappa * alpha1,
        params.kappa * (alpha2 - params.alpha0),
    ]
    return magnetic, elastic


def assemble_generalized_force(
    state: SwimmerState, field: ControlField, params: SwimmerParams
) -> GeneralizedForce:
    magnetic, elastic = _force_rows(
        state.alpha1, state.alpha2, field.h_par, field.h_perp, params
    )
    mag = np.array(magnetic)
    ela = np.array(elastic)
    return GeneralizedForce(y=mag + ela, magnetic=mag, elastic=ela)


@dataclass(frozen=True)
class ControlVectorFields:
    """Drift and control fields of the control-affine system, plus the
    columns of M^{-1} they are built from."""

    f0: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    x3: np.ndarray
    x4: np.ndarray
    x5: np.ndarray


def _raw_fields(alpha1: float, alpha2: float, params: SwimmerParams):
    """(f0, f1, f2, x3, x4, x5) as lists. Hot path: no array allocation."""
    m = mobility_entries(alpha1, alpha2, params.ell, params.xi, params.eta)
    try:
        perm, parity = lu_factor(m)
    except SingularMatrixError as exc:  # provably unreachable for valid shapes
        raise SingularMatrixError(
            f"drag matrix singular at shape ({alpha1}, {alpha2}): {exc}"
        ) from exc
    det = lu_det(m, parity)
    if abs(det) < DET_WARN_FLOOR:
        warnings.warn(
            f"near-singular drag matrix: det = {det:.3e} at "
            f"({alpha1}, {alpha2})",
            RuntimeWarning,
        )
    x3 = lu_solve(m, perm, [0.0, 0.0, 1.0, 0.0, 0.0])
    x4 = lu_solve(m, perm, [0.0, 0.0, 0.0, 1.0, 0.0])
    x5 = lu_solve(m, perm, [0.0, 0.0, 0.0, 0.0, 1.0])
    s1 = math.sin(alpha1)
    c1 = math.cos(alpha1)
    s12 = math.sin(alpha1 + alpha2)
    c12 = math.cos(alpha1 + alpha2)
    g_sin = params.m2 * s1 + params.m3 * s12
    g_cos = params.m2 * c1 + params.m3 * c12
    ka = params.kappa * alpha1
    kb = params.kappa * (alpha2 - params.alpha0)
    m1, m3 = params.m1, params.m3
    f0 = [ka * x4[i] + kb * x5[i] for i in range(5)]
    f1 = [g_sin * (x3[i] + x4[i]) + m3 * s12 * x5[i] for i in range(5)]
    f2 = [
        -m1 * x3[i] - g_cos * (x3[i] + x4[i]) - m3 * c12 * x5[i]
        for i in range(5)
    ]
    return f0, f1, f2, x3, x4, x5


def control_vector_fields(
    alpha1: float, alpha2: float, params: SwimmerParams
) -> ControlVectorFields:
    f0, f1, f2, x3, x4, x5 = _raw_fields(alpha1, alpha2, params)
    return ControlVectorFields(
        f0=np.array(f0),
        f1=np.array(f1),
        f2=np.array(f2),
        x3=np.array(x3),
        x4=np.array(x4),
        x5=np.array(x5),
    )


def _raw_state_derivative(
    z: list[float], h_par: float, h_perp: float, params: SwimmerParams
) -> list[float]:
    """Zdot for z = [x, y, theta, alpha1, alpha2] as a list. Hot path."""
    f0, f1, f2, _, _, _ = _raw_fields(z[3], z[4], params)
    w0 = f0[0] + h_par * f1[0] + h_perp * f2[0]
    w1 = f0[1] + h_par * f1[1] + h_perp * f2[1]
    c = math.cos(z[2])
    s = math.sin(z[2])
    return [
        c * w0 - s * w1,
        s * w0 + c * w1,
        f0[2] + h_par * f1[2] + h_perp * f2[2],
        f0[3] + h_par * f1[3] + h_perp * f2[3],
        f0[4] + h_par * f1[4] + h_perp * f2[4],
    ]


def state_derivative(
    state: SwimmerState, field: ControlField, params: SwimmerParams
) -> np.ndarray:
    """Zdot = R_theta (F0 + H_par F1 + H_perp F2).

    Independent of (x, y); rotating the state and co-rotating the field
    (which is automatic in body components) rotates Zdot.
    """
    z = [state.x, state.y, state.theta, state.alpha1, state.alpha2]
    return np.array(_raw_state_derivative(z, field.h_par, field.h_perp, params))


def equilibrium_state(
    params: SwimmerParams, x: float = 0.0, y: float = 0.0, theta: float = 0.0
) -> SwimmerState:
    """The zero-field rest state (x, y, theta, 0, alpha0)."""
    return SwimmerState(x=x, y=y, theta=theta, alpha1=0.0, alpha2=params.alpha0)


__all__ = [
    "MobilityMatrix",
    "GeneralizedForce",
    "ControlVectorFields",
    "mobility_entries",
    "build_mobility_matrix",
    "assemble_generalized_force",
    "control_vector_fields",
    "state_derivative",
    "equilibrium_state",
]
