"""Adaptive time integration for the open- and closed-loop swimmer ODEs.

Two methods:

* ``adaptive_explicit_rk45`` -- the classic Fehlberg 4(5) embedded pair,
  propagating the fifth-order solution. Cheap per step, but the step size is
  capped by the fast shape-relaxation eigenvalues (order kappa / (eta l^3),
  around 2e6 s^-1 for the tabulated parameters).

* ``trapezoidal_adaptive`` -- implicit trapezoidal rule with simplified
  Newton iterations (finite-difference Jacobian, reused within a step) and a
  step-doubling error estimate. A-stable, so steps are limited by accuracy
  alone; the unextrapolated two-half-step solution is propagated to keep
  A-stability.

The right-hand side is ``rhs(t, z) -> list[float]`` over plain float lists.
An rhs may raise IntegrationSignal (or a subclass) to stop the run cleanly:
the integrator returns everything accepted so far with status
``terminated_by_signal`` instead of failing. Dense output between accepted
points is cubic Hermite.

All arithmetic is deterministic: identical inputs give bit-identical output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import SingularMatrixError, lu_factor, lu_solve

METHOD_RK45 = "adaptive_explicit_rk45"
METHOD_TRAPEZOIDAL = "trapezoidal_adaptive"
METHODS = (METHOD_RK45, METHOD_TRAPEZOIDAL)

STATUS_COMPLETED = "completed"
STATUS_SIGNAL = "terminated_by_signal"
STATUS_STEP_COLLAPSE = "step_collapse"
STATUS_MAX_STEPS = "max_steps"

# Fehlberg 4(5): nodes, stage coefficients, 5th-order weights, and the
# (5th - 4th)-order error weights. Row sums of B equal the nodes and the
# weights satisfy the order-5 quadrature conditions; the test suite checks
# both in exact rational arithmetic.
_RK_A = (0.0, 1 / 4, 3 / 8, 12 / 13, 1.0, 1 / 2)
_RK_B = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40),
)
_RK_C5 = (16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55)
_RK_ERR = (1 / 360, 0.0, -128 / 4275, -2197 / 75240, 1 / 50, 2 / 55)

_SAFETY = 0.9
_SHRINK_MIN = 0.2
_GROW_MAX = 5.0
_NEWTON_MAX_ITER = 8
_NEWTON_KAPPA = 0.05


class IntegrationSignal(Exception):
    """Typed early-termination channel for right-hand sides."""


@dataclass(frozen=True)
class IntegratorOptions:
    method: str = METHOD_RK45
    abs_tol: float = 1e-9
    rel_tol: float = 1e-9
    h_init: float = 1e-7
    h_min: float = 1e-14
    h_max: float = math.inf
    max_steps: int = 5_000_000

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        if not (self.abs_tol > 0.0 and self.rel_tol > 0.0):
            raise ValueError("tolerances must be positive")
        if not (0.0 < self.h_min <= self.h_init <= self.h_max):
            raise ValueError(
                f"need 0 < h_min <= h_init <= h_max, got "
                f"({self.h_min}, {self.h_init}, {self.h_max})"
            )
        if self.max_steps < 1:
            raise ValueError("max_steps must be at least 1")


@dataclass
class IntegrationResult:
    """Accepted nodes (times, states, derivatives) plus a status."""

    status: str
    t: np.ndarray
    z: np.ndarray
    f: np.ndarray
    t_stop: float
    signal: IntegrationSignal | None = None
    n_steps: int = 0
    n_rejected: int = 0
    n_evals: int = 0
    meta: dict = field(default_factory=dict)

    @property
    def z_final(self) -> np.ndarray:
        return self.z[-1]

    def sample(self, times) -> np.ndarray:
        """Cubic Hermite interpolation at the requested times.

        Times are clamped to [t[0], t_stop].
        """
        tq = np.atleast_1d(np.asarray(times, dtype=float))
        tq = np.clip(tq, self.t[0], self.t_stop)
        out = np.empty((tq.size, self.z.shape[1]))
        idx = np.searchsorted(self.t, tq, side="right") - 1
        idx = np.clip(idx, 0, len(self.t) - 2) if len(self.t) > 1 else idx * 0
        for row, (tau, i) in enumerate(zip(tq, idx)):
            if len(self.t) == 1:
                out[row] = self.z[0]
                continue
            t0, t1 = self.t[i], self.t[i + 1]
            h = t1 - t0
            if h <= 0.0:
                out[row] = self.z[i]
                continue
            u = (tau - t0) / h
            u2 = u * u
            u3 = u2 * u
            h00 = 2 * u3 - 3 * u2 + 1
            h10 = u3 - 2 * u2 + u
            h01 = -2 * u3 + 3 * u2
            h11 = u3 - u2
            out[row] = (
                h00 * self.z[i]
                + h10 * h * self.f[i]
                + h01 * self.z[i + 1]
                + h11 * h * self.f[i + 1]
            )
        return out


def integrate(rhs, z0, t_span, opts: IntegratorOptions | None = None) -> IntegrationResult:
    """Integrate zdot = rhs(t, z) over t_span with the selected method."""
    if opts is None:
        opts = IntegratorOptions()
    t0, t1 = float(t_span[0]), float(t_span[1])
    if not t1 > t0:
        raise ValueError(f"need t1 > t0, got {t_span!r}")
    z0 = [float(v) for v in z0]
    if opts.method == METHOD_RK45:
        return _integrate_rk45(rhs, z0, t0, t1, opts)
    return _integrate_trapezoidal(rhs, z0, t0, t1, opts)


def _result(status, ts, zs, fs, signal, nstep, nrej, nev):
    return IntegrationResult(
        status=status,
        t=np.array(ts),
        z=np.array(zs),
        f=np.array(fs),
        t_stop=ts[-1],
        signal=signal,
        n_steps=nstep,
        n_rejected=nrej,
        n_evals=nev,
    )


def _integrate_rk45(rhs, z0, t0, t1, opts) -> IntegrationResult:
    n = len(z0)
    atol, rtol = opts.abs_tol, opts.rel_tol
    ts = [t0]
    zs = [list(z0)]
    fs: list[list[float]] = []
    nstep = nrej = nev = 0
    t = t0
    z = list(z0)
    h = min(opts.h_init, t1 - t0, opts.h_max)
    try:
        fcur = rhs(t, z)
        nev += 1
    except IntegrationSignal as sig:
        fs.append([0.0] * n)
        return _result(STATUS_SIGNAL, ts, zs, fs, sig, 0, 0, nev)
    fs.append(list(fcur))
    ks: list[list[float]] = [fcur] + [[0.0] * n for _ in range(5)]
    t_snap = 1e-14 * max(1.0, abs(t1))  # float-residue guard at the endpoint
    while t1 - t > t_snap:
        if nstep + nrej >= opts.max_steps:
            return _result(STATUS_MAX_STEPS, ts, zs, fs, None, nstep, nrej, nev)
        h = min(h, t1 - t, opts.h_max)
        try:
            for i in range(1, 6):
                zi = list(z)
                bi = _RK_B[i]
                for j in range(i):
                    bij = bi[j]
                    if bij != 0.0:
                        kj = ks[j]
                        hb = h * bij
                        for q in range(n):
                            zi[q] += hb * kj[q]
                ks[i] = rhs(t + _RK_A[i] * h, zi)
                nev += 1
        except IntegrationSignal as sig:
            return _result(STATUS_SIGNAL, ts, zs, fs, sig, nstep, nrej, nev)
        err = 0.0
        for q in range(n):
            e = 0.0
            for i in range(6):
                w = _RK_ERR[i]
                if w != 0.0:
                    e += w * ks[i][q]
            e *= h
            sc = atol + rtol * abs(z[q])
            r = abs(e) / sc
            if r > err:
                err = r
        if err <= 1.0:
            for q in range(n):
                acc = 0.0
                for i in range(6):
                    w = _RK_C5[i]
                    if w != 0.0:
                        acc += w * ks[i][q]
                z[q] += h * acc
            t += h
            nstep += 1
            ts.append(t)
            zs.append(list(z))
            try:
                fcur = rhs(t, z)
                nev += 1
            except IntegrationSignal as sig:
                fs.append(list(fs[-1]))
                return _result(STATUS_SIGNAL, ts, zs, fs, sig, nstep, nrej, nev)
            fs.append(list(fcur))
            ks[0] = fcur
        else:
            nrej += 1
        factor = _SAFETY * max(err, 1e-16) ** -0.2
        h *= min(_GROW_MAX, max(_SHRINK_MIN, factor))
        if h < opts.h_min and t1 - t > t_snap:
            return _result(STATUS_STEP_COLLAPSE, ts, zs, fs, None, nstep, nrej, nev)
    return _result(STATUS_COMPLETED, ts, zs, fs, None, nstep, nrej, nev)


def _fd_jacobian(rhs, t, z, fz, nev_box):
    """Forward-difference Jacobian columns of rhs at (t, z)."""
    n = len(z)
    cols = []
    for k in range(n):
        dz = 1e-7 * max(1.0, abs(z[k]))
        zp = list(z)
        zp[k] += dz
        fp = rhs(t, zp)
        nev_box[0] += 1
        cols.append([(fp[q] - fz[q]) / dz for q in range(n)])
    return cols  # cols[k][q] = d f_q / d z_k


def _newton_trapezoid(rhs, t, z, h, fz, jac_cols, atol, rtol, nev_box):
    """Solve w = z + h/2 (fz + rhs(t+h, w)). Returns (w, f_at_w) or None."""
    n = len(z)
    # iteration matrix I - (h/2) J, row-major
    g = [[(1.0 if r == c else 0.0) - 0.5 * h * jac_cols[c][r] for c in range(n)] for r in range(n)]
    try:
        perm, _ = lu_factor(g)
    except SingularMatrixError:
        return None
    w = [z[q] + h * fz[q] for q in range(n)]  # explicit Euler predictor
    fw = None
    for _ in range(_NEWTON_MAX_ITER):
        fw = rhs(t + h, w)
        nev_box[0] += 1
        resid = [z[q] + 0.5 * h * (fz[q] + fw[q]) - w[q] for q in range(n)]
        delta = lu_solve(g, perm, resid)
        done = True
        for q in range(n):
            w[q] += delta[q]
            if abs(delta[q]) > _NEWTON_KAPPA * (atol + rtol * abs(w[q])):
                done = False
        if done:
            return w, fw
    return None


def _integrate_trapezoidal(rhs, z0, t0, t1, opts) -> IntegrationResult:
    n = len(z0)
    atol, rtol = opts.abs_tol, opts.rel_tol
    ts = [t0]
    zs = [list(z0)]
    fs: list[list[float]] = []
    nstep = nrej = 0
    nev_box = [0]
    t = t0
    z = list(z0)
    h = min(opts.h_init, t1 - t0, opts.h_max)
    try:
        fcur = rhs(t, z)
        nev_box[0] += 1
    except IntegrationSignal as sig:
        fs.append([0.0] * n)
        return _result(STATUS_SIGNAL, ts, zs, fs, sig, 0, 0, nev_box[0])
    fs.append(list(fcur))
    t_snap = 1e-14 * max(1.0, abs(t1))  # float-residue guard at the endpoint
    while t1 - t > t_snap:
        if nstep + nrej >= opts.max_steps:
            return _result(STATUS_MAX_STEPS, ts, zs, fs, None, nstep, nrej, nev_box[0])
        h = min(h, t1 - t, opts.h_max)
        try:
            jac = _fd_jacobian(rhs, t, z, fcur, nev_box)
            full = _newton_trapezoid(rhs, t, z, h, fcur, jac, atol, rtol, nev_box)
            half1 = _newton_trapezoid(rhs, t, z, 0.5 * h, fcur, jac, atol, rtol, nev_box)
            half2 = None
            if full is not None and half1 is not None:
                zh, fh = half1
                half2 = _newton_trapezoid(
                    rhs, t + 0.5 * h, zh, 0.5 * h, fh, jac, atol, rtol, nev_box
                )
        except IntegrationSignal as sig:
            return _result(STATUS_SIGNAL, ts, zs, fs, sig, nstep, nrej, nev_box[0])
        if full is None or half1 is None or half2 is None:
            nrej += 1
            h *= 0.25
            if h < opts.h_min:
                return _result(
                    STATUS_STEP_COLLAPSE, ts, zs, fs, None, nstep, nrej, nev_box[0]
                )
            continue
        zf, _ = full
        zh2, fh2 = half2
        err = 0.0
        for q in range(n):
            e = (zh2[q] - zf[q]) / 3.0  # step-doubling estimate, order 2
            sc = atol + rtol * abs(z[q])
            r = abs(e) / sc
            if r > err:
                err = r
        if err <= 1.0:
            z = zh2
            t += h
            nstep += 1
            ts.append(t)
            zs.append(list(z))
            # fresh slope at the new node: the last Newton iterate's rhs value
            # lags by one correction, which matters when the Jacobian is stiff
            try:
                fcur = rhs(t, z)
                nev_box[0] += 1
            except IntegrationSignal as sig:
                fs.append(list(fh2))
                return _result(STATUS_SIGNAL, ts, zs, fs, sig, nstep, nrej, nev_box[0])
            fs.append(list(fcur))
        else:
            nrej += 1
        factor = _SAFETY * max(err, 1e-16) ** (-1.0 / 3.0)
        h *= min(_GROW_MAX, max(_SHRINK_MIN, factor))
        if h < opts.h_min and t1 - t > t_snap:
            return _result(STATUS_STEP_COLLAPSE, ts, zs, fs, None, nstep, nrej, nev_box[0])
    return _result(STATUS_COMPLETED, ts, zs, fs, None, nstep, nrej, nev_box[0])


__all__ = [
    "IntegrationSignal",
    "IntegratorOptions",
    "IntegrationResult",
    "integrate",
    "METHOD_RK45",
    "METHOD_TRAPEZOIDAL",
    "METHODS",
    "STATUS_COMPLETED",
    "STATUS_SIGNAL",
    "STATUS_STEP_COLLAPSE",
    "STATUS_MAX_STEPS",
]
