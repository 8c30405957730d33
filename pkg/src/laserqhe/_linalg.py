"""Steady-state solve and RK4 propagation for real-vector generators."""
from __future__ import annotations

import math

import numpy as np

from .errors import SingularGenerator, StepTooLarge

# relative singular-value cutoff separating a true kernel from a small gap
_NULL_RTOL = 1e-11


def _replace_row(L, trace_row, row):
    M = L.copy()
    M[row] = trace_row
    rhs = np.zeros(L.shape[0])
    rhs[row] = 1.0
    return M, rhs


def solve_steady(L, trace_row, row, perturbation=None):
    """Unique normalised kernel vector of ``L``.

    The redundant equation ``row`` is replaced by the trace condition and the
    square system is LU-solved.  If ``L`` has a degenerate kernel (a conserved
    dark population), ``perturbation`` selects the state obtained as the limit
    ``L + eps * perturbation`` with ``eps -> 0``: the kernel combination that
    ``perturbation`` maps back into the range of ``L``.
    """
    M, rhs = _replace_row(L, trace_row, row)
    s = np.linalg.svd(M, compute_uv=False)
    if s[-1] > _NULL_RTOL * s[0]:
        return np.linalg.solve(M, rhs)
    if perturbation is None:
        raise SingularGenerator("steady state is not unique")
    return _degenerate_limit(L, trace_row, perturbation)


def _degenerate_limit(L, trace_row, C):
    u, s, vt = np.linalg.svd(L)
    tol = _NULL_RTOL * s[0]
    k = int(np.sum(s <= tol))
    kernel = vt[-k:].T
    left = u[:, -k:].T
    # constraints: trace = 1 and left-kernel components of C v vanish
    A = np.vstack([trace_row @ kernel, left @ C @ kernel])
    b = np.zeros(A.shape[0])
    b[0] = 1.0
    sa = np.linalg.svd(A, compute_uv=False)
    if sa[-1] <= 1e-9 * sa[0]:
        raise SingularGenerator("degenerate kernel not resolved by perturbation")
    coef, *_ = np.linalg.lstsq(A, b, rcond=None)
    v = kernel @ coef
    return v / (trace_row @ v)


def rk4_step_matrix(L, dt):
    """One classical RK4 step of ``dv/dt = L v`` as a matrix.

    For a linear autonomous system the four RK4 stages collapse exactly to
    ``I + hL + (hL)^2/2 + (hL)^3/6 + (hL)^4/24``.
    """
    h = dt * L
    eye = np.eye(L.shape[-1])
    h2 = h @ h
    return eye + h + h2 / 2.0 + h2 @ h / 6.0 + h2 @ h2 / 24.0


def rate_scale(L):
    """Infinity norm of the generator(s), used by the step-size guard."""
    return float(np.max(np.sum(np.abs(L), axis=-1)))


def rk4_propagate(L, v0, t_final, dt):
    """Fixed-step RK4 integration of ``dv/dt = L v`` up to ``t_final``.

    ``L`` may be a stack of generators with shape ``(..., n, n)`` and ``v0``
    a matching stack of vectors.  The step is shrunk so that an integer
    number of steps lands exactly on ``t_final``.  Repeated steps are applied
    by binary powering of the step matrix, which reproduces the sequential
    RK4 recursion for this linear problem.
    """
    L = np.asarray(L, dtype=float)
    v0 = np.asarray(v0, dtype=float)
    if t_final < 0:
        raise ValueError("t_final must be >= 0")
    if not dt > 0:
        raise StepTooLarge("dt must be > 0")
    limit = 0.1 / rate_scale(L)
    if dt > limit:
        raise StepTooLarge(f"dt={dt:g} exceeds stability guard {limit:g}")
    if t_final == 0:
        return v0.copy()
    n_steps = max(1, math.ceil(t_final / dt - 1e-9))
    step = rk4_step_matrix(L, t_final / n_steps)
    prop = np.linalg.matrix_power(step, n_steps) if step.ndim == 2 else _stack_power(step, n_steps)
    return np.einsum("...ij,...j->...i", prop, v0)


def _stack_power(step, n):
    result = np.broadcast_to(np.eye(step.shape[-1]), step.shape).copy()
    base = step
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result
