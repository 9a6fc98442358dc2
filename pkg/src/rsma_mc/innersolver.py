# rsma_mc/innersolver.py
"""Dense log-barrier interior-point solver for the small convex
subproblems produced by the power-allocation loop (~20 variables,
~40 inequality constraints).

The problem interface is callback based:

    maximize    c @ x
    subject to  f_k(x) <= 0        (smooth convex f_k)

with ``values(x)``, ``jacobian(x)`` and ``curvature(x, w)`` supplying
f, its Jacobian and the weighted sum of constraint Hessians
sum_k w_k * Hess(f_k).  ``in_domain(x)`` guards evaluation (square
roots / logs inside the constraints).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np


class InfeasibleError(RuntimeError):
    """No strictly feasible point exists (or could be certified)."""


@dataclass
class SmoothProblem:
    n: int
    c: np.ndarray
    values: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray]
    curvature: Callable[[np.ndarray, np.ndarray], np.ndarray]
    in_domain: Callable[[np.ndarray], bool]


@dataclass
class BarrierResult:
    x: np.ndarray
    objective: float
    barrier_t: float
    kkt_residual: float
    dual: np.ndarray


def _feasible(prob: SmoothProblem, x: np.ndarray) -> bool:
    return prob.in_domain(x) and bool(np.all(prob.values(x) < 0.0))


def _center(
    prob: SmoothProblem,
    x: np.ndarray,
    t: float,
    tol: float = 1e-10,
    max_iter: int = 80,
) -> np.ndarray:
    """Damped Newton minimization of -t*c@x - sum(log(-f))."""
    c = prob.c
    for _ in range(max_iter):
        f = prob.values(x)
        J = prob.jacobian(x)
        inv_f = 1.0 / (-f)
        grad = -t * c + J.T @ inv_f
        H = J.T @ (J * (inv_f**2)[:, None]) + prob.curvature(x, inv_f)
        try:
            dx = np.linalg.solve(H, -grad)
        except np.linalg.LinAlgError:
            ridge = 1e-12 * (np.trace(H) / prob.n + 1.0)
            dx = np.linalg.solve(H + ridge * np.eye(prob.n), -grad)
        decrement2 = float(-grad @ dx)
        if not np.isfinite(decrement2) or decrement2 < 0:
            # numerical breakdown; retry with a regularized system
            ridge = 1e-8 * (np.trace(H) / prob.n + 1.0)
            dx = np.linalg.solve(H + ridge * np.eye(prob.n), -grad)
            decrement2 = max(float(-grad @ dx), 0.0)
        if decrement2 / 2.0 <= tol:
            return x
        phi0 = -t * (c @ x) - np.sum(np.log(-f))
        step = 1.0
        accepted = False
        for _ in range(60):
            xn = x + step * dx
            if _feasible(prob, xn):
                fn = prob.values(xn)
                phin = -t * (c @ xn) - np.sum(np.log(-fn))
                if phin <= phi0 - 0.25 * step * decrement2:
                    x = xn
                    accepted = True
                    break
            step *= 0.5
        if not accepted:
            return x  # stalled; caller works with the best centered point
    return x


def barrier_maximize(
    prob: SmoothProblem,
    x0: np.ndarray,
    t0: float = 1.0,
    mu: float = 10.0,
    gap_tol: float = 1e-9,
    newton_tol: float = 1e-10,
    early_stop: Callable[[np.ndarray], bool] | None = None,
) -> BarrierResult:
    """Standard barrier method; ``x0`` must be strictly feasible."""
    if not _feasible(prob, x0):
        raise ValueError("barrier_maximize requires a strictly feasible start")
    m = len(prob.values(x0))
    x = np.asarray(x0, dtype=float).copy()
    t = t0
    while True:
        x = _center(prob, x, t, tol=newton_tol)
        if early_stop is not None and early_stop(x):
            break
        if m / t < gap_tol:
            break
        t *= mu
    f = prob.values(x)
    J = prob.jacobian(x)
    lam = 1.0 / (t * (-f))
    residual = float(np.max(np.abs(prob.c - J.T @ lam)))
    # refine the dual certificate: keep complementary slackness by fitting
    # nonnegative multipliers on the near-active rows only
    active = lam > np.sqrt(np.finfo(float).eps) * max(lam.max(), 1.0)
    if active.any():
        from scipy.optimize import nnls

        lam_a, _ = nnls(J[active].T, prob.c)
        refined = np.zeros_like(lam)
        refined[active] = lam_a
        r = float(np.max(np.abs(prob.c - J.T @ refined)))
        if r < residual:
            lam, residual = refined, r
    return BarrierResult(
        x=x, objective=float(prob.c @ x), barrier_t=t,
        kkt_residual=residual, dual=lam,
    )


def find_feasible_point(
    prob: SmoothProblem,
    x0: np.ndarray,
    soft_rows: np.ndarray,
    margin: float = 1e-10,
) -> np.ndarray:
    """Phase-I search: relax ``soft_rows`` with a slack variable s and
    minimize s.  ``x0`` must satisfy the remaining (hard) rows strictly.

    Returns a strictly feasible point of the full problem or raises
    :class:`InfeasibleError`.
    """
    soft = np.asarray(soft_rows, dtype=int)
    n = prob.n

    def values(y):
        f = prob.values(y[:-1]).copy()
        f[soft] -= y[-1]
        return f

    def jacobian(y):
        J = prob.jacobian(y[:-1])
        Js = np.zeros((J.shape[0], n + 1))
        Js[:, :n] = J
        Js[soft, n] = -1.0
        return Js

    def curvature(y, w):
        H = np.zeros((n + 1, n + 1))
        H[:n, :n] = prob.curvature(y[:-1], w)
        return H

    def in_domain(y):
        return prob.in_domain(y[:-1])

    c = np.zeros(n + 1)
    c[n] = -1.0  # maximize -s
    f0 = prob.values(x0)
    if not prob.in_domain(x0) or np.any(f0[np.setdiff1d(np.arange(len(f0)), soft)] >= 0):
        raise ValueError("phase-I start violates a hard constraint")
    s0 = float(np.max(f0[soft])) + 1.0
    y0 = np.concatenate([x0, [s0]])

    aux = SmoothProblem(n + 1, c, values, jacobian, curvature, in_domain)

    def early(y):
        return bool(np.all(prob.values(y[:-1]) < -margin))

    res = barrier_maximize(aux, y0, gap_tol=1e-10, early_stop=early)
    x = res.x[:n]
    if np.all(prob.values(x) < 0.0) and prob.in_domain(x):
        return x
    raise InfeasibleError("phase-I could not produce a strictly feasible point")
