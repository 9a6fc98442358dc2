from __future__ import annotations

import numpy as np
import pytest

from rsma_mc.innersolver import (
    InfeasibleError,
    SmoothProblem,
    barrier_maximize,
    find_feasible_point,
)


def _linear_problem(A: np.ndarray, b: np.ndarray, c: np.ndarray) -> SmoothProblem:
    """maximize c@x subject to A@x - b <= 0."""
    n = A.shape[1]
    return SmoothProblem(
        n=n,
        c=np.asarray(c, dtype=float),
        values=lambda x: A @ x - b,
        jacobian=lambda x: A.copy(),
        curvature=lambda x, w: np.zeros((n, n)),
        in_domain=lambda x: True,
    )


class TestBarrierMaximize:
    def test_box_lp(self):
        # maximize x + y on [0, 1] x [0, 2]
        A = np.array([[1, 0], [0, 1], [-1, 0], [0, -1]], dtype=float)
        b = np.array([1.0, 2.0, 0.0, 0.0])
        prob = _linear_problem(A, b, [1.0, 1.0])
        res = barrier_maximize(prob, np.array([0.5, 0.5]))
        assert res.objective == pytest.approx(3.0, abs=1e-7)
        assert res.x == pytest.approx([1.0, 2.0], abs=1e-7)
        assert res.kkt_residual <= 1e-8
        assert np.all(res.dual >= 0)

    def test_degenerate_lp(self):
        # redundant constraints sharing the optimal facet
        A = np.array([[1, 0], [1, 0], [-1, 0], [0, 1], [0, -1]], dtype=float)
        b = np.array([1.0, 1.0, 0.0, 1.0, 0.0])
        prob = _linear_problem(A, b, [1.0, 0.0])
        res = barrier_maximize(prob, np.array([0.5, 0.5]))
        assert res.objective == pytest.approx(1.0, abs=1e-7)

    def test_smooth_constraint(self):
        # maximize x subject to x^2 + y^2 <= 1
        prob = SmoothProblem(
            n=2,
            c=np.array([1.0, 0.0]),
            values=lambda x: np.array([x @ x - 1.0]),
            jacobian=lambda x: 2.0 * x[None, :],
            curvature=lambda x, w: 2.0 * w[0] * np.eye(2),
            in_domain=lambda x: True,
        )
        res = barrier_maximize(prob, np.zeros(2))
        assert res.objective == pytest.approx(1.0, abs=1e-6)
        assert abs(res.x[1]) < 1e-4
        assert res.kkt_residual <= 1e-8

    def test_requires_strictly_feasible_start(self):
        A = np.array([[1.0, 0.0], [0.0, 1.0]])
        prob = _linear_problem(A, np.array([1.0, 1.0]), [1.0, 1.0])
        with pytest.raises(ValueError):
            barrier_maximize(prob, np.array([2.0, 0.0]))

    def test_deterministic(self):
        A = np.array([[1, 2], [3, -1], [-1, 0], [0, -1]], dtype=float)
        b = np.array([4.0, 5.0, 0.0, 0.0])
        prob = _linear_problem(A, b, [2.0, 1.0])
        r1 = barrier_maximize(prob, np.array([0.1, 0.1]))
        r2 = barrier_maximize(prob, np.array([0.1, 0.1]))
        assert np.array_equal(r1.x, r2.x)
        assert r1.objective == r2.objective


class TestFindFeasiblePoint:
    def test_recovers_feasibility(self):
        # hard: 0 <= x <= 5; soft: x >= 3; start x = 1 violates the soft row
        A = np.array([[1.0], [-1.0], [-1.0]])
        b = np.array([5.0, 0.0, -3.0])
        prob = _linear_problem(A, b, [1.0])
        x = find_feasible_point(prob, np.array([1.0]), soft_rows=np.array([2]))
        assert np.all(prob.values(x) < 0.0)
        assert 3.0 < x[0] < 5.0

    def test_detects_infeasibility(self):
        # hard: x <= 5, x >= 0; soft: x >= 6 -> empty
        A = np.array([[1.0], [-1.0], [-1.0]])
        b = np.array([5.0, 0.0, -6.0])
        prob = _linear_problem(A, b, [1.0])
        with pytest.raises(InfeasibleError):
            find_feasible_point(prob, np.array([1.0]), soft_rows=np.array([2]))

    def test_start_must_satisfy_hard_rows(self):
        A = np.array([[1.0], [-1.0]])
        b = np.array([5.0, -3.0])
        prob = _linear_problem(A, b, [1.0])
        with pytest.raises(ValueError):
            find_feasible_point(prob, np.array([6.0]), soft_rows=np.array([1]))
