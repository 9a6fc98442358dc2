# rsma_mc/fblrate.py
"""Finite-blocklength rate math: normal approximation and its concave
first-order surrogate used by the power-allocation solver."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

LOG2E = math.log2(math.e)


def q_function(x):
    """Gaussian tail probability Q(x)."""
    return 0.5 * special.erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))


def q_inverse(p):
    """Inverse of the Gaussian Q-function.

    Accepts scalars or arrays in (0, 1); odd symmetry around p = 0.5.
    """
    p = np.asarray(p, dtype=float)
    if np.any(p <= 0.0) or np.any(p >= 1.0):
        raise ValueError("q_inverse is defined on (0, 1)")
    out = -special.ndtri(p)
    return float(out) if out.ndim == 0 else out


def dispersion(gamma):
    """Channel dispersion V = 1 - (1 + gamma)^-2, in [0, 1)."""
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma < 0):
        raise ValueError("SINR must be nonnegative")
    out = 1.0 - (1.0 + gamma) ** -2
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FblParams:
    """Blocklength regime of one coded transmission."""

    epsilon: float
    blocklength: int
    bandwidth_hz: float

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must be in (0, 1)")
        if self.blocklength < 1:
            raise ValueError("blocklength must be >= 1")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth must be positive")

    @property
    def penalty_coeff(self) -> float:
        """Dispersion penalty coefficient log2(e) * Qinv(eps) / sqrt(l)."""
        return LOG2E * q_inverse(self.epsilon) / math.sqrt(self.blocklength)


def rate_from_penalty(gamma, penalty_coeff: float, bandwidth_hz: float):
    """Achievable rate in bits/s for a given dispersion-penalty coefficient,
    clamped at 0.  ``penalty_coeff = 0`` gives the Shannon rate."""
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma < 0):
        raise ValueError("SINR must be nonnegative")
    raw = bandwidth_hz * (
        np.log2(1.0 + gamma) - penalty_coeff * np.sqrt(dispersion(gamma))
    )
    out = np.maximum(raw, 0.0)
    return float(out) if out.ndim == 0 else out


def fbl_rate(gamma, params: FblParams):
    """Normal-approximation achievable rate in bits/s, clamped at 0.

    B * (log2(1+gamma) - D(eps) * sqrt(V(gamma))) with
    D(eps) = log2(e) * Qinv(eps) / sqrt(l).
    """
    return rate_from_penalty(gamma, params.penalty_coeff, params.bandwidth_hz)


def taylor_coeffs(expansion_point: float) -> tuple[float, float]:
    """Slope and offset of the tangent to sqrt(V) at the expansion point."""
    if expansion_point <= 0:
        raise ValueError("taylor expansion point must be positive")
    v = dispersion(expansion_point)
    sqrt_v = math.sqrt(v)
    slope = (1.0 + expansion_point) ** -3 / sqrt_v
    return slope, sqrt_v


def taylor_rate(gamma_var, expansion_point: float, params: FblParams):
    """Concave surrogate of :func:`fbl_rate` around the expansion point.

    The sqrt-dispersion term is replaced by its tangent line, which upper
    bounds it (sqrt(V) is concave), so the surrogate lower bounds the true
    rate everywhere and is exact at the expansion point.  Not clamped: the
    solver needs a smooth concave function.
    """
    slope, sqrt_v = taylor_coeffs(expansion_point)
    gamma_var = np.asarray(gamma_var, dtype=float)
    out = params.bandwidth_hz * (
        np.log2(1.0 + gamma_var)
        - params.penalty_coeff * (slope * (gamma_var - expansion_point) + sqrt_v)
    )
    return float(out) if out.ndim == 0 else out
