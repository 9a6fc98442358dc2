# rsma_mc/scasolver.py
"""Iterative power allocation for the rate-splitting multi-connectivity
uplink.

Each outer iteration linearizes the sqrt-dispersion rate penalty around
the current SINRs, replaces the fractional SINR constraints by their
quadratic-transform counterparts with closed-form auxiliaries, and solves
the resulting convex subproblem with the built-in barrier solver.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import fblrate
from .innersolver import (
    BarrierResult,
    InfeasibleError,
    SmoothProblem,
    barrier_maximize,
    find_feasible_point,
)
from .model import ArrivalRates, PowerAllocation, RateAllocation, SystemConfig
from .reliability import BlerBudget, bler_budget_from_qos
from .sinr import rsma_sinrs

LN2 = math.log(2.0)

TAYLOR_FLOOR = 1e-6

# variable layout of the subproblem
_PC = 0          # pc0, pc1
_PP = 2          # pp0, pp1
_RC = 4          # Rc0, Rc1
_RP = 6          # Rp0, Rp1
_RD = 8          # r[i][j] row-major (AP i, UE j)
_G = 12          # gamma order (c00, c01, c10, c11, p0, p1)
_T = 18
_NVAR = 19

# generous lower bound (in bandwidth-scaled rate units) keeping the barrier
# problem bounded when a rate variable has no active stability constraint;
# never binding at an optimum
_RATE_LB = 50.0


class SolveStatus(enum.Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    INFEASIBLE = "Infeasible"


@dataclass(frozen=True)
class MaxMinPrivate:
    """Maximize min{Rp_1, Rp_2}."""


@dataclass(frozen=True)
class WeightedSum:
    """Maximize w . (Rc_1, Rc_2, Rp_1, Rp_2)."""

    weights: tuple[float, float, float, float]

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")


Objective = MaxMinPrivate | WeightedSum


@dataclass
class SolveOptions:
    max_iterations: int = 100
    rel_tol: float = 1e-6
    shannon: bool = False


@dataclass
class SolverState:
    p: PowerAllocation
    gamma: tuple[float, ...]
    mu: tuple[float, ...]
    taylor_points: tuple[float, ...]
    iteration: int = 0

    def __post_init__(self):
        if any(g < 0 for g in self.gamma):
            raise ValueError("gamma auxiliaries must be nonnegative")
        if any(m < 0 for m in self.mu):
            raise ValueError("mu auxiliaries must be nonnegative")
        if any(t < TAYLOR_FLOOR for t in self.taylor_points):
            raise ValueError(f"taylor points must be >= {TAYLOR_FLOOR}")


@dataclass(frozen=True)
class IterateRecord:
    iteration: int
    objective_bits_per_s: float
    pc: tuple[float, float]
    pp: tuple[float, float]
    gamma: tuple[float, ...]


@dataclass(frozen=True)
class ExactRateCheck:
    """True (non-surrogate) rates recomputed at the returned powers."""

    rc_exact: tuple[float, float]
    rp_exact: tuple[float, float]
    r_decode_exact: tuple[tuple[float, float], tuple[float, float]]
    stability_ok: bool


@dataclass
class SolveReport:
    status: SolveStatus
    allocation: tuple[PowerAllocation, RateAllocation] | None
    objective_trace: list[float]
    exact_rate_check: ExactRateCheck | None
    iterates: list[IterateRecord] = field(default_factory=list)

    @property
    def objective(self) -> float:
        return self.objective_trace[-1] if self.objective_trace else float("nan")


# ---------------------------------------------------------------------------
# quadratic transform
# ---------------------------------------------------------------------------

def quad_transform_own_common(
    p: PowerAllocation, gamma_c_ii: float, mu_c_ii: float, cfg: SystemConfig, i: int = 0
) -> float:
    """g for UE i's common stream at its own AP; constraint holds iff <= 0."""
    j = 1 - i
    h = cfg.h
    denom = (
        h[i][i] ** 2 * p.pp[i]
        + h[i][j] ** 2 * (p.pc[j] + p.pp[j])
        + cfg.sigma2[i]
    )
    return gamma_c_ii - 2.0 * mu_c_ii * h[i][i] * math.sqrt(p.pc[i]) + mu_c_ii**2 * denom


def quad_transform_cross_common(
    p: PowerAllocation, gamma_c_ij: float, mu_c_ij: float, cfg: SystemConfig, i: int = 0
) -> float:
    """g for UE j's common stream decoded at AP i (i != j)."""
    j = 1 - i
    h = cfg.h
    denom = h[i][i] ** 2 * p.pp[i] + h[i][j] ** 2 * p.pp[j] + cfg.sigma2[i]
    return gamma_c_ij - 2.0 * mu_c_ij * h[i][j] * math.sqrt(p.pc[j]) + mu_c_ij**2 * denom


def quad_transform_private(
    p: PowerAllocation, gamma_p_i: float, mu_p_i: float, cfg: SystemConfig, i: int = 0
) -> float:
    """g for UE i's private stream at AP i."""
    j = 1 - i
    h = cfg.h
    denom = h[i][j] ** 2 * p.pp[j] + cfg.sigma2[i]
    return gamma_p_i - 2.0 * mu_p_i * h[i][i] * math.sqrt(p.pp[i]) + mu_p_i**2 * denom


def update_mu(p: PowerAllocation, cfg: SystemConfig) -> tuple[float, ...]:
    """Closed-form optimal quadratic-transform auxiliaries at powers p.

    Order (c00, c01, c10, c11, p0, p1), matching the gamma layout.
    """
    h = cfg.h
    mu = [0.0] * 6
    for i in range(2):
        j = 1 - i
        s2 = cfg.sigma2[i]
        den_own = h[i][i] ** 2 * p.pp[i] + h[i][j] ** 2 * (p.pc[j] + p.pp[j]) + s2
        den_cross = h[i][i] ** 2 * p.pp[i] + h[i][j] ** 2 * p.pp[j] + s2
        den_priv = h[i][j] ** 2 * p.pp[j] + s2
        mu[2 * i + i] = h[i][i] * math.sqrt(p.pc[i]) / den_own
        mu[2 * i + j] = h[i][j] * math.sqrt(p.pc[j]) / den_cross
        mu[4 + i] = h[i][i] * math.sqrt(p.pp[i]) / den_priv
    return tuple(mu)


# ---------------------------------------------------------------------------
# convex subproblem
# ---------------------------------------------------------------------------

def _penalty_coeff(eps: float, blocklength: int, shannon: bool) -> float:
    if shannon:
        return 0.0
    return fblrate.LOG2E * fblrate.q_inverse(eps) / math.sqrt(blocklength)


@dataclass
class _Surrogate:
    """One rate constraint x_rate <= rho(x_gamma) in per-Hz units."""

    rate_idx: int
    gamma_idx: int
    d: float
    slope: float
    offset: float
    expansion: float

    def rho(self, gamma):
        return np.log2(1.0 + gamma) - self.d * (
            self.slope * (gamma - self.expansion) + self.offset
        )


@dataclass
class _QuadRow:
    """gamma + linear(p) + const - s * sqrt(x_sqrt) <= 0."""

    gamma_idx: int
    sqrt_idx: int
    sqrt_coeff: float
    lin: np.ndarray   # length _NVAR, power entries only
    const: float

    def bound(self, x: np.ndarray) -> float:
        """Largest gamma satisfying the row at the given powers."""
        return float(
            self.sqrt_coeff * math.sqrt(x[self.sqrt_idx]) - self.lin @ x - self.const
        )


class Subproblem:
    """Convex inner problem for fixed quadratic-transform auxiliaries and
    Taylor expansion points.  Rates are scaled by the bandwidth."""

    def __init__(
        self,
        cfg: SystemConfig,
        arrivals: ArrivalRates,
        obj: Objective,
        bler: BlerBudget,
        mu: tuple[float, ...],
        taylor_points: tuple[float, ...],
        shannon: bool = False,
    ):
        self.cfg = cfg
        self.obj = obj
        b = cfg.bandwidth_hz
        conv = cfg.packets_per_bit_slot * b  # packets/slot per unit scaled rate
        self.a_c = tuple(a / conv for a in arrivals.a_hc)
        self.a_p = tuple(a / conv for a in arrivals.a_lc)
        dc = _penalty_coeff(bler.eps_c, cfg.blocklength, shannon)
        dp = _penalty_coeff(bler.eps_p, cfg.blocklength, shannon)

        self.surrogates: list[_Surrogate] = []
        for i in range(2):
            for j in range(2):
                slope, offset = fblrate.taylor_coeffs(taylor_points[2 * i + j])
                self.surrogates.append(_Surrogate(
                    rate_idx=_RD + 2 * i + j, gamma_idx=_G + 2 * i + j,
                    d=dc, slope=slope, offset=offset,
                    expansion=taylor_points[2 * i + j],
                ))
        for i in range(2):
            slope, offset = fblrate.taylor_coeffs(taylor_points[4 + i])
            self.surrogates.append(_Surrogate(
                rate_idx=_RP + i, gamma_idx=_G + 4 + i,
                d=dp, slope=slope, offset=offset, expansion=taylor_points[4 + i],
            ))

        h = cfg.h
        self.quad_rows: list[_QuadRow] = []
        for i in range(2):
            o = 1 - i  # the other UE as seen from AP i
            for j in range(2):
                m = mu[2 * i + j]
                lin = np.zeros(_NVAR)
                # interference at AP i while decoding UE j's common stream:
                # own private + other UE's private, plus the other UE's
                # common when decoding the first (own) layer
                lin[_PP + i] += m**2 * h[i][i] ** 2
                lin[_PP + o] += m**2 * h[i][o] ** 2
                if i == j:
                    lin[_PC + o] += m**2 * h[i][o] ** 2
                self.quad_rows.append(_QuadRow(
                    gamma_idx=_G + 2 * i + j,
                    sqrt_idx=_PC + j,
                    sqrt_coeff=2.0 * m * h[i][j],
                    lin=lin,
                    const=m**2 * cfg.sigma2[i],
                ))
        for i in range(2):
            j = 1 - i
            m = mu[4 + i]
            lin = np.zeros(_NVAR)
            lin[_PP + j] += m**2 * h[i][j] ** 2
            self.quad_rows.append(_QuadRow(
                gamma_idx=_G + 4 + i,
                sqrt_idx=_PP + i,
                sqrt_coeff=2.0 * m * h[i][i],
                lin=lin,
                const=m**2 * cfg.sigma2[i],
            ))

        # linear rows f = A x + b <= 0
        rows = []
        consts = []
        self.stability_rows: list[int] = []
        for i in range(2):
            if self.a_c[i] > 0:
                r = np.zeros(_NVAR)
                r[_RC + i] = -1.0
                self.stability_rows.append(len(rows))
                rows.append(r)
                consts.append(self.a_c[i])
        for i in range(2):
            if self.a_p[i] > 0:
                r = np.zeros(_NVAR)
                r[_RP + i] = -1.0
                self.stability_rows.append(len(rows))
                rows.append(r)
                consts.append(self.a_p[i])
        for i in range(2):
            j = 1 - i
            for ap in (i, j):  # Rc_i <= r[ap][i]
                r = np.zeros(_NVAR)
                r[_RC + i] = 1.0
                r[_RD + 2 * ap + i] = -1.0
                rows.append(r)
                consts.append(0.0)
        for i in range(2):
            r = np.zeros(_NVAR)
            r[_PC + i] = 1.0
            r[_PP + i] = 1.0
            rows.append(r)
            consts.append(-cfg.p_max[i])
        for k in range(4):
            r = np.zeros(_NVAR)
            r[k] = -1.0
            rows.append(r)
            consts.append(0.0)
        for k in range(6):
            r = np.zeros(_NVAR)
            r[_G + k] = -1.0
            rows.append(r)
            consts.append(0.0)
        for idx in (*range(_RC, _RD + 4), _T):  # R, r and t lower bounds
            r = np.zeros(_NVAR)
            r[idx] = -1.0
            rows.append(r)
            consts.append(-_RATE_LB)
        c = np.zeros(_NVAR)
        if isinstance(obj, MaxMinPrivate):
            c[_T] = 1.0
            for i in range(2):
                r = np.zeros(_NVAR)
                r[_T] = 1.0
                r[_RP + i] = -1.0
                rows.append(r)
                consts.append(0.0)
        else:
            c[_RC] = obj.weights[0]
            c[_RC + 1] = obj.weights[1]
            c[_RP] = obj.weights[2]
            c[_RP + 1] = obj.weights[3]
            for sign in (1.0, -1.0):
                r = np.zeros(_NVAR)
                r[_T] = sign
                rows.append(r)
                consts.append(-1.0)
        self.A = np.array(rows)
        self.b = np.array(consts)
        self.c = c
        self.n_lin = len(rows)

        m_total = self.n_lin + len(self.surrogates) + len(self.quad_rows)
        self._jac = np.zeros((m_total, _NVAR))
        self._jac[: self.n_lin] = self.A
        for k, s in enumerate(self.surrogates):
            self._jac[self.n_lin + k, s.rate_idx] = 1.0
        base = self.n_lin + len(self.surrogates)
        for k, q in enumerate(self.quad_rows):
            self._jac[base + k] = q.lin
            self._jac[base + k, q.gamma_idx] = 1.0
        self.m = m_total

    # --- SmoothProblem callbacks -----------------------------------------
    def values(self, x: np.ndarray) -> np.ndarray:
        out = np.empty(self.m)
        out[: self.n_lin] = self.A @ x + self.b
        k = self.n_lin
        for s in self.surrogates:
            out[k] = x[s.rate_idx] - s.rho(x[s.gamma_idx])
            k += 1
        for q in self.quad_rows:
            out[k] = (
                x[q.gamma_idx]
                + q.lin @ x
                + q.const
                - q.sqrt_coeff * math.sqrt(x[q.sqrt_idx])
            )
            k += 1
        return out

    def jacobian(self, x: np.ndarray) -> np.ndarray:
        J = self._jac.copy()
        k = self.n_lin
        for s in self.surrogates:
            g = x[s.gamma_idx]
            J[k, s.gamma_idx] = -1.0 / ((1.0 + g) * LN2) + s.d * s.slope
            k += 1
        for q in self.quad_rows:
            J[k, q.sqrt_idx] += -q.sqrt_coeff / (2.0 * math.sqrt(x[q.sqrt_idx]))
            k += 1
        return J

    def curvature(self, x: np.ndarray, w: np.ndarray) -> np.ndarray:
        diag = np.zeros(_NVAR)
        k = self.n_lin
        for s in self.surrogates:
            g = x[s.gamma_idx]
            diag[s.gamma_idx] += w[k] / ((1.0 + g) ** 2 * LN2)
            k += 1
        for q in self.quad_rows:
            diag[q.sqrt_idx] += w[k] * q.sqrt_coeff / (4.0 * x[q.sqrt_idx] ** 1.5)
            k += 1
        return np.diag(diag)

    def in_domain(self, x: np.ndarray) -> bool:
        return bool(np.all(x[:4] > 0.0) and np.all(x[_G:_G + 6] > -1.0 + 1e-12))

    def as_smooth_problem(self) -> SmoothProblem:
        return SmoothProblem(
            n=_NVAR, c=self.c, values=self.values, jacobian=self.jacobian,
            curvature=self.curvature, in_domain=self.in_domain,
        )

    # --- strictly feasible start ------------------------------------------
    def start_point(self, p: PowerAllocation) -> np.ndarray:
        """Interior point built from a strictly positive power vector.

        Satisfies everything except possibly the stability rows; those are
        handed to phase-I by the caller when violated.
        """
        x = np.zeros(_NVAR)
        x[_PC] = p.pc[0]
        x[_PC + 1] = p.pc[1]
        x[_PP] = p.pp[0]
        x[_PP + 1] = p.pp[1]
        # keep strictly inside the power budget
        for i in range(2):
            total = x[_PC + i] + x[_PP + i]
            cap = self.cfg.p_max[i] * (1.0 - 1e-9)
            if total >= cap:
                scale = cap / total
                x[_PC + i] *= scale
                x[_PP + i] *= scale
        if np.any(x[:4] <= 0.0):
            raise InfeasibleError("start powers must be strictly positive")
        for q in self.quad_rows:
            bound = q.bound(x)
            if bound <= 0.0:
                raise InfeasibleError("quadratic-transform row admits no gamma > 0")
            x[q.gamma_idx] = 0.999 * bound
        rho = {s.rate_idx: s.rho(x[s.gamma_idx]) for s in self.surrogates}
        for idx, val in rho.items():
            margin = 1e-4 * (1.0 + abs(val))
            if idx >= _RD:  # decode-rate rows
                x[idx] = val - margin
        for i in range(2):
            j = 1 - i
            cap = min(x[_RD + 2 * i + i], x[_RD + 2 * j + i])
            x[_RC + i] = cap - 1e-4 * (1.0 + abs(cap))
            val = rho[_RP + i]
            x[_RP + i] = val - 1e-4 * (1.0 + abs(val))
        if isinstance(self.obj, MaxMinPrivate):
            low = min(x[_RP], x[_RP + 1])
            x[_T] = low - 1e-4 * (1.0 + abs(low))
        else:
            x[_T] = 0.0
        return x


@dataclass
class SubproblemSolution:
    p: PowerAllocation
    rc: tuple[float, float]            # scaled by B
    rp: tuple[float, float]
    r_decode: tuple[tuple[float, float], tuple[float, float]]
    gamma: tuple[float, ...]
    objective: float                   # scaled by B
    result: BarrierResult


def solve_subproblem(
    state: SolverState,
    arrivals: ArrivalRates,
    obj: Objective,
    bler: BlerBudget,
    cfg: SystemConfig,
    shannon: bool = False,
) -> SubproblemSolution:
    """Solve the convex inner problem at the state's auxiliaries.

    Raises :class:`InfeasibleError` when no feasible point exists at this
    linearization.
    """
    sub = Subproblem(cfg, arrivals, obj, bler, state.mu, state.taylor_points,
                     shannon=shannon)
    prob = sub.as_smooth_problem()
    x0 = sub.start_point(state.p)
    if np.any(prob.values(x0) >= 0.0):
        bad = np.where(prob.values(x0) >= 0.0)[0]
        if not set(bad).issubset(set(sub.stability_rows)):
            raise InfeasibleError("interior-point construction failed")
        x0 = find_feasible_point(prob, x0, np.array(sub.stability_rows))
    res = barrier_maximize(prob, x0)
    x = res.x
    return SubproblemSolution(
        p=PowerAllocation(pc=(x[_PC], x[_PC + 1]), pp=(x[_PP], x[_PP + 1])),
        rc=(x[_RC], x[_RC + 1]),
        rp=(x[_RP], x[_RP + 1]),
        r_decode=((x[_RD], x[_RD + 1]), (x[_RD + 2], x[_RD + 3])),
        gamma=tuple(x[_G:_G + 6]),
        objective=float(res.objective),
        result=res,
    )


# ---------------------------------------------------------------------------
# outer loop
# ---------------------------------------------------------------------------

_RESTORATION_SPLITS = (
    (0.7, 0.3),
    (0.9, 0.1),
    (0.5, 0.5),
    (0.99, 0.01),
    # near-degenerate splits reach the sliver of feasible points that hugs
    # the zero-private-power boundary when the common stream is saturated
    (0.999, 0.001),
    (0.9999, 0.0001),
)


def _state_from_powers(p: PowerAllocation, cfg: SystemConfig) -> SolverState:
    gamma = rsma_sinrs(p, cfg).as_vector()
    taylor = tuple(max(g, TAYLOR_FLOOR) for g in gamma)
    return SolverState(p=p, gamma=gamma, mu=update_mu(p, cfg),
                       taylor_points=taylor, iteration=0)


def _subproblem_feasible(
    state: SolverState, arrivals: ArrivalRates, obj: Objective,
    bler: BlerBudget, cfg: SystemConfig, shannon: bool,
) -> bool:
    sub = Subproblem(cfg, arrivals, obj, bler, state.mu, state.taylor_points,
                     shannon=shannon)
    prob = sub.as_smooth_problem()
    try:
        x0 = sub.start_point(state.p)
    except InfeasibleError:
        return False
    bad = np.where(prob.values(x0) >= 0.0)[0]
    if len(bad) == 0:
        return True
    if not set(bad).issubset(set(sub.stability_rows)):
        return False
    try:
        find_feasible_point(prob, x0, np.array(sub.stability_rows))
        return True
    except InfeasibleError:
        return False


def initialize(
    cfg: SystemConfig,
    arrivals: ArrivalRates,
    obj: Objective = MaxMinPrivate(),
    bler: BlerBudget | None = None,
    shannon: bool = False,
) -> SolverState:
    """Deterministic start: common-heavy power split, scaled down by
    bisection if needed, with fallback splits when the first subproblem
    is infeasible at the initial linearization."""
    if bler is None:
        bler = bler_budget_from_qos(cfg.q_hc, cfg.q_lc)
    # full-power splits first; the bisection scale-down is a fallback for
    # exotic configurations and almost never fires
    scales = [1.0] + [0.5**k for k in range(1, 21)]
    for scale in scales:
        for split_c, split_p in _RESTORATION_SPLITS:
            p = PowerAllocation(
                pc=tuple(split_c * pm * scale for pm in cfg.p_max),
                pp=tuple(split_p * pm * scale for pm in cfg.p_max),
            )
            state = _state_from_powers(p, cfg)
            if _subproblem_feasible(state, arrivals, obj, bler, cfg, shannon):
                return state
        if scale == 1.0 and (any(arrivals.a_hc) or any(arrivals.a_lc)):
            # shrinking powers only shrinks achievable rates; with positive
            # arrivals the scaled-down starts cannot become feasible
            break
    raise InfeasibleError(
        "no feasible starting point found; arrivals likely exceed capacity"
    )


def _exact_rate(gamma: float, d: float, bandwidth_hz: float) -> float:
    return float(fblrate.rate_from_penalty(gamma, d, bandwidth_hz))


def solve_mc_rsma(
    arrivals: ArrivalRates,
    obj: Objective,
    cfg: SystemConfig,
    opts: SolveOptions | None = None,
) -> SolveReport:
    """Full outer loop: linearize, transform, solve, repeat to convergence.

    The returned allocation is re-validated against the original problem:
    reported rates are the elementwise min of the surrogate rates and the
    exact rates at the converged SINRs, so they are truly achievable.
    """
    opts = opts or SolveOptions()
    bler = bler_budget_from_qos(cfg.q_hc, cfg.q_lc)
    try:
        state = initialize(cfg, arrivals, obj, bler, opts.shannon)
    except InfeasibleError:
        return SolveReport(
            status=SolveStatus.INFEASIBLE, allocation=None,
            objective_trace=[], exact_rate_check=None,
        )

    b = cfg.bandwidth_hz
    trace: list[float] = []
    iterates: list[IterateRecord] = []
    sol: SubproblemSolution | None = None
    status = SolveStatus.MAX_ITERATIONS
    prev_obj: float | None = None
    for it in range(opts.max_iterations):
        try:
            sol = solve_subproblem(state, arrivals, obj, bler, cfg,
                                   shannon=opts.shannon)
        except InfeasibleError:
            if sol is None:
                return SolveReport(
                    status=SolveStatus.INFEASIBLE, allocation=None,
                    objective_trace=[], exact_rate_check=None,
                )
            break  # keep best-so-far
        trace.append(sol.objective * b)
        iterates.append(IterateRecord(
            iteration=it, objective_bits_per_s=sol.objective * b,
            pc=sol.p.pc, pp=sol.p.pp, gamma=sol.gamma,
        ))
        state = _state_from_powers(sol.p, cfg)
        state.iteration = it + 1
        if prev_obj is not None:
            if abs(sol.objective - prev_obj) <= opts.rel_tol * max(abs(prev_obj), 1e-9):
                status = SolveStatus.CONVERGED
                break
        prev_obj = sol.objective

    assert sol is not None
    dc = _penalty_coeff(bler.eps_c, cfg.blocklength, opts.shannon)
    dp = _penalty_coeff(bler.eps_p, cfg.blocklength, opts.shannon)
    sinrs = rsma_sinrs(sol.p, cfg)
    exact_rd = tuple(
        tuple(_exact_rate(g, dc, b) for g in row)
        for row in (
            (sinrs.gc_own[0], sinrs.gc_cross[0]),
            (sinrs.gc_cross[1], sinrs.gc_own[1]),
        )
    )
    exact_rp = tuple(_exact_rate(g, dp, b) for g in sinrs.gp)

    r_decode = tuple(
        tuple(max(0.0, min(sol.r_decode[i][j] * b, exact_rd[i][j])) for j in range(2))
        for i in range(2)
    )
    rc = tuple(
        max(0.0, min(sol.rc[i] * b, r_decode[i][i], r_decode[1 - i][i]))
        for i in range(2)
    )
    rp = tuple(max(0.0, min(sol.rp[i] * b, exact_rp[i])) for i in range(2))
    alloc = (sol.p, RateAllocation(rc=rc, rp=rp, r_decode=r_decode))

    conv = cfg.packets_per_bit_slot
    stab_ok = all(
        arrivals.a_hc[i] <= rc[i] * conv * (1 + 1e-6) + 1e-9 for i in range(2)
    ) and all(
        arrivals.a_lc[i] <= rp[i] * conv * (1 + 1e-6) + 1e-9 for i in range(2)
    )
    check = ExactRateCheck(
        rc_exact=tuple(min(exact_rd[i][i], exact_rd[1 - i][i]) for i in range(2)),
        rp_exact=exact_rp,
        r_decode_exact=exact_rd,
        stability_ok=stab_ok,
    )
    if status is SolveStatus.CONVERGED and not stab_ok:
        status = SolveStatus.MAX_ITERATIONS
    return SolveReport(
        status=status, allocation=alloc, objective_trace=trace,
        exact_rate_check=check, iterates=iterates,
    )
