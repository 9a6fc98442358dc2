# rsma_mc/baselines.py
"""Time-division baselines: each slot is split into a high-criticality
phase (fraction alpha) and a low-criticality phase.

SC-TDM decodes each message at one AP only (cross interference is noise);
MC-TDM lets both APs successively decode the critical messages during the
HC phase, which buys a looser per-link BLER of sqrt(q_hc / 2).

Per-phase rates do not depend on alpha (the blocklength is held fixed),
so the minimal alpha satisfying the HC stability constraints is optimal
and no outer line search is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .fblrate import LOG2E, q_inverse, rate_from_penalty
from .innersolver import InfeasibleError
from .model import ArrivalRates, PowerAllocation, RateAllocation, SystemConfig
from .scasolver import MaxMinPrivate, Objective
from .sinr import tdm_mc_sinrs, tdm_sc_sinrs

_FEAS_TOL = 1e-9


@dataclass(frozen=True)
class TdmSolution:
    alpha: float
    hc_powers: PowerAllocation
    lc_powers: PowerAllocation
    rates: RateAllocation  # per-phase link rates, before alpha scaling
    effective_hc: tuple[float, float]  # packets/slot after alpha scaling
    effective_lc: tuple[float, float]

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1]")


def _penalty(eps: float, blocklength: int, shannon: bool) -> float:
    return 0.0 if shannon else LOG2E * q_inverse(eps) / math.sqrt(blocklength)


def _phase_rates(powers, cfg: SystemConfig, d: float, multi: bool):
    sinrs = tdm_mc_sinrs(powers, cfg) if multi else tdm_sc_sinrs(powers, cfg)
    return tuple(rate_from_penalty(g, d, cfg.bandwidth_hz) for g in sinrs)


def _best_powers(cfg: SystemConfig, d: float, multi: bool, weights):
    """Maximize min_i rate_i / weights_i over the per-UE power box.

    Coarse grid plus shrinking local refinement; deterministic.  Users
    with zero weight are ignored (equal weights if all are zero).
    """
    w = tuple(weights)
    if all(x == 0 for x in w):
        w = (1.0, 1.0)

    def score(powers):
        rates = _phase_rates(powers, cfg, d, multi)
        return min(r / wi for r, wi in zip(rates, w) if wi > 0)

    lo = [0.0, 0.0]
    hi = list(cfg.p_max)
    best_p = tuple(cfg.p_max)
    best = score(best_p)
    n = 17
    for _ in range(4):
        for a in range(n):
            p1 = lo[0] + (hi[0] - lo[0]) * a / (n - 1)
            for bidx in range(n):
                p2 = lo[1] + (hi[1] - lo[1]) * bidx / (n - 1)
                s = score((p1, p2))
                if s > best:
                    best = s
                    best_p = (p1, p2)
        for k in range(2):
            span = (hi[k] - lo[k]) / (n - 1) * 2
            lo[k] = max(0.0, best_p[k] - span)
            hi[k] = min(cfg.p_max[k], best_p[k] + span)
    return best_p


def _solve_tdm(
    arrivals: ArrivalRates,
    obj: Objective,
    cfg: SystemConfig,
    multi: bool,
    shannon: bool = False,
) -> TdmSolution:
    if not isinstance(obj, MaxMinPrivate):
        raise NotImplementedError("TDM baselines support the max-min objective")
    eps_c = math.sqrt(cfg.q_hc / 2.0) if multi else cfg.q_hc
    dc = _penalty(eps_c, cfg.blocklength, shannon)
    dp = _penalty(cfg.q_lc, cfg.blocklength, shannon)
    conv = cfg.packets_per_bit_slot  # T/M

    hc_p = _best_powers(cfg, dc, multi, arrivals.a_hc)
    rc = _phase_rates(hc_p, cfg, dc, multi)
    alpha = 0.0
    for i in range(2):
        if arrivals.a_hc[i] > 0:
            if rc[i] <= 0:
                raise InfeasibleError(f"UE {i}: zero HC-phase rate")
            alpha = max(alpha, arrivals.a_hc[i] / (conv * rc[i]))
    if alpha > 1.0 + _FEAS_TOL:
        raise InfeasibleError("HC arrivals exceed full-slot capacity")
    alpha = min(alpha, 1.0)

    lc_p = _best_powers(cfg, dp, False, arrivals.a_lc)
    rp = _phase_rates(lc_p, cfg, dp, False)
    for i in range(2):
        if arrivals.a_lc[i] > (1.0 - alpha) * conv * rp[i] * (1 + _FEAS_TOL) + _FEAS_TOL:
            raise InfeasibleError(f"UE {i}: LC arrivals exceed remaining capacity")

    rates = RateAllocation(
        rc=rc, rp=rp,
        r_decode=((rc[0], rc[1]), (rc[0], rc[1])),
    )
    return TdmSolution(
        alpha=alpha,
        hc_powers=PowerAllocation(pc=hc_p, pp=(0.0, 0.0)),
        lc_powers=PowerAllocation(pc=(0.0, 0.0), pp=lc_p),
        rates=rates,
        effective_hc=tuple(alpha * conv * r for r in rc),
        effective_lc=tuple((1.0 - alpha) * conv * r for r in rp),
    )


def solve_sc_tdm(
    arrivals: ArrivalRates, obj: Objective, cfg: SystemConfig, shannon: bool = False
) -> TdmSolution:
    """Single-connectivity TDM (one decoding AP per message)."""
    return _solve_tdm(arrivals, obj, cfg, multi=False, shannon=shannon)


def solve_mc_tdm(
    arrivals: ArrivalRates, obj: Objective, cfg: SystemConfig, shannon: bool = False
) -> TdmSolution:
    """Multi-connectivity TDM (both APs decode the HC messages)."""
    return _solve_tdm(arrivals, obj, cfg, multi=True, shannon=shannon)


def max_stabilizable_hc(cfg: SystemConfig, multi: bool, shannon: bool = False) -> float:
    """Largest symmetric HC arrival rate a TDM scheme can stabilize
    (alpha = 1, whole slot for the HC phase), in packets/slot."""
    eps_c = math.sqrt(cfg.q_hc / 2.0) if multi else cfg.q_hc
    dc = _penalty(eps_c, cfg.blocklength, shannon)
    p = _best_powers(cfg, dc, multi, (1.0, 1.0))
    rc = _phase_rates(p, cfg, dc, multi)
    return cfg.packets_per_bit_slot * min(rc)
