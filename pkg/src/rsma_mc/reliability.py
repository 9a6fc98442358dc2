# rsma_mc/reliability.py
"""Effective error rates under successive decoding with multi-connectivity,
and the per-link BLER budgets that meet end-to-end QoS targets."""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class BlerBudget:
    """Per-link block error rates for the common and private streams."""

    eps_c: float
    eps_p: float

    def __post_init__(self):
        if not 0.0 < self.eps_c < 1.0 or not 0.0 < self.eps_p < 1.0:
            raise ValueError("BLERs must be in (0, 1)")


def effective_common_error(eps_ci: float, eps_cj: float) -> float:
    """Loss probability of UE i's common message.

    The message is decoded directly at the own AP and, at the other AP,
    only after that AP's first common layer succeeded; it is lost only if
    both paths fail: eps_ci * (1 - (1 - eps_ci) * (1 - eps_cj)).
    """
    for e in (eps_ci, eps_cj):
        if not 0.0 <= e < 1.0:
            raise ValueError("BLERs must be in [0, 1)")
    return eps_ci * (1.0 - (1.0 - eps_ci) * (1.0 - eps_cj))


def effective_private_error(eps_ci: float, eps_cj: float, eps_pi: float) -> float:
    """Loss probability of UE i's private message.

    Decoding it requires both common layers to have been removed first:
    1 - (1 - eps_ci) * (1 - eps_cj) * (1 - eps_pi).
    """
    for e in (eps_ci, eps_cj, eps_pi):
        if not 0.0 <= e < 1.0:
            raise ValueError("BLERs must be in [0, 1)")
    return 1.0 - (1.0 - eps_ci) * (1.0 - eps_cj) * (1.0 - eps_pi)


def bler_budget_from_qos(q_hc: float, q_lc: float) -> BlerBudget:
    """Per-link BLERs for the rate-splitting scheme.

    eps_c = sqrt(q_hc / 2) makes the two-AP common loss bound 2*eps_c^2
    meet q_hc; eps_p = q_lc - sqrt(2 * q_hc) absorbs the common-error
    propagation bound 2*eps_c + eps_p <= q_lc.
    """
    if not 0.0 < q_hc < 1.0 or not 0.0 < q_lc < 1.0:
        raise ValueError("QoS targets must be in (0, 1)")
    eps_p = q_lc - math.sqrt(2.0 * q_hc)
    if eps_p <= 0.0:
        raise ValueError(
            f"infeasible QoS: q_lc - sqrt(2*q_hc) = {eps_p} is not positive"
        )
    return BlerBudget(eps_c=math.sqrt(q_hc / 2.0), eps_p=eps_p)


def sc_bler_budget(q_hc: float, q_lc: float) -> BlerBudget:
    """Single-connectivity TDM: one link per message, targets used directly."""
    return BlerBudget(eps_c=q_hc, eps_p=q_lc)


def mc_tdm_bler_budget(q_hc: float, q_lc: float) -> BlerBudget:
    """Multi-connectivity TDM: two APs decode each HC message, so each
    link may run at sqrt(q_hc / 2); the LC phase stays single-link."""
    return BlerBudget(eps_c=math.sqrt(q_hc / 2.0), eps_p=q_lc)
