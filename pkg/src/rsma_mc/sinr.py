# rsma_mc/sinr.py
"""SINR expressions for the rate-splitting scheme and the TDM baselines.

Decoding order at AP i is: own UE's common -> other UE's common -> own
UE's private, each decoded layer removed from the received signal.
"""
from __future__ import annotations

from dataclasses import dataclass

from .model import PowerAllocation, SystemConfig


@dataclass(frozen=True)
class SinrSet:
    """Linear SINRs of the six decoding steps.

    gc_own[i]   = SINR of UE i's common stream at its own AP i,
    gc_cross[i] = SINR of UE j's common stream at AP i (j != i),
    gp[i]       = SINR of UE i's private stream at AP i.
    """

    gc_own: tuple[float, float]
    gc_cross: tuple[float, float]
    gp: tuple[float, float]

    def __post_init__(self):
        for v in self.gc_own + self.gc_cross + self.gp:
            if not (v >= 0 and v < float("inf")):
                raise ValueError("SINRs must be nonnegative and finite")

    def as_vector(self) -> tuple[float, ...]:
        """Order (c11, c12, c21, c22, p1, p2) used by the solver."""
        return (
            self.gc_own[0], self.gc_cross[0],
            self.gc_cross[1], self.gc_own[1],
            self.gp[0], self.gp[1],
        )


def rsma_sinrs(p: PowerAllocation, cfg: SystemConfig) -> SinrSet:
    """Successive-decoding SINRs of the rate-splitting uplink."""
    h = cfg.h
    gc_own = []
    gc_cross = []
    gp = []
    for i in range(2):
        j = 1 - i
        s2 = cfg.sigma2[i]
        hii2 = h[i][i] ** 2
        hij2 = h[i][j] ** 2
        # own common: everything else is interference
        gc_own.append(
            hii2 * p.pc[i] / (hii2 * p.pp[i] + hij2 * (p.pc[j] + p.pp[j]) + s2)
        )
        # cross common: own common already removed
        gc_cross.append(hij2 * p.pc[j] / (hii2 * p.pp[i] + hij2 * p.pp[j] + s2))
        # private: both commons removed
        gp.append(hii2 * p.pp[i] / (hij2 * p.pp[j] + s2))
    return SinrSet(tuple(gc_own), tuple(gc_cross), tuple(gp))


def tdm_sc_sinrs(powers: tuple[float, float], cfg: SystemConfig) -> tuple[float, float]:
    """Single-connectivity phase SINRs: the other UE is plain noise."""
    if any(p < 0 for p in powers):
        raise ValueError("powers must be nonnegative")
    h = cfg.h
    out = []
    for i in range(2):
        j = 1 - i
        out.append(
            powers[i] * h[i][i] ** 2 / (powers[j] * h[i][j] ** 2 + cfg.sigma2[i])
        )
    return tuple(out)


def tdm_mc_sinrs(powers: tuple[float, float], cfg: SystemConfig) -> tuple[float, float]:
    """Multi-connectivity HC-phase effective SINR per UE.

    Both APs decode both critical messages; the effective SINR is the min
    of the own-AP SINR (other common as interference) and the cross-AP
    SINR (interference-free, that AP decodes this message second).  The
    cross term uses the receiving AP's noise power.
    """
    if any(p < 0 for p in powers):
        raise ValueError("powers must be nonnegative")
    h = cfg.h
    own = tdm_sc_sinrs(powers, cfg)
    out = []
    for i in range(2):
        j = 1 - i
        cross = powers[i] * h[j][i] ** 2 / cfg.sigma2[j]
        out.append(min(own[i], cross))
    return tuple(out)
