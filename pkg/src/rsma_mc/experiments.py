# rsma_mc/experiments.py
"""Sweep drivers reproducing the stability-region, blocklength-loss and
rate-vs-SNR curves, with CSV emission.

All sweeps are deterministic: the same config yields bit-identical CSVs.
Per-point infeasibility is data, not an error; infeasible points are
simply absent from the output.
"""
from __future__ import annotations

import csv
import dataclasses
from dataclasses import dataclass
from pathlib import Path

from . import baselines
from .fblrate import q_inverse, rate_from_penalty, LOG2E
from .innersolver import InfeasibleError
from .model import ArrivalRates, SystemConfig, rate_to_packets_per_slot
from .reliability import bler_budget_from_qos
from .scasolver import (
    MaxMinPrivate,
    SolveOptions,
    SolveReport,
    SolveStatus,
    solve_mc_rsma,
)

SCHEMES = ("mc-rsma", "mc-tdm", "sc-tdm")

EXPERIMENTS = ("StabilityRegion", "RateLossVsBlocklength", "RateVsSnr")

CSV_HEADERS = {
    "StabilityRegion": ["scheme", "a_hc_pkts", "a_lc_pkts"],
    "RateLossVsBlocklength": ["scheme", "blocklength", "rel_loss"],
    "RateVsSnr": ["scheme", "snr_db", "lc_rate_pkts"],
}

DEFAULT_HC_GRID = tuple(float(x) for x in range(21))
DEFAULT_BLOCKLENGTH_GRID = (100, 200, 500, 1000, 2000, 5000, 10000)
DEFAULT_SNR_GRID = tuple(0.5 * k for k in range(41))
DEFAULT_FIXED_A_HC = 10.0


@dataclass(frozen=True)
class SweepSpec:
    experiment: str
    grid: tuple[float, ...]
    schemes: tuple[str, ...] = SCHEMES
    fixed_a_hc: float = DEFAULT_FIXED_A_HC

    def __post_init__(self):
        if self.experiment not in EXPERIMENTS:
            raise ValueError(f"unknown experiment {self.experiment!r}")
        if not self.grid:
            raise ValueError("grid must be nonempty")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("grid must be strictly increasing")
        bad = set(self.schemes) - set(SCHEMES)
        if bad:
            raise ValueError(f"unknown schemes: {sorted(bad)}")


def _write_solver_trace(report: SolveReport, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([
            "iter", "objective_bits_per_s", "pc1", "pc2", "pp1", "pp2",
            "gamma_c11", "gamma_c12", "gamma_c21", "gamma_c22",
            "gamma_p1", "gamma_p2",
        ])
        for rec in report.iterates:
            w.writerow([
                rec.iteration, rec.objective_bits_per_s,
                *rec.pc, *rec.pp, *rec.gamma,
            ])


def max_min_lc(
    cfg: SystemConfig,
    scheme: str,
    a_hc: float,
    shannon: bool = False,
    trace_path: Path | None = None,
) -> float | None:
    """Max-min stabilizable LC arrival rate (packets/slot) at a fixed
    symmetric HC arrival rate, or None when the HC rate is unsupportable."""
    arrivals = ArrivalRates(a_hc=(a_hc, a_hc), a_lc=(0.0, 0.0))
    if scheme == "mc-rsma":
        report = solve_mc_rsma(
            arrivals, MaxMinPrivate(), cfg, SolveOptions(shannon=shannon)
        )
        if trace_path is not None and report.iterates:
            _write_solver_trace(report, trace_path)
        if (
            report.status is SolveStatus.INFEASIBLE
            or report.allocation is None
            or not report.exact_rate_check.stability_ok
        ):
            return None
        rates = report.allocation[1]
        return rate_to_packets_per_slot(min(rates.rp), cfg)
    solver = baselines.solve_mc_tdm if scheme == "mc-tdm" else baselines.solve_sc_tdm
    try:
        sol = solver(arrivals, MaxMinPrivate(), cfg, shannon=shannon)
    except InfeasibleError:
        return None
    return min(sol.effective_lc)


def stability_region(
    cfg: SystemConfig,
    scheme: str,
    hc_grid=DEFAULT_HC_GRID,
    trace_dir: Path | None = None,
) -> list[tuple[float, float]]:
    """Boundary points (a_hc, max-min a_lc); infeasible points omitted."""
    out = []
    for a_hc in hc_grid:
        tp = None
        if trace_dir is not None:
            tp = trace_dir / f"{scheme}_stability_ahc{a_hc:g}.csv"
        v = max_min_lc(cfg, scheme, float(a_hc), trace_path=tp)
        if v is not None:
            out.append((float(a_hc), v))
    return out


def hc_intercept(cfg: SystemConfig, scheme: str, tol: float = 0.05) -> float:
    """Largest stabilizable symmetric HC arrival rate (LC arrivals zero)."""
    if scheme in ("mc-tdm", "sc-tdm"):
        return baselines.max_stabilizable_hc(cfg, multi=scheme == "mc-tdm")
    # bisection against solver feasibility, starting from the
    # interference-free upper bound
    bler = bler_budget_from_qos(cfg.q_hc, cfg.q_lc)
    d = LOG2E * q_inverse(bler.eps_c) / cfg.blocklength**0.5
    ub = min(
        rate_to_packets_per_slot(
            rate_from_penalty(
                cfg.h[i][i] ** 2 * cfg.p_max[i] / cfg.sigma2[i], d, cfg.bandwidth_hz
            ),
            cfg,
        )
        for i in range(2)
    )
    lo, hi = 0.0, ub
    if max_min_lc(cfg, scheme, hi) is not None:
        return hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if max_min_lc(cfg, scheme, mid) is not None:
            lo = mid
        else:
            hi = mid
    return lo


def rate_loss_vs_blocklength(
    cfg: SystemConfig,
    schemes=SCHEMES,
    l_grid=DEFAULT_BLOCKLENGTH_GRID,
    a_hc: float = DEFAULT_FIXED_A_HC,
    trace_dir: Path | None = None,
) -> list[tuple[str, int, float]]:
    """Relative LC-rate loss vs the infinite-blocklength (Shannon) rate."""
    rows = []
    for scheme in schemes:
        v_inf = max_min_lc(cfg, scheme, a_hc, shannon=True)
        if v_inf is None or v_inf <= 0:
            continue
        for l in l_grid:
            cfg_l = dataclasses.replace(cfg, blocklength=int(l))
            tp = None
            if trace_dir is not None:
                tp = trace_dir / f"{scheme}_blocklength{int(l)}.csv"
            v = max_min_lc(cfg_l, scheme, a_hc, trace_path=tp)
            if v is None:
                continue
            rows.append((scheme, int(l), 1.0 - v / v_inf))
    return rows


def _with_snr(cfg: SystemConfig, snr_db: float) -> SystemConfig:
    lin = 10.0 ** (snr_db / 10.0)
    return dataclasses.replace(
        cfg, p_max=tuple(lin * s2 for s2 in cfg.sigma2)
    )


def rate_vs_snr(
    cfg: SystemConfig,
    schemes=SCHEMES,
    snr_grid_db=DEFAULT_SNR_GRID,
    a_hc: float = DEFAULT_FIXED_A_HC,
    trace_dir: Path | None = None,
) -> list[tuple[str, float, float]]:
    """Max-min LC rate (packets/slot) per scheme over an SNR grid."""
    if min(snr_grid_db) < 0 or max(snr_grid_db) > 40:
        raise ValueError("SNR grid must lie within [0, 40] dB")
    rows = []
    for scheme in schemes:
        for snr in snr_grid_db:
            tp = None
            if trace_dir is not None:
                tp = trace_dir / f"{scheme}_snr{snr:g}.csv"
            v = max_min_lc(_with_snr(cfg, snr), scheme, a_hc, trace_path=tp)
            if v is not None:
                rows.append((scheme, float(snr), v))
    return rows


def snr_feasibility_edge(
    cfg: SystemConfig,
    scheme: str,
    a_hc: float = DEFAULT_FIXED_A_HC,
    lo_db: float = 0.0,
    hi_db: float = 20.0,
    tol_db: float = 0.05,
) -> float | None:
    """Smallest SNR (dB) at which the scheme supports the HC rate; None if
    infeasible over the whole range."""
    if max_min_lc(_with_snr(cfg, hi_db), scheme, a_hc) is None:
        return None
    if max_min_lc(_with_snr(cfg, lo_db), scheme, a_hc) is not None:
        return lo_db
    lo, hi = lo_db, hi_db
    while hi - lo > tol_db:
        mid = 0.5 * (lo + hi)
        if max_min_lc(_with_snr(cfg, mid), scheme, a_hc) is None:
            lo = mid
        else:
            hi = mid
    return hi


def run_sweep(
    spec: SweepSpec, cfg: SystemConfig, trace_dir: Path | None = None
) -> list[tuple]:
    """Dispatch a sweep spec to its driver, returning CSV-ready rows."""
    if spec.experiment == "StabilityRegion":
        rows = []
        for scheme in spec.schemes:
            for a_hc, a_lc in stability_region(cfg, scheme, spec.grid, trace_dir):
                rows.append((scheme, a_hc, a_lc))
        return rows
    if spec.experiment == "RateLossVsBlocklength":
        grid = tuple(int(x) for x in spec.grid)
        return rate_loss_vs_blocklength(
            cfg, spec.schemes, grid, spec.fixed_a_hc, trace_dir
        )
    return rate_vs_snr(cfg, spec.schemes, spec.grid, spec.fixed_a_hc, trace_dir)


def write_csv(rows: list[tuple], experiment: str, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(CSV_HEADERS[experiment])
        w.writerows(rows)
