"""End-to-end acceptance suite.

Each test covers one acceptance criterion and prints a single
``[PASS]``/``[FAIL]`` line (visible in the live pytest output) before
asserting.
"""
from __future__ import annotations

import math
import time

import numpy as np
import pytest

from oracles import grid_max_min_lc, mc_decoding_trials
from rsma_mc.fblrate import FblParams, fbl_rate, taylor_rate
from rsma_mc.model import (
    ArrivalRates,
    PowerAllocation,
    SystemConfig,
    packets_per_slot_to_rate,
    rate_to_packets_per_slot,
    symmetric_config,
)
from rsma_mc.queuesim import ArrivalProcess, Verdict, simulate, stability_verdict
from rsma_mc.reliability import (
    bler_budget_from_qos,
    effective_common_error,
    effective_private_error,
)
from rsma_mc.scasolver import (
    MaxMinPrivate,
    SolveStatus,
    initialize,
    quad_transform_cross_common,
    quad_transform_own_common,
    quad_transform_private,
    solve_mc_rsma,
    solve_subproblem,
    update_mu,
)
from rsma_mc.sinr import rsma_sinrs
from rsma_mc.experiments import (
    hc_intercept,
    max_min_lc,
    rate_loss_vs_blocklength,
    rate_vs_snr,
    snr_feasibility_edge,
    stability_region,
)

SCHEMES = ("mc-rsma", "mc-tdm", "sc-tdm")


def _report(capsys, number: int, label: str, ok: bool, detail: str) -> None:
    tag = "PASS" if ok else "FAIL"
    with capsys.disabled():
        print(f"\n[{tag}] criterion {number} ({label}): {detail}")
    assert ok, f"criterion {number} ({label}): {detail}"


@pytest.fixture(scope="module")
def cfg():
    return symmetric_config(15.0)


@pytest.fixture(scope="module")
def snr_rows(cfg):
    """Shared rate-vs-SNR sweep at a_hc = 10 over the default 0:0.5:20 grid."""
    return rate_vs_snr(cfg, schemes=SCHEMES, a_hc=10.0)


def test_criterion_1_intercepts(cfg, capsys):
    t0 = time.time()
    got = {s: hc_intercept(cfg, s) for s in SCHEMES}
    elapsed = time.time() - t0
    ok = (
        abs(got["mc-rsma"] - 19.6) <= 0.1
        and abs(got["mc-tdm"] - 19.6) <= 0.1
        and abs(got["sc-tdm"] - 18.7) <= 0.1
        and elapsed < 60.0
    )
    _report(
        capsys, 1, "stability-region intercepts", ok,
        f"mc-rsma={got['mc-rsma']:.3f}, mc-tdm={got['mc-tdm']:.3f}, "
        f"sc-tdm={got['sc-tdm']:.3f} pkts/slot (targets 19.6/19.6/18.7 "
        f"+-0.1) in {elapsed:.1f}s",
    )


def test_criterion_2_snr_edges_and_crossover(cfg, snr_rows, capsys):
    t0 = time.time()
    edges = {
        s: snr_feasibility_edge(cfg, s, a_hc=10.0, tol_db=0.05)
        for s in SCHEMES
    }
    by_scheme = {s: {g: v for sch, g, v in snr_rows if sch == s} for s in SCHEMES}
    # crossover: last grid point where mc-rsma does not beat both baselines
    crossover = 0.0
    beats_from_85 = True
    for g in sorted(by_scheme["mc-rsma"]):
        rsma = by_scheme["mc-rsma"][g]
        rivals = [
            by_scheme[s][g] for s in ("mc-tdm", "sc-tdm") if g in by_scheme[s]
        ]
        if rivals and rsma <= max(rivals):
            crossover = max(crossover, g)
            if g >= 8.5:
                beats_from_85 = False
    elapsed = time.time() - t0
    ok = (
        edges["mc-rsma"] is not None
        and edges["mc-tdm"] is not None
        and edges["sc-tdm"] is not None
        and abs(edges["mc-rsma"] - 4.4) <= 0.2
        and abs(edges["mc-tdm"] - 4.4) <= 0.2
        and abs(edges["sc-tdm"] - 2.6) <= 0.2
        and beats_from_85
        and 7.5 <= crossover <= 8.5
        and elapsed < 300.0
    )
    _report(
        capsys, 2, "SNR feasibility edges / crossover", ok,
        f"edges mc-rsma={edges['mc-rsma']:.2f} dB, "
        f"mc-tdm={edges['mc-tdm']:.2f} dB (target 4.4+-0.2), "
        f"sc-tdm={edges['sc-tdm']:.2f} dB (target 2.6+-0.2); "
        f"crossover={crossover:.1f} dB (window [7.5, 8.5]) "
        f"in {elapsed:.1f}s",
    )


def test_criterion_3_dominance_and_tdm_linearity(cfg, capsys):
    regions = {s: dict(stability_region(cfg, s)) for s in SCHEMES}
    dominance_ok = True
    for a_hc in sorted(regions["sc-tdm"]):
        sc = regions["sc-tdm"][a_hc]
        mc = regions["mc-tdm"].get(a_hc)
        rsma = regions["mc-rsma"].get(a_hc)
        if mc is None or rsma is None:
            dominance_ok = False
            break
        slack = 0.005
        if not (rsma >= mc * (1 - slack) and mc >= sc * (1 - slack)):
            dominance_ok = False
            break
    collinear_ok = True
    residuals = []
    for s in ("mc-tdm", "sc-tdm"):
        xs = sorted(regions[s])
        probe = [xs[1], xs[len(xs) // 2], xs[-2]]
        (x0, x1, x2) = probe
        y0, y1, y2 = (regions[s][x] for x in probe)
        interp = y0 + (y2 - y0) * (x1 - x0) / (x2 - x0)
        r = abs(y1 - interp) / max(abs(y1), 1e-12)
        residuals.append(r)
        collinear_ok &= r < 1e-3
    ok = dominance_ok and collinear_ok
    _report(
        capsys, 3, "region dominance / TDM linearity", ok,
        f"pointwise mc-rsma >= mc-tdm >= sc-tdm ({'ok' if dominance_ok else 'violated'}); "
        f"3-point collinearity residuals {residuals[0]:.2e}, "
        f"{residuals[1]:.2e} (< 1e-3)",
    )


def test_criterion_4_blocklength_loss_ordering(cfg, capsys):
    rows = rate_loss_vs_blocklength(cfg, schemes=SCHEMES, a_hc=10.0)
    loss = {s: {} for s in SCHEMES}
    for scheme, l, v in rows:
        loss[scheme][l] = v
    grid = sorted(loss["mc-rsma"])
    order_ok = all(
        loss["mc-rsma"][l] < loss["mc-tdm"][l]
        and loss["mc-rsma"][l] < loss["sc-tdm"][l]
        for l in grid
    )
    mono_ok = all(
        all(
            loss[s][a] > loss[s][b]
            for a, b in zip(sorted(loss[s]), sorted(loss[s])[1:])
        )
        for s in SCHEMES
    )
    ok = order_ok and mono_ok and len(grid) == 7
    _report(
        capsys, 4, "blocklength-loss ordering", ok,
        f"mc-rsma loss below both baselines at all {len(grid)} blocklengths "
        f"({'ok' if order_ok else 'violated'}); loss monotone decreasing in l "
        f"({'ok' if mono_ok else 'violated'}); "
        f"e.g. l=1000: mc-rsma={loss['mc-rsma'].get(1000, float('nan')):.3f}, "
        f"mc-tdm={loss['mc-tdm'].get(1000, float('nan')):.3f}, "
        f"sc-tdm={loss['sc-tdm'].get(1000, float('nan')):.3f}",
    )


def _random_instance(rng):
    cross = (rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8))
    cfg = SystemConfig(
        h=((1.0, cross[0]), (cross[1], 1.0)),
        sigma2=(rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)),
        p_max=(rng.uniform(5.0, 60.0), rng.uniform(5.0, 60.0)),
    )
    frac = rng.uniform(0.05, 1.0, size=2)
    split = rng.uniform(0.05, 0.95, size=2)
    p = PowerAllocation(
        pc=tuple(frac * split * np.array(cfg.p_max)),
        pp=tuple(frac * (1 - split) * np.array(cfg.p_max)),
    )
    return cfg, p


def test_criterion_5_algorithmic_properties(cfg, capsys):
    # (a) quadratic-transform identity on 1000 random instances
    rng = np.random.default_rng(2024)
    worst_g = 0.0
    for _ in range(1000):
        c, p = _random_instance(rng)
        mu = update_mu(p, c)
        s = rsma_sinrs(p, c)
        vals = [
            quad_transform_own_common(p, s.gc_own[i], mu[3 * i], c, i)
            for i in range(2)
        ]
        vals += [
            quad_transform_cross_common(p, s.gc_cross[i], mu[1 + i], c, i)
            for i in range(2)
        ]
        vals += [
            quad_transform_private(p, s.gp[i], mu[4 + i], c, i)
            for i in range(2)
        ]
        worst_g = max(worst_g, max(abs(v) for v in vals))
    identity_ok = worst_g <= 1e-12

    # (b) SCA monotonicity on 100 random feasible instances
    rng = np.random.default_rng(7)
    mono_ok = True
    worst_kkt = 0.0
    solved = 0
    attempts = 0
    while solved < 100 and attempts < 400:
        attempts += 1
        snr = rng.uniform(8.0, 18.0)
        c = symmetric_config(snr, cross_gain=rng.uniform(0.3, 0.8))
        a_hc = rng.uniform(0.0, 0.45 * c.p_max[0] / 3.0)
        report = solve_mc_rsma(
            ArrivalRates(a_hc=(a_hc, a_hc)), MaxMinPrivate(), c
        )
        if report.status is not SolveStatus.CONVERGED:
            continue
        solved += 1
        tr = report.objective_trace
        for x, y in zip(tr, tr[1:]):
            if y < x - 1e-7 * abs(x):
                mono_ok = False
        # (e) inner-solver KKT residual at a representative subproblem
        if solved <= 10:
            bler = bler_budget_from_qos(c.q_hc, c.q_lc)
            st = initialize(c, ArrivalRates(a_hc=(a_hc, a_hc)))
            sol = solve_subproblem(
                st, ArrivalRates(a_hc=(a_hc, a_hc)), MaxMinPrivate(), bler, c
            )
            worst_kkt = max(worst_kkt, sol.result.kkt_residual)
    mono_ok &= solved == 100
    kkt_ok = worst_kkt <= 1e-8

    # (c) objective vs brute-force grid oracle on 20 instances
    rng = np.random.default_rng(99)
    worst_gap = 0.0
    oracle_ok = True
    for _ in range(20):
        c = symmetric_config(
            rng.uniform(12.0, 18.0), cross_gain=rng.uniform(0.4, 0.7)
        )
        a_hc = rng.uniform(0.0, 10.0)
        report = solve_mc_rsma(
            ArrivalRates(a_hc=(a_hc, a_hc)), MaxMinPrivate(), c
        )
        if report.status is not SolveStatus.CONVERGED:
            oracle_ok = False
            continue
        got = min(report.allocation[1].rp)
        b = bler_budget_from_qos(c.q_hc, c.q_lc)
        want = grid_max_min_lc(c, (a_hc, a_hc), b.eps_c, b.eps_p, points=50)
        gap = abs(got - want) / max(want, 1.0)
        worst_gap = max(worst_gap, gap)
        oracle_ok &= gap <= 0.02

    # (d) taylor_rate tangency / first-order consistency
    params = FblParams(1e-7, 1000, 3e5)
    tangency_ok = True
    fo_ok = True
    for gt in (0.5, 2.5536, 9.0):
        tangency_ok &= math.isclose(
            taylor_rate(gt, gt, params), fbl_rate(gt, params), rel_tol=1e-12
        )
        h = 1e-6 * max(gt, 1.0)
        fd = (fbl_rate(gt + h, params) - fbl_rate(gt - h, params)) / (2 * h)
        an = (
            taylor_rate(gt + h, gt, params) - taylor_rate(gt - h, gt, params)
        ) / (2 * h)
        fo_ok &= abs(an - fd) <= 1e-6 * abs(fd)

    ok = identity_ok and mono_ok and oracle_ok and tangency_ok and fo_ok and kkt_ok
    _report(
        capsys, 5, "algorithmic properties", ok,
        f"quad-transform identity max |g| = {worst_g:.2e} over 1000 instances "
        f"(<= 1e-12); SCA trace monotone on {solved}/100 converged instances "
        f"({'ok' if mono_ok else 'violated'}); solver vs grid oracle worst "
        f"gap {worst_gap:.2%} over 20 instances (<= 2%); surrogate tangency "
        f"({'ok' if tangency_ok else 'violated'}) and first-order match "
        f"({'ok' if fo_ok else 'violated'}); subproblem KKT residual "
        f"{worst_kkt:.2e} (<= 1e-8)",
    )


def test_criterion_6_reliability_calculus(capsys):
    trials = 10_000_000
    mc_ok = True
    worst_z = 0.0
    for ec1, ec2, ep in ((5e-3, 5e-3, 5e-3), (1e-3, 4e-3, 2e-3), (2e-2, 1e-3, 1e-2)):
        qc_hat, qp_hat = mc_decoding_trials(ec1, ec2, ep, trials, seed=123)
        qc = effective_common_error(ec1, ec2)
        qp = effective_private_error(ec1, ec2, ep)
        for got, want in ((qc_hat, qc), (qp_hat, qp)):
            sigma = math.sqrt(want * (1 - want) / trials)
            z = abs(got - want) / sigma
            worst_z = max(worst_z, z)
            mc_ok &= z <= 3.0
    budget_ok = True
    for q_hc in np.logspace(-9, -3, 13):
        for q_lc in np.logspace(-6, -1, 11):
            if q_lc - math.sqrt(2 * q_hc) <= 0:
                continue
            b = bler_budget_from_qos(q_hc, q_lc)
            budget_ok &= effective_common_error(b.eps_c, b.eps_c) <= q_hc
            budget_ok &= (
                effective_private_error(b.eps_c, b.eps_c, b.eps_p)
                <= q_lc * (1 + 1e-12)
            )
    ok = mc_ok and budget_ok
    _report(
        capsys, 6, "reliability calculus", ok,
        f"Monte-Carlo ({trials:.0e} trials) worst deviation {worst_z:.2f} "
        f"sigma (<= 3); BLER-budget round trip respects q_hc/q_lc across "
        f"the QoS grid ({'ok' if budget_ok else 'violated'})",
    )


def test_criterion_7_end_to_end_stability(cfg, capsys):
    report = solve_mc_rsma(
        ArrivalRates(a_hc=(10.0, 10.0)), MaxMinPrivate(), cfg
    )
    assert report.status is SolveStatus.CONVERGED
    _, rates = report.allocation
    service = (rates.rc[0], rates.rc[1], rates.rp[0], rates.rp[1])
    margin = tuple(
        0.95 * rate_to_packets_per_slot(r, cfg) for r in service
    )
    arrivals = ArrivalRates(a_hc=margin[:2], a_lc=margin[2:])
    verdicts = {}
    for kind in ("deterministic", "poisson"):
        tr = simulate(
            service, ArrivalProcess(kind, arrivals), horizon=10_000,
            seed=42, cfg=cfg,
        )
        verdicts[kind] = stability_verdict(tr)
    ok = all(
        v is Verdict.STABLE for vs in verdicts.values() for v in vs
    )
    _report(
        capsys, 7, "end-to-end queue stability", ok,
        "converged allocation at 95% arrival margin keeps all four queues "
        f"Stable over 1e4 slots: deterministic="
        f"{[v.value for v in verdicts['deterministic']]}, "
        f"poisson={[v.value for v in verdicts['poisson']]}",
    )
