# rsma_mc/plotting.py
"""Render sweep results as figures next to the CSV output."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

_LABELS = {
    "mc-rsma": "MC-RSMA",
    "mc-tdm": "MC-TDM",
    "sc-tdm": "SC-TDM",
}
_STYLES = {
    "mc-rsma": dict(color="C0", marker="o"),
    "mc-tdm": dict(color="C1", marker="s"),
    "sc-tdm": dict(color="C2", marker="^"),
}


def _by_scheme(rows):
    out: dict[str, tuple[list, list]] = {}
    for scheme, x, y in rows:
        xs, ys = out.setdefault(scheme, ([], []))
        xs.append(x)
        ys.append(y)
    return out


def _plot(rows, xlabel: str, ylabel: str, path, logx: bool = False) -> None:
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for scheme, (xs, ys) in sorted(_by_scheme(rows).items()):
        ax.plot(xs, ys, label=_LABELS.get(scheme, scheme),
                markersize=4, **_STYLES.get(scheme, {}))
    if logx:
        ax.set_xscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.4)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def plot_sweep(rows, experiment: str, path) -> None:
    """Figure for one sweep's rows; axis labels depend on the experiment."""
    if experiment == "StabilityRegion":
        _plot(rows, "HC arrival rate (packets/slot)",
              "max-min LC arrival rate (packets/slot)", path)
    elif experiment == "RateLossVsBlocklength":
        _plot(rows, "blocklength (channel uses)",
              "relative LC rate loss", path, logx=True)
    elif experiment == "RateVsSnr":
        _plot(rows, "SNR (dB)", "max-min LC rate (packets/slot)", path)
    else:
        raise ValueError(f"unknown experiment {experiment!r}")
