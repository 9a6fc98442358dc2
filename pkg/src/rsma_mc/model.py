# rsma_mc/model.py
"""System parameters and decision vectors for the 2-UE / 2-AP uplink.

Conventions used throughout the package:
  * channel gains h[i][j] are amplitude gains from UE j to AP i,
  * rates are carried in bits/s inside the solvers; packets/slot only at
    the queue / stability boundary (conversion factor T/M),
  * noise is normalized by default (sigma2 = 1) so p_max encodes SNR.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field


def _as_pair(v, name: str) -> tuple[float, float]:
    if isinstance(v, (int, float)):
        return (float(v), float(v))
    pair = tuple(float(x) for x in v)
    if len(pair) != 2:
        raise ValueError(f"{name} must be a scalar or a pair, got {v!r}")
    return pair  # type: ignore[return-value]


@dataclass(frozen=True)
class SystemConfig:
    """Immutable bundle of all physical-layer and QoS parameters.

    ``h`` is the 2x2 amplitude gain matrix (row = AP, column = UE).
    ``sigma2`` and ``p_max`` accept a scalar (applied to both APs/UEs)
    or a per-AP / per-UE pair.
    """

    h: tuple[tuple[float, float], tuple[float, float]]
    sigma2: tuple[float, float] = (1.0, 1.0)
    p_max: tuple[float, float] = (1.0, 1.0)
    bandwidth_hz: float = 300e3
    slot_s: float = 5e-3
    packet_bits: int = 128
    blocklength: int = 1000
    q_hc: float = 1e-7
    q_lc: float = 1e-3
    allow_short_blocklength: bool = False

    def __post_init__(self):
        h = tuple(tuple(float(x) for x in row) for row in self.h)
        if len(h) != 2 or any(len(row) != 2 for row in h):
            raise ValueError("h must be a 2x2 matrix")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "sigma2", _as_pair(self.sigma2, "sigma2"))
        object.__setattr__(self, "p_max", _as_pair(self.p_max, "p_max"))

        if any(x < 0 for row in self.h for x in row):
            raise ValueError("channel gains must be nonnegative")
        for i, j in ((0, 1), (1, 0)):
            if not self.h[i][i] > self.h[j][i]:
                warnings.warn(
                    f"|h_{i}{i}|={self.h[i][i]} does not exceed cross gain "
                    f"|h_{j}{i}|={self.h[j][i]}; the direct-link dominance "
                    "assumption is violated",
                    stacklevel=3,
                )
        if any(s <= 0 for s in self.sigma2):
            raise ValueError("sigma2 must be positive")
        if any(p <= 0 for p in self.p_max):
            raise ValueError("p_max must be positive")
        if self.bandwidth_hz <= 0:
            raise ValueError("bandwidth_hz must be positive")
        if self.slot_s <= 0:
            raise ValueError("slot_s must be positive")
        if self.packet_bits < 1:
            raise ValueError("packet_bits must be >= 1")
        if int(self.blocklength) != self.blocklength or self.blocklength < 1:
            raise ValueError("blocklength must be a positive integer")
        object.__setattr__(self, "blocklength", int(self.blocklength))
        if self.blocklength < 100 and not self.allow_short_blocklength:
            raise ValueError(
                "blocklength < 100 invalidates the normal approximation; "
                "pass allow_short_blocklength=True to override"
            )
        if not 0.0 < self.q_hc < self.q_lc < 1.0:
            raise ValueError("need 0 < q_hc < q_lc < 1")
        if self.q_lc - math.sqrt(2.0 * self.q_hc) <= 0.0:
            raise ValueError(
                "q_lc - sqrt(2*q_hc) must be positive, otherwise no valid "
                "private-stream error budget exists"
            )

    @property
    def packets_per_bit_slot(self) -> float:
        """T/M factor converting bits/s to packets/slot."""
        return self.slot_s / self.packet_bits


@dataclass(frozen=True)
class PowerAllocation:
    """Transmit powers: pc[i] common stream, pp[i] private stream of UE i."""

    pc: tuple[float, float]
    pp: tuple[float, float]

    def __post_init__(self):
        object.__setattr__(self, "pc", _as_pair(self.pc, "pc"))
        object.__setattr__(self, "pp", _as_pair(self.pp, "pp"))
        if any(x < 0 for x in self.pc + self.pp):
            raise ValueError("powers must be nonnegative")

    def check_budget(self, cfg: SystemConfig, tol: float = 1e-9) -> None:
        for i in range(2):
            if self.pc[i] + self.pp[i] > cfg.p_max[i] * (1 + tol) + tol:
                raise ValueError(
                    f"UE {i}: pc+pp = {self.pc[i] + self.pp[i]} exceeds "
                    f"budget {cfg.p_max[i]}"
                )


@dataclass(frozen=True)
class RateAllocation:
    """Rates in bits/s.

    ``r_decode[i][j]`` is the rate at which AP i decodes UE j's common
    stream; the end-to-end common rate rc[i] cannot exceed the decode
    rate at either AP.
    """

    rc: tuple[float, float]
    rp: tuple[float, float]
    r_decode: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self):
        object.__setattr__(self, "rc", _as_pair(self.rc, "rc"))
        object.__setattr__(self, "rp", _as_pair(self.rp, "rp"))
        rd = tuple(tuple(float(x) for x in row) for row in self.r_decode)
        if len(rd) != 2 or any(len(row) != 2 for row in rd):
            raise ValueError("r_decode must be 2x2")
        object.__setattr__(self, "r_decode", rd)
        if any(x < 0 for x in self.rc + self.rp) or any(
            x < 0 for row in rd for x in row
        ):
            raise ValueError("rates must be nonnegative")
        for i in range(2):
            j = 1 - i
            cap = min(rd[i][i], rd[j][i])
            if self.rc[i] > cap * (1 + 1e-6) + 1e-6:
                raise ValueError(
                    f"rc[{i}]={self.rc[i]} exceeds decode capability {cap}"
                )


@dataclass(frozen=True)
class ArrivalRates:
    """Mean arrival rates in packets/slot for the HC and LC queues."""

    a_hc: tuple[float, float] = (0.0, 0.0)
    a_lc: tuple[float, float] = (0.0, 0.0)

    def __post_init__(self):
        object.__setattr__(self, "a_hc", _as_pair(self.a_hc, "a_hc"))
        object.__setattr__(self, "a_lc", _as_pair(self.a_lc, "a_lc"))
        if any(x < 0 for x in self.a_hc + self.a_lc):
            raise ValueError("arrival rates must be nonnegative")


def rate_to_packets_per_slot(rate_bits_per_s: float, cfg: SystemConfig) -> float:
    """Convert a service rate in bits/s to packets/slot (factor T/M)."""
    if rate_bits_per_s < 0:
        raise ValueError("rate must be nonnegative")
    return rate_bits_per_s * cfg.slot_s / cfg.packet_bits


def packets_per_slot_to_rate(pkts_per_slot: float, cfg: SystemConfig) -> float:
    """Inverse of :func:`rate_to_packets_per_slot`."""
    if pkts_per_slot < 0:
        raise ValueError("packet rate must be nonnegative")
    return pkts_per_slot * cfg.packet_bits / cfg.slot_s


def symmetric_config(
    snr_db: float,
    cross_gain: float = 0.6,
    *,
    bandwidth_hz: float = 300e3,
    slot_s: float = 5e-3,
    packet_bits: int = 128,
    blocklength: int = 1000,
    q_hc: float = 1e-7,
    q_lc: float = 1e-3,
) -> SystemConfig:
    """Symmetric two-user setup: unit direct gains, unit noise, p_max = SNR."""
    if cross_gain < 0:
        raise ValueError("cross_gain must be nonnegative")
    return SystemConfig(
        h=((1.0, cross_gain), (cross_gain, 1.0)),
        sigma2=1.0,
        p_max=10.0 ** (snr_db / 10.0),
        bandwidth_hz=bandwidth_hz,
        slot_s=slot_s,
        packet_bits=packet_bits,
        blocklength=blocklength,
        q_hc=q_hc,
        q_lc=q_lc,
    )


_CONFIG_KEYS = {
    "h11", "h12", "h21", "h22", "sigma2", "snr_db", "p_max",
    "bandwidth_hz", "slot_ms", "packet_bits", "blocklength", "q_hc", "q_lc",
}


class ConfigError(ValueError):
    """Raised for malformed or inconsistent config files."""


def load_config(path) -> SystemConfig:
    """Parse a flat ``key = value`` config file (``#`` starts a comment).

    Either ``snr_db`` or ``p_max`` must be given (not both); all other
    keys are required except that missing optional keys fall back to the
    symmetric-setup defaults.
    """
    values: dict[str, float] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, _, val = line.partition("=")
            key = key.strip()
            if key not in _CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            if key in values:
                raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
            try:
                values[key] = float(val.strip())
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key!r}") from exc

    if ("snr_db" in values) == ("p_max" in values):
        raise ConfigError("exactly one of snr_db / p_max must be set")
    p_max = values.pop("p_max", None)
    snr_db = values.pop("snr_db", None)
    if p_max is None:
        p_max = 10.0 ** (snr_db / 10.0)

    defaults = {
        "h11": 1.0, "h12": 0.6, "h21": 0.6, "h22": 1.0,
        "sigma2": 1.0, "bandwidth_hz": 300e3, "slot_ms": 5.0,
        "packet_bits": 128, "blocklength": 1000, "q_hc": 1e-7, "q_lc": 1e-3,
    }
    defaults.update(values)
    v = defaults
    try:
        return SystemConfig(
            h=((v["h11"], v["h12"]), (v["h21"], v["h22"])),
            sigma2=v["sigma2"],
            p_max=p_max,
            bandwidth_hz=v["bandwidth_hz"],
            slot_s=v["slot_ms"] * 1e-3,
            packet_bits=int(v["packet_bits"]),
            blocklength=int(v["blocklength"]),
            q_hc=v["q_hc"],
            q_lc=v["q_lc"],
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
