"""Shared domain types: system parameters and protocol selection.

All quantities are kept in SI base units (bits, seconds, Hz, watts,
joules, packets/second). Unit conversions belong at I/O boundaries,
never inside the model.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Protocol(Enum):
    """Random-access MAC protocol used by the throughput-oriented devices."""

    ALOHA = "aloha"
    SLOTTED_ALOHA = "saloha"


@dataclass(frozen=True)
class SystemParams:
    """Physical and protocol constants of the shared-uplink system.

    Attributes:
        n_fl: number of federated-learning devices.
        lambda_fresh: exogenous fresh-packet arrival rate [pkts/s].
        t_cpu: FL local computation time per round [s].
        t_round: total FL round duration [s].
        q_min: minimum required normalized RA throughput, in [0, 1).
        eps_retx: minimum retransmission rate floor [pkts/s].
        bandwidth: total uplink bandwidth [Hz].
        s_fl: FL model size [bits].
        s_ra: RA packet size [bits].
        gains_fl: per-FL-device channel gains, length n_fl, each in (0, 1].
        gain_ra: average RA channel gain, in (0, 1].
        p_tx_fl: FL transmit power [W].
        p_tx_ra: RA transmit power [W].
        n0: noise power spectral density [W/Hz].
    """

    n_fl: int
    lambda_fresh: float
    t_cpu: float
    t_round: float
    q_min: float
    eps_retx: float
    bandwidth: float
    s_fl: float
    s_ra: float
    gains_fl: tuple[float, ...]
    gain_ra: float
    p_tx_fl: float
    p_tx_ra: float
    n0: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "gains_fl", tuple(float(g) for g in self.gains_fl))
        if self.n_fl < 0:
            raise ValueError("n_fl must be nonnegative")
        if self.n_fl != len(self.gains_fl):
            raise ValueError(
                f"n_fl={self.n_fl} does not match len(gains_fl)={len(self.gains_fl)}"
            )
        if not 0.0 <= self.q_min < 1.0:
            raise ValueError("q_min must lie in [0, 1)")
        if self.lambda_fresh < 0:
            raise ValueError("lambda_fresh must be nonnegative")
        # s_fl = 0 (empty model) and s_ra = 0 are degenerate but well-defined limits.
        if self.s_fl < 0 or self.s_ra < 0:
            raise ValueError("payload sizes must be nonnegative")
        for name in ("t_cpu", "t_round", "eps_retx", "bandwidth", "gain_ra",
                     "p_tx_fl", "p_tx_ra", "n0"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if not self.t_cpu < self.t_round:
            raise ValueError("t_cpu must be smaller than t_round")
        for g in self.gains_fl:
            if not 0.0 < g <= 1.0:
                raise ValueError("FL channel gains must lie in (0, 1]")
        if not 0.0 < self.gain_ra <= 1.0:
            raise ValueError("gain_ra must lie in (0, 1]")

    @property
    def latency_budget(self) -> float:
        """Time available for the FL model upload within a round [s]."""
        return self.t_round - self.t_cpu

    @property
    def gain_fl_min(self) -> float:
        """Worst FL channel gain; drives the global upload time."""
        if not self.gains_fl:
            raise ValueError("no FL devices")
        return min(self.gains_fl)


def check_bandwidth_share(rho: float) -> float:
    """Validate a bandwidth share and return it as a float."""
    rho = float(rho)
    if not 0.0 <= rho <= 1.0:
        raise ValueError(f"bandwidth share must lie in [0, 1], got {rho}")
    return rho
