"""Federated-learning round timing and transmission energy.

The FL population uploads its model in FDMA over a share ``rho`` of the
band; the round is computation, then idle slack, then the upload. All
functions return infinity sentinels at rho = 0 instead of raising, so
grid sweeps over [0, 1] evaluate totally.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core import shannon_rate
from .numerics import bisect_boundary
from .params import SystemParams, check_bandwidth_share


@dataclass(frozen=True)
class FlRound:
    """Phase decomposition of one FL round (all in seconds)."""

    t_cpu: float
    t_idle: float
    t_tx: float
    t_round: float
    # phase-start instants: computation, idling, transmission, round end
    t0: float
    t1: float
    t2: float
    t3: float


def fl_device_rate(params: SystemParams, rho: float, device_index: int) -> float:
    """Uplink rate [bit/s] of one FL device on its FDMA sub-band."""
    rho = check_bandwidth_share(rho)
    gain = params.gains_fl[device_index]
    sub_band = rho * params.bandwidth / params.n_fl
    return shannon_rate(sub_band, gain, params.p_tx_fl, params.n0)


def fl_tx_time(params: SystemParams, rho: float) -> float:
    """Global FL upload time [s]: the slowest device sets the pace.

    Returns 0 for an empty model or no devices, +inf at rho = 0.
    """
    rho = check_bandwidth_share(rho)
    if params.n_fl == 0 or params.s_fl == 0.0:
        return 0.0
    if rho == 0.0:
        return math.inf
    slowest = min(
        fl_device_rate(params, rho, i) for i in range(params.n_fl)
    )
    return params.s_fl / slowest


def fl_device_energy(params: SystemParams, rho: float, device_index: int) -> float:
    """Transmission energy [J] of one device for a single model upload."""
    rho = check_bandwidth_share(rho)
    if params.s_fl == 0.0:
        return 0.0
    if rho == 0.0:
        return math.inf
    return params.p_tx_fl * params.s_fl / fl_device_rate(params, rho, device_index)


def fl_total_energy(params: SystemParams, rho: float) -> float:
    """Per-round transmission energy [J] summed over all FL devices."""
    return sum(fl_device_energy(params, rho, i) for i in range(params.n_fl))


def fl_latency_feasible(params: SystemParams, rho: float) -> bool:
    """Whether the upload fits in the round's latency budget."""
    return fl_tx_time(params, rho) <= params.latency_budget


def fl_round(params: SystemParams, rho: float) -> FlRound:
    """Phase schedule of a round; requires a feasible rho."""
    t_tx = fl_tx_time(params, rho)
    t_idle = params.t_round - params.t_cpu - t_tx
    if t_idle < 0:
        raise ValueError(f"rho={rho} violates the FL latency budget")
    return FlRound(
        t_cpu=params.t_cpu,
        t_idle=t_idle,
        t_tx=t_tx,
        t_round=params.t_round,
        t0=0.0,
        t1=params.t_cpu,
        t2=params.t_cpu + t_idle,
        t3=params.t_round,
    )


def rho_min(params: SystemParams, abs_tol: float = 1e-6) -> float | None:
    """Smallest bandwidth share meeting the FL latency budget.

    Located by bisection on the (monotone) feasibility predicate.
    Returns None when even rho = 1 is infeasible.
    """
    if not fl_latency_feasible(params, 1.0):
        return None
    return bisect_boundary(
        lambda r: fl_latency_feasible(params, r), 0.0, 1.0, abs_tol=abs_tol
    )
