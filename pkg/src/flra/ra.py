"""Random-access analytics under the FL round phase structure.

RA devices see the full band B while FL devices compute or idle, and
the residual (1-rho)B during the FL upload. Packet times, collision
probabilities, normalized throughput and retransmission-inflated
energy all follow from that two-phase split. ALOHA's vulnerable
window spans two packet times; slotted ALOHA uses one worst-case
slot (the shared-phase packet time), since RA devices are not
synchronized to the FL schedule.

``lam`` arguments accept scalars or numpy arrays; limits at infinite
packet time (rho = 1 with a nonzero upload) resolve to probability 0
and throughput 0 so grids over [0, 1] stay total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import shannon_rate
from .numerics import golden_section_max
from .params import Protocol, SystemParams, check_bandwidth_share

# upper end of the rate search: offered load 10 gives an e^-20 success
# factor, beyond which throughput is negligible for both protocols
_LAMBDA_SEARCH_LOADS = 10.0


@dataclass(frozen=True)
class RaPoint:
    """Evaluated RA state at a given (lambda, rho)."""

    protocol: Protocol
    lambda_total: float
    rho: float
    t_pkt_full: float
    t_pkt_shared: float
    t_pkt_avg: float
    p_success: float
    throughput: float
    energy_per_packet: float


def ra_packet_time(params: SystemParams, b: float) -> float:
    """RA packet transmission time [s] on a band of width b."""
    if params.s_ra == 0.0:
        return 0.0
    rate = shannon_rate(b, params.gain_ra, params.p_tx_ra, params.n0)
    if rate == 0.0:
        return math.inf
    return params.s_ra / rate


def _phase_weights(params: SystemParams, t_tx_fl: float) -> tuple[float, float]:
    if not 0.0 <= t_tx_fl <= params.t_round:
        raise ValueError("t_tx_fl must lie within the round duration")
    w_shared = t_tx_fl / params.t_round
    return 1.0 - w_shared, w_shared


def _packet_times(params: SystemParams, rho: float) -> tuple[float, float]:
    rho = check_bandwidth_share(rho)
    t_full = ra_packet_time(params, params.bandwidth)
    t_shared = ra_packet_time(params, (1.0 - rho) * params.bandwidth)
    return t_full, t_shared


def ra_packet_time_avg(params: SystemParams, rho: float, t_tx_fl: float) -> float:
    """Phase-weighted average RA packet time [s]."""
    w_full, w_shared = _phase_weights(params, t_tx_fl)
    t_full, t_shared = _packet_times(params, rho)
    if w_shared == 0.0:
        return t_full
    return w_full * t_full + w_shared * t_shared


def _nocoll(lam, t: float, window_mult: float):
    """exp(-window_mult * lam * t) with limits: lam=0 -> 1, t=inf -> 0."""
    with np.errstate(invalid="ignore"):
        out = np.exp(-window_mult * np.asarray(lam, dtype=float) * t)
    # nan arises only from 0 * inf, i.e. lam = 0: no contention at all
    return np.where(np.isnan(out), 1.0, out)


def _offered_term(lam, t: float, weight: float, window_mult: float):
    """weight * lam * t * exp(-window_mult * lam * t); 0 in the t=inf limit."""
    lam = np.asarray(lam, dtype=float)
    with np.errstate(invalid="ignore", over="ignore"):
        raw = weight * lam * t * np.exp(-window_mult * lam * t)
    return np.where(np.isfinite(raw), raw, 0.0)


def success_prob(
    protocol: Protocol,
    params: SystemParams,
    lam,
    rho: float,
    t_tx_fl: float,
):
    """Collision-free probability of one packet, phase-averaged."""
    t_full, t_shared = _packet_times(params, rho)
    w_full, w_shared = _phase_weights(params, t_tx_fl)
    if protocol is Protocol.ALOHA:
        p = w_full * _nocoll(lam, t_full, 2.0) + w_shared * _nocoll(lam, t_shared, 2.0)
    else:
        p = _nocoll(lam, t_shared, 1.0)
    return p if isinstance(p, np.ndarray) and p.ndim else float(p)


def throughput(
    protocol: Protocol,
    params: SystemParams,
    lam,
    rho: float,
    t_tx_fl: float,
):
    """Expected normalized throughput at total attempt rate ``lam``."""
    t_full, t_shared = _packet_times(params, rho)
    w_full, w_shared = _phase_weights(params, t_tx_fl)
    if protocol is Protocol.ALOHA:
        q = _offered_term(lam, t_full, w_full, 2.0) + _offered_term(
            lam, t_shared, w_shared, 2.0
        )
    else:
        t_avg = w_full * t_full + w_shared * t_shared
        q = _offered_term(lam, t_avg, 1.0, 0.0) * _nocoll(lam, t_shared, 1.0)
        q = np.where(np.isfinite(q), q, 0.0)
    return q if isinstance(q, np.ndarray) and q.ndim else float(q)


def energy_per_packet(
    protocol: Protocol,
    params: SystemParams,
    lam: float,
    rho: float,
    t_tx_fl: float,
) -> float:
    """Average transmission energy [J] per delivered packet, retransmissions included."""
    t_avg = ra_packet_time_avg(params, rho, t_tx_fl)
    p_s = success_prob(protocol, params, lam, rho, t_tx_fl)
    if p_s == 0.0 or math.isinf(t_avg):
        return math.inf
    return params.p_tx_ra * t_avg / p_s


def _lambda_grid(t_pkt_full: float, n: int = 1024) -> np.ndarray:
    lam_hi = _LAMBDA_SEARCH_LOADS / t_pkt_full
    lin = np.linspace(0.0, lam_hi, n + 1)[1:]
    # log tail catches peaks far below 1/t_pkt_full (large shared packet times)
    geo = np.geomspace(lam_hi * 1e-8, lam_hi, n // 2)
    return np.unique(np.concatenate([lin, geo]))


def max_throughput(
    protocol: Protocol,
    params: SystemParams,
    rho: float,
    t_tx_fl: float,
    rel_tol: float = 1e-6,
) -> tuple[float, float]:
    """Peak normalized throughput over the attempt rate.

    Returns (lambda_peak, q_max). A coarse scan brackets the global
    peak (the two-phase ALOHA curve can be bimodal), then a
    golden-section pass refines it.
    """
    t_full, _ = _packet_times(params, rho)
    if t_full == 0.0:
        return 0.0, 0.0
    grid = _lambda_grid(t_full)
    q = np.asarray(throughput(protocol, params, grid, rho, t_tx_fl))
    best = int(np.argmax(q))
    if q[best] <= 0.0:
        return 0.0, 0.0
    lo = grid[best - 1] if best > 0 else grid[best] * 0.1
    hi = grid[best + 1] if best + 1 < grid.size else grid[best] * 1.5
    lam_peak, q_max = golden_section_max(
        lambda lam: float(throughput(protocol, params, lam, rho, t_tx_fl)),
        float(lo),
        float(hi),
        rel_tol=rel_tol,
    )
    return lam_peak, q_max


def ra_point(
    protocol: Protocol,
    params: SystemParams,
    lam: float,
    rho: float,
    t_tx_fl: float,
) -> RaPoint:
    """Bundle all RA quantities at one operating point."""
    t_full, t_shared = _packet_times(params, rho)
    return RaPoint(
        protocol=protocol,
        lambda_total=float(lam),
        rho=float(rho),
        t_pkt_full=t_full,
        t_pkt_shared=t_shared,
        t_pkt_avg=ra_packet_time_avg(params, rho, t_tx_fl),
        p_success=float(success_prob(protocol, params, lam, rho, t_tx_fl)),
        throughput=float(throughput(protocol, params, lam, rho, t_tx_fl)),
        energy_per_packet=energy_per_packet(protocol, params, lam, rho, t_tx_fl),
    )
