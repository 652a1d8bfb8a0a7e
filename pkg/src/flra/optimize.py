"""Energy minimization over the bandwidth share and the attempt rate.

The problem decomposes: for each rho the cheapest admissible attempt
rate is the smaller of the two rates where throughput meets its floor
(ascending branch), clipped from below by the retransmission floor
lambda' + eps. A grid search over rho, optionally refined by a local
golden-section pass, then picks the energy-minimizing share.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import fl, ra
from .numerics import bisect_root, golden_section_min
from .params import Protocol, SystemParams

BINDING_ROOT = "throughput-root"
BINDING_FLOOR = "retransmission-floor"

_Q_SLACK = 1e-9  # admissibility slack on the throughput constraint


class GloballyInfeasible(Exception):
    """No (lambda, rho) point satisfies all constraints."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class Solution:
    """One optimizer result (mirrors a summary-table row)."""

    protocol: Protocol
    rho_star: float
    lambda_star: float
    t_tx_fl: float
    t_pkt_avg: float
    e_fl_total: float
    e_ra_total: float
    e_total: float
    e_bit_fl: float
    e_bit_ra: float
    p_success: float
    feasible: bool
    binding: str


@dataclass(frozen=True)
class SweepPoint:
    """Per-point sweep record; infeasible points carry a reason."""

    value: float
    protocol: Protocol
    solution: Solution | None
    feasible: bool
    reason: str = ""


def lambda_min(
    protocol: Protocol,
    params: SystemParams,
    rho: float,
    t_tx_fl: float,
    rel_tol: float = 1e-9,
) -> float | None:
    """Smallest attempt rate whose throughput reaches q_min.

    Scans the ascending branch for the first crossing, then bisects
    inside that cell. None when q_min exceeds the peak throughput.
    """
    q = params.q_min
    if q == 0.0:
        return 0.0
    lam_peak, q_max = ra.max_throughput(protocol, params, rho, t_tx_fl)
    if q_max < q:
        return None
    grid = np.linspace(0.0, lam_peak, 513)
    qs = np.asarray(ra.throughput(protocol, params, grid, rho, t_tx_fl))
    above = np.nonzero(qs >= q)[0]
    if above.size == 0:
        lo, hi = grid[-1], lam_peak
    else:
        i = int(above[0])
        if qs[i] == q:
            return float(grid[i])
        lo, hi = float(grid[i - 1]), float(grid[i])
    return bisect_root(
        lambda lam: float(ra.throughput(protocol, params, lam, rho, t_tx_fl)) - q,
        lo,
        hi,
        rel_tol=rel_tol,
    )


def lambda_star(
    protocol: Protocol,
    params: SystemParams,
    rho: float,
    t_tx_fl: float,
) -> tuple[float, str] | None:
    """Optimal attempt rate at fixed rho, with the binding constraint.

    max(lambda_min, lambda' + eps); None when no admissible rate exists.
    """
    lam_min = lambda_min(protocol, params, rho, t_tx_fl)
    if lam_min is None:
        return None
    floor = params.lambda_fresh + params.eps_retx
    if lam_min >= floor:
        return lam_min, BINDING_ROOT
    # floor binds: still admissible only while throughput has not fallen
    # back below q on the descending branch
    q_at_floor = float(ra.throughput(protocol, params, floor, rho, t_tx_fl))
    if q_at_floor < params.q_min - _Q_SLACK * max(params.q_min, 1.0):
        return None
    return floor, BINDING_FLOOR


def evaluate_rho(
    protocol: Protocol, params: SystemParams, rho: float
) -> Solution | None:
    """Full solution components at one bandwidth share; None if infeasible."""
    if not fl.fl_latency_feasible(params, rho):
        return None
    t_tx_fl = fl.fl_tx_time(params, rho)
    lam = lambda_star(protocol, params, rho, t_tx_fl)
    if lam is None:
        return None
    lam_star, binding = lam
    e_pkt = ra.energy_per_packet(protocol, params, lam_star, rho, t_tx_fl)
    n_fresh = params.lambda_fresh * params.t_round
    e_ra_total = n_fresh * e_pkt
    e_fl_total = fl.fl_total_energy(params, rho)
    fl_bits = params.n_fl * params.s_fl
    ra_bits = n_fresh * params.s_ra
    return Solution(
        protocol=protocol,
        rho_star=float(rho),
        lambda_star=lam_star,
        t_tx_fl=t_tx_fl,
        t_pkt_avg=ra.ra_packet_time_avg(params, rho, t_tx_fl),
        e_fl_total=e_fl_total,
        e_ra_total=e_ra_total,
        e_total=e_fl_total + e_ra_total,
        e_bit_fl=e_fl_total / fl_bits if fl_bits > 0 else 0.0,
        e_bit_ra=e_ra_total / ra_bits if ra_bits > 0 else 0.0,
        p_success=float(
            ra.success_prob(protocol, params, lam_star, rho, t_tx_fl)
        ),
        feasible=True,
        binding=binding,
    )


def objective_energy(protocol: Protocol, params: SystemParams, rho: float) -> float:
    """Total energy at one rho; +inf when the point is infeasible."""
    sol = evaluate_rho(protocol, params, rho)
    return sol.e_total if sol is not None else math.inf


def solve(
    protocol: Protocol,
    params: SystemParams,
    grid_step: float = 1e-3,
    refine: bool = True,
) -> Solution:
    """Grid search over rho with an optional local refinement pass.

    Ties break toward the smaller rho. Raises GloballyInfeasible when
    no grid point admits both constraints; the message names the first
    violated one.
    """
    if not 0.0 < grid_step <= 0.1:
        raise ValueError("grid_step must lie in (0, 0.1]")
    rho_lo = fl.rho_min(params)
    if rho_lo is None:
        raise GloballyInfeasible(
            "FL latency constraint: the model upload does not fit the round "
            "budget even at rho = 1"
        )
    grid = np.arange(rho_lo, 1.0, grid_step)
    if grid.size == 0 or grid[-1] < 1.0:
        grid = np.append(grid, 1.0)

    best: Solution | None = None
    for rho in grid:
        sol = evaluate_rho(protocol, params, float(rho))
        if sol is not None and (best is None or sol.e_total < best.e_total):
            best = sol
    if best is None:
        raise GloballyInfeasible(
            f"RA throughput constraint: q_min={params.q_min} is unreachable at "
            f"every feasible bandwidth share (rho >= {rho_lo:.6f})"
        )
    if refine:
        lo = max(rho_lo, best.rho_star - grid_step)
        hi = min(1.0, best.rho_star + grid_step)
        rho_ref, _ = golden_section_min(
            lambda r: objective_energy(protocol, params, r), lo, hi, rel_tol=1e-9
        )
        refined = evaluate_rho(protocol, params, rho_ref)
        if refined is not None and refined.e_total < best.e_total:
            best = refined
    return best


def _with_n_fl(params: SystemParams, n: int) -> SystemParams:
    gain = params.gains_fl[0] if params.gains_fl else params.gain_ra
    return replace(params, n_fl=n, gains_fl=(gain,) * n)


def sweep_fl_devices(
    params: SystemParams,
    protocol: Protocol,
    n_values: list[int],
    grid_step: float = 1e-3,
) -> list[SweepPoint]:
    """Re-solve at each FL population size; gains are replicated."""
    points = []
    for n in n_values:
        p = _with_n_fl(params, int(n))
        try:
            sol = solve(protocol, p, grid_step)
            points.append(SweepPoint(float(n), protocol, sol, True))
        except GloballyInfeasible as exc:
            points.append(SweepPoint(float(n), protocol, None, False, exc.reason))
    return points


def sweep_arrivals(
    params: SystemParams,
    protocol: Protocol,
    lambda_values: list[float],
    grid_step: float = 1e-3,
) -> list[SweepPoint]:
    """Re-solve at each fresh-arrival rate."""
    points = []
    for lam in lambda_values:
        p = replace(params, lambda_fresh=float(lam))
        try:
            sol = solve(protocol, p, grid_step)
            points.append(SweepPoint(float(lam), protocol, sol, True))
        except GloballyInfeasible as exc:
            points.append(SweepPoint(float(lam), protocol, None, False, exc.reason))
    return points


@dataclass(frozen=True)
class RhoSweepPoint:
    """Per-rho landscape record for figure export."""

    rho: float
    protocol: Protocol
    feasible: bool
    q_max: float
    lambda_peak: float
    lambda_star: float
    e_fl_total: float
    e_ra_per_packet: float
    e_total: float
    reason: str = ""


def sweep_rho(
    params: SystemParams,
    protocol: Protocol,
    rho_values: list[float],
) -> list[RhoSweepPoint]:
    """Throughput ceiling and energy components across bandwidth shares."""
    points = []
    for rho in rho_values:
        rho = float(rho)
        if not fl.fl_latency_feasible(params, rho):
            points.append(
                RhoSweepPoint(
                    rho, protocol, False, math.nan, math.nan, math.nan,
                    math.nan, math.nan, math.nan, "FL latency",
                )
            )
            continue
        t_tx_fl = fl.fl_tx_time(params, rho)
        lam_peak, q_max = ra.max_throughput(protocol, params, rho, t_tx_fl)
        sol = evaluate_rho(protocol, params, rho)
        if sol is None:
            points.append(
                RhoSweepPoint(
                    rho, protocol, False, q_max, lam_peak, math.nan,
                    fl.fl_total_energy(params, rho), math.nan, math.nan,
                    "RA throughput",
                )
            )
            continue
        points.append(
            RhoSweepPoint(
                rho, protocol, True, q_max, lam_peak, sol.lambda_star,
                sol.e_fl_total,
                ra.energy_per_packet(protocol, params, sol.lambda_star, rho, t_tx_fl),
                sol.e_total,
            )
        )
    return points
