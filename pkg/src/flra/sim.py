"""Discrete-event Monte Carlo oracle for the RA collision model.

Poisson arrivals are generated over the FL round phase structure and
checked for collisions directly, with no analytic shortcut: ALOHA
packets transmit immediately and fail on any interval overlap;
slotted-ALOHA arrivals defer to fixed worst-case slots and fail when
the slot is shared. The timeline is processed in chunks so memory
stays bounded at high packet counts; chunk boundaries carry the
running coverage state (and align to slot edges in slotted mode).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from . import fl, ra
from ._kernels import aloha_chunk, slotted_chunk
from .params import Protocol, SystemParams, check_bandwidth_share

# expected arrivals per generation chunk
_CHUNK_ARRIVALS = 4_000_000


@dataclass(frozen=True)
class SimConfig:
    params: SystemParams
    protocol: Protocol
    lambda_total: float
    rho: float
    n_rounds: int = 1
    seed: int = 0

    def __post_init__(self) -> None:
        check_bandwidth_share(self.rho)
        if self.n_rounds < 1:
            raise ValueError("n_rounds must be >= 1")
        if self.lambda_total < 0:
            raise ValueError("lambda_total must be nonnegative")


@dataclass(frozen=True)
class SimStats:
    """Empirical estimates with counts; phase 0 = full band, 1 = shared."""

    attempts: int
    successes: int
    collided: int
    p_success_hat: float
    throughput_hat: float
    stderr_p: float
    stderr_q: float
    attempts_by_phase: tuple[int, int]
    successes_by_phase: tuple[int, int]
    total_time: float

    @property
    def p_success_by_phase(self) -> tuple[float, float]:
        return tuple(
            s / a if a > 0 else 1.0
            for s, a in zip(self.successes_by_phase, self.attempts_by_phase)
        )

    def stderr_p_phase(self, phase: int) -> float:
        a = self.attempts_by_phase[phase]
        if a == 0:
            return 0.0
        p = self.successes_by_phase[phase] / a
        return math.sqrt(p * (1.0 - p) / a)


def _round_geometry(config: SimConfig) -> tuple[float, float, float, float]:
    """(t_tx_fl, t_full, t_shared, shared_phase_start_within_round)."""
    params = config.params
    if not fl.fl_latency_feasible(params, config.rho):
        raise ValueError(f"rho={config.rho} violates the FL latency budget")
    t_tx_fl = fl.fl_tx_time(params, config.rho)
    t_full = ra.ra_packet_time(params, params.bandwidth)
    t_shared = ra.ra_packet_time(params, (1.0 - config.rho) * params.bandwidth)
    if t_tx_fl > 0.0 and math.isinf(t_shared):
        raise ValueError("shared-phase packet time is infinite (rho = 1)")
    return t_tx_fl, t_full, t_shared, params.t_round - t_tx_fl


def _chunk_edges(total_time: float, lam: float, align: float | None) -> np.ndarray:
    expected = lam * total_time
    n_chunks = max(1, math.ceil(expected / _CHUNK_ARRIVALS))
    if align is None:
        return np.linspace(0.0, total_time, n_chunks + 1)
    # slot-aligned interior edges so no slot spans two chunks
    per_chunk = max(1, math.ceil(total_time / align / n_chunks))
    edges = [0.0]
    while edges[-1] + per_chunk * align < total_time:
        edges.append(edges[-1] + per_chunk * align)
    edges.append(total_time)
    return np.asarray(edges)


class _TraceWriter:
    def __init__(self, path):
        self._fh = open(path, "w", newline="")
        self._writer = csv.writer(self._fh)
        self._writer.writerow(["arrival_time_s", "phase", "duration_s", "outcome"])

    def write(self, times, phases, durations, ok):
        for t, ph, d, o in zip(times, phases, durations, ok):
            self._writer.writerow(
                [f"{t:.9f}", int(ph), f"{d:.9g}", "success" if o else "collision"]
            )

    def close(self):
        self._fh.close()


def simulate(config: SimConfig, trace_path: str | None = None) -> SimStats:
    """Run the Monte Carlo experiment; deterministic for a given seed."""
    t_tx_fl, t_full, t_shared, phase_switch = _round_geometry(config)
    params = config.params
    total_time = config.n_rounds * params.t_round
    t_avg = ra.ra_packet_time_avg(params, config.rho, t_tx_fl)
    rng = np.random.default_rng(config.seed)
    lam = config.lambda_total

    attempts = np.zeros(2, dtype=np.int64)
    successes = np.zeros(2, dtype=np.int64)
    trace = _TraceWriter(trace_path) if trace_path else None

    if config.protocol is Protocol.ALOHA:
        edges = _chunk_edges(total_time, lam, align=None)
        max_end = -math.inf
        pending = None  # (start, end, phase, backward_ok)
        for lo, hi in zip(edges[:-1], edges[1:]):
            n = rng.poisson(lam * (hi - lo))
            times = np.sort(rng.uniform(lo, hi, n))
            if pending is not None and n > 0:
                p_start, p_end, p_phase, p_back = pending
                ok_p = p_back and times[0] >= p_end
                attempts[p_phase] += 1
                successes[p_phase] += ok_p
                if trace:
                    trace.write([p_start], [p_phase],
                                [t_shared if p_phase else t_full], [ok_p])
                pending = None
            if n == 0:
                continue
            phases = ((times % params.t_round) >= phase_switch).astype(np.int64)
            durations = np.where(phases == 1, t_shared, t_full)
            ends = times + durations
            ok, max_end = aloha_chunk(times, ends, max_end)
            # last packet's forward check waits for the next chunk
            attempts[0] += int(np.count_nonzero(phases[:-1] == 0))
            attempts[1] += int(np.count_nonzero(phases[:-1] == 1))
            done = ok[:-1]
            successes[0] += int(np.count_nonzero(done & (phases[:-1] == 0)))
            successes[1] += int(np.count_nonzero(done & (phases[:-1] == 1)))
            if trace and n > 1:
                trace.write(times[:-1], phases[:-1], durations[:-1], done)
            pending = (float(times[-1]), float(ends[-1]), int(phases[-1]), bool(ok[-1]))
        if pending is not None:
            p_start, p_end, p_phase, p_back = pending
            attempts[p_phase] += 1
            successes[p_phase] += p_back
            if trace:
                trace.write([p_start], [p_phase],
                            [t_shared if p_phase else t_full], [p_back])
        succ_time = successes[0] * t_full + successes[1] * t_shared
        throughput_hat = succ_time / total_time
        stderr_q = (
            math.sqrt(successes[0] * t_full**2 + successes[1] * t_shared**2)
            / total_time
        )
    else:
        t_slot = t_shared
        if t_slot == 0.0:
            raise ValueError("slotted mode needs a positive packet time")
        edges = _chunk_edges(total_time, lam, align=t_slot)
        for lo, hi in zip(edges[:-1], edges[1:]):
            n = rng.poisson(lam * (hi - lo))
            if n == 0:
                continue
            times = np.sort(rng.uniform(lo, hi, n))
            slots = np.floor(times / t_slot).astype(np.int64)
            ok, _ = slotted_chunk(slots)
            phases = ((times % params.t_round) >= phase_switch).astype(np.int64)
            attempts[0] += int(np.count_nonzero(phases == 0))
            attempts[1] += int(np.count_nonzero(phases == 1))
            successes[0] += int(np.count_nonzero(ok & (phases == 0)))
            successes[1] += int(np.count_nonzero(ok & (phases == 1)))
            if trace:
                trace.write(times, phases, np.full(n, t_slot), ok)
        # each singleton slot carries t_avg worth of normalized service,
        # matching the analytic normalization
        throughput_hat = int(successes.sum()) * t_avg / total_time
        stderr_q = math.sqrt(int(successes.sum())) * t_avg / total_time

    if trace:
        trace.close()
    n_att = int(attempts.sum())
    n_succ = int(successes.sum())
    p_hat = n_succ / n_att if n_att > 0 else 1.0
    stderr_p = math.sqrt(p_hat * (1.0 - p_hat) / n_att) if n_att > 0 else 0.0
    return SimStats(
        attempts=n_att,
        successes=n_succ,
        collided=n_att - n_succ,
        p_success_hat=p_hat,
        throughput_hat=float(throughput_hat),
        stderr_p=stderr_p,
        stderr_q=float(stderr_q),
        attempts_by_phase=(int(attempts[0]), int(attempts[1])),
        successes_by_phase=(int(successes[0]), int(successes[1])),
        total_time=total_time,
    )


@dataclass(frozen=True)
class Check:
    name: str
    analytic: float
    empirical: float
    stderr: float
    tolerance: float
    passed: bool
    vacuous: bool = False


@dataclass(frozen=True)
class ValidationReport:
    config: SimConfig
    stats: SimStats
    checks: tuple[Check, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def _phase_factors(
    protocol: Protocol, lam: float, t_full: float, t_shared: float
) -> tuple[float, float]:
    if protocol is Protocol.ALOHA:
        return math.exp(-2.0 * lam * t_full), math.exp(-2.0 * lam * t_shared)
    f = math.exp(-lam * t_shared)
    return f, f


def validate_against_analytic(
    config: SimConfig,
    tolerance_sigma: float = 3.0,
    abs_slack: float = 0.01,
    trace_path: str | None = None,
) -> ValidationReport:
    """Compare empirical estimates against the closed-form model.

    Each quantity passes when |empirical - analytic| stays within
    tolerance_sigma standard errors plus an absolute slack that
    absorbs the phase-boundary effects the model ignores.
    """
    stats = simulate(config, trace_path=trace_path)
    t_tx_fl, t_full, t_shared, _ = _round_geometry(config)
    params, lam, rho = config.params, config.lambda_total, config.rho

    checks = []

    def add(name, analytic, empirical, stderr, vacuous=False):
        tol = tolerance_sigma * stderr + abs_slack
        checks.append(
            Check(name, analytic, empirical, stderr, tol,
                  vacuous or abs(empirical - analytic) <= tol, vacuous)
        )

    vacuous = stats.attempts == 0
    add(
        "p_success",
        float(ra.success_prob(config.protocol, params, lam, rho, t_tx_fl)),
        stats.p_success_hat,
        stats.stderr_p,
        vacuous,
    )
    add(
        "throughput",
        float(ra.throughput(config.protocol, params, lam, rho, t_tx_fl)),
        stats.throughput_hat,
        stats.stderr_q,
        vacuous,
    )
    factors = _phase_factors(config.protocol, lam, t_full, t_shared)
    for phase, label in ((0, "full-band"), (1, "shared-band")):
        add(
            f"p_success[{label}]",
            factors[phase],
            stats.p_success_by_phase[phase],
            stats.stderr_p_phase(phase),
            stats.attempts_by_phase[phase] == 0,
        )
    return ValidationReport(config=config, stats=stats, checks=tuple(checks))
