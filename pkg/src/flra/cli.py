"""Command-line entry point: solve, sweep, simulate.

Exit codes: 0 success, 2 infeasible problem, 3 Monte Carlo validation
failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

import numpy as np

from . import optimize, sim
from .params import Protocol
from .scenario import Scenario, ScenarioError, load_scenario

EXIT_OK = 0
EXIT_INFEASIBLE = 2
EXIT_VALIDATION = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 64 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _fmt(x) -> str:
    """Stable 6-significant-digit cell formatting."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if math.isnan(x):
        return ""
    return f"{x:.6g}"


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _protocols(name: str) -> list[Protocol]:
    if name == "both":
        return [Protocol.ALOHA, Protocol.SLOTTED_ALOHA]
    return [Protocol.ALOHA if name == "aloha" else Protocol.SLOTTED_ALOHA]


_SOLUTION_HEADER = [
    "protocol", "rho_star", "lambda_star_pkts_s", "t_tx_fl_s", "t_pkt_avg_s",
    "e_fl_J", "e_ra_J", "e_tot_J", "e_bit_fl_J", "e_bit_ra_J",
    "p_success", "binding", "feasible",
]


def _solution_row(sol: optimize.Solution) -> list:
    return [
        sol.protocol.value, sol.rho_star, sol.lambda_star, sol.t_tx_fl,
        sol.t_pkt_avg, sol.e_fl_total, sol.e_ra_total, sol.e_total,
        sol.e_bit_fl, sol.e_bit_ra, sol.p_success, sol.binding, sol.feasible,
    ]


def _summary_table(solutions: dict[Protocol, optimize.Solution]) -> str:
    labels = {Protocol.ALOHA: "ALOHA", Protocol.SLOTTED_ALOHA: "S-ALOHA"}
    rows = [
        ("T_tx_FL [s]", lambda s: f"{s.t_tx_fl:.3f}"),
        ("T_tx_RA [us]", lambda s: f"{s.t_pkt_avg * 1e6:.3f}"),
        ("E_bit_FL [nJ/bit]", lambda s: f"{s.e_bit_fl * 1e9:.3f}"),
        ("E_bit_RA [nJ/bit]", lambda s: f"{s.e_bit_ra * 1e9:.3f}"),
        ("E_FL [J]", lambda s: f"{s.e_fl_total:.3f}"),
        ("E_RA [J]", lambda s: f"{s.e_ra_total:.3f}"),
        ("E_tot [J]", lambda s: f"{s.e_total:.3f}"),
        ("P_s", lambda s: f"{s.p_success:.3f}"),
        ("rho*", lambda s: f"{s.rho_star:.3f}"),
        ("lambda* [pkts/s]", lambda s: f"{s.lambda_star:.4g}"),
        ("binding", lambda s: s.binding),
    ]
    protos = list(solutions)
    winner = min(protos, key=lambda p: solutions[p].e_total) if len(protos) > 1 else None
    header = ["metric"] + [
        labels[p] + (" *" if p is winner else "") for p in protos
    ]
    lines = ["  ".join(f"{h:>20s}" for h in header)]
    for label, get in rows:
        cells = [label] + [get(solutions[p]) for p in protos]
        lines.append("  ".join(f"{c:>20s}" for c in cells))
    if winner is not None:
        lines.append(f"\n* lower total energy: {labels[winner]}")
    return "\n".join(lines)


def cmd_solve(args, scenario: Scenario) -> int:
    out_dir = Path(args.out or scenario.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    grid_step = args.grid_step or scenario.grid_step
    solutions: dict[Protocol, optimize.Solution] = {}
    for proto in _protocols(args.protocol or scenario.protocol):
        try:
            solutions[proto] = optimize.solve(
                proto, scenario.params, grid_step, refine=not args.no_refine
            )
        except optimize.GloballyInfeasible as exc:
            print(f"infeasible ({proto.value}): {exc.reason}", file=sys.stderr)
            return EXIT_INFEASIBLE
    rows = [_solution_row(s) for s in solutions.values()]
    _write_csv(out_dir / "solution.csv", _SOLUTION_HEADER, rows)
    table = _summary_table(solutions)
    (out_dir / "summary.txt").write_text(table + "\n")
    print(table)
    print(f"\nwrote {out_dir / 'solution.csv'}")
    return EXIT_OK


def _parse_range(spec: str, integer: bool) -> list:
    try:
        start_s, stop_s, step_s = spec.split(":")
        start, stop, step = float(start_s), float(stop_s), float(step_s)
    except ValueError:
        raise _UsageError(f"bad --range {spec!r}, expected START:STOP:STEP")
    if step <= 0 or stop < start:
        raise _UsageError(f"empty or invalid range {spec!r}")
    values = np.arange(start, stop + step * 1e-9, step)
    if values.size == 0:
        raise _UsageError(f"empty range {spec!r}")
    return [int(round(v)) for v in values] if integer else [float(v) for v in values]


_SWEEP_RHO_HEADER = [
    "axis", "value", "protocol", "feasible", "q_max", "lambda_peak_pkts_s",
    "lambda_star_pkts_s", "e_fl_J", "e_ra_per_packet_J", "e_tot_J", "reason",
]
_SWEEP_SOLVE_HEADER = [
    "axis", "value", "protocol", "feasible", "rho_star", "lambda_star_pkts_s",
    "e_fl_J", "e_ra_J", "e_tot_J", "p_success", "binding",
    "n_fresh_packets", "reason",
]


def cmd_sweep(args, scenario: Scenario) -> int:
    out_dir = Path(args.out or scenario.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    grid_step = args.grid_step or scenario.grid_step
    params = scenario.params
    protos = _protocols(args.protocol or scenario.protocol)
    rows = []
    if args.axis == "rho":
        values = _parse_range(args.range, integer=False)
        for proto in protos:
            for pt in optimize.sweep_rho(params, proto, values):
                rows.append([
                    "rho", pt.rho, proto.value, pt.feasible, pt.q_max,
                    pt.lambda_peak, pt.lambda_star, pt.e_fl_total,
                    pt.e_ra_per_packet, pt.e_total, pt.reason,
                ])
        header = _SWEEP_RHO_HEADER
    else:
        integer = args.axis == "n_fl"
        values = _parse_range(args.range, integer=integer)
        for proto in protos:
            if args.axis == "n_fl":
                points = optimize.sweep_fl_devices(params, proto, values, grid_step)
            else:
                points = optimize.sweep_arrivals(params, proto, values, grid_step)
            for pt in points:
                sol = pt.solution
                lam_fresh = pt.value if args.axis == "lambda_fresh" else params.lambda_fresh
                rows.append([
                    args.axis, pt.value, proto.value, pt.feasible,
                    sol.rho_star if sol else None,
                    sol.lambda_star if sol else None,
                    sol.e_fl_total if sol else None,
                    sol.e_ra_total if sol else None,
                    sol.e_total if sol else None,
                    sol.p_success if sol else None,
                    sol.binding if sol else "",
                    lam_fresh * params.t_round, pt.reason,
                ])
        header = _SWEEP_SOLVE_HEADER
    _write_csv(out_dir / "sweep.csv", header, rows)
    n_feasible = sum(1 for r in rows if r[3])
    print(f"wrote {out_dir / 'sweep.csv'} ({len(rows)} rows, {n_feasible} feasible)")
    return EXIT_OK


_SIM_HEADER = [
    "protocol", "lambda_pkts_s", "rho", "seed", "attempts", "quantity",
    "analytic", "empirical", "stderr", "tolerance", "passed",
]


def cmd_simulate(args, scenario: Scenario) -> int:
    out_dir = Path(args.out or scenario.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    params = scenario.params
    seed = args.seed if args.seed is not None else scenario.seed
    n_rounds = args.rounds or scenario.n_rounds
    rows = []
    all_passed = True
    for proto in _protocols(args.protocol or scenario.protocol):
        lam, rho = args.lam, args.rho
        if lam is None or rho is None:
            try:
                sol = optimize.solve(proto, params, scenario.grid_step)
            except optimize.GloballyInfeasible as exc:
                print(f"infeasible ({proto.value}): {exc.reason}", file=sys.stderr)
                return EXIT_INFEASIBLE
            lam = lam if lam is not None else sol.lambda_star
            rho = rho if rho is not None else sol.rho_star
        cfg = sim.SimConfig(params, proto, lam, rho, n_rounds=n_rounds, seed=seed)
        report = sim.validate_against_analytic(
            cfg, tolerance_sigma=args.sigma, trace_path=args.trace
        )
        all_passed &= report.passed
        for c in report.checks:
            rows.append([
                proto.value, lam, rho, seed, report.stats.attempts, c.name,
                c.analytic, c.empirical, c.stderr, c.tolerance, c.passed,
            ])
        status = "pass" if report.passed else "FAIL"
        print(
            f"{proto.value}: lambda={lam:.6g} rho={rho:.4f} "
            f"attempts={report.stats.attempts} validation={status}"
        )
    _write_csv(out_dir / "sim.csv", _SIM_HEADER, rows)
    print(f"wrote {out_dir / 'sim.csv'}")
    return EXIT_OK if all_passed else EXIT_VALIDATION


def _build_parser() -> _Parser:
    parser = _Parser(prog="flra", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--scenario", required=True, help="scenario JSON path")
        p.add_argument("--protocol", choices=["aloha", "saloha", "both"])
        p.add_argument("--out", help="output directory")

    p_solve = sub.add_parser("solve", help="optimize (rho, lambda) for a scenario")
    common(p_solve)
    p_solve.add_argument("--grid-step", type=float, dest="grid_step")
    p_solve.add_argument("--no-refine", action="store_true",
                         help="skip the post-grid local refinement")

    p_sweep = sub.add_parser("sweep", help="parameter sweep with CSV export")
    common(p_sweep)
    p_sweep.add_argument("--axis", required=True,
                         choices=["rho", "n_fl", "lambda_fresh"])
    p_sweep.add_argument("--range", required=True, help="START:STOP:STEP")
    p_sweep.add_argument("--grid-step", type=float, dest="grid_step")

    p_sim = sub.add_parser("simulate", help="Monte Carlo validation run")
    common(p_sim)
    p_sim.add_argument("--lam", type=float, help="total attempt rate [pkts/s]")
    p_sim.add_argument("--rho", type=float, help="bandwidth share")
    p_sim.add_argument("--seed", type=int)
    p_sim.add_argument("--rounds", type=int)
    p_sim.add_argument("--sigma", type=float, default=3.0)
    p_sim.add_argument("--trace", help="optional arrival-trace CSV path")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"flra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        scenario = load_scenario(args.scenario)
    except ScenarioError as exc:
        print(f"flra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "solve":
            return cmd_solve(args, scenario)
        if args.command == "sweep":
            return cmd_sweep(args, scenario)
        return cmd_simulate(args, scenario)
    except _UsageError as exc:
        print(f"flra: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
