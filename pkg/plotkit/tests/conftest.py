import csv

import pytest

RHO_HEADER = [
    "axis", "value", "protocol", "feasible", "q_max", "lambda_peak_pkts_s",
    "lambda_star_pkts_s", "e_fl_J", "e_ra_per_packet_J", "e_tot_J", "reason",
]
SOLVE_HEADER = [
    "axis", "value", "protocol", "feasible", "rho_star", "lambda_star_pkts_s",
    "e_fl_J", "e_ra_J", "e_tot_J", "p_success", "binding",
    "n_fresh_packets", "reason",
]


def write_csv(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return str(path)


@pytest.fixture
def rho_csv(tmp_path):
    """Hand-built rho sweep with an infeasible head, both protocols."""
    rows = []
    grid = [round(0.05 * i, 2) for i in range(21)]
    for proto, base in (("aloha", 0.18), ("saloha", 0.35)):
        for rho in grid:
            feasible = rho >= 0.1
            if feasible:
                q_max = base - 0.1 * base * rho
                e_fl = 0.5 + 2.0 * rho
                e_tot = e_fl + 0.8 * (1.2 - rho)
                rows.append(["rho", rho, proto, "true", q_max, 4e5, 3e5,
                             e_fl, 9e-7, e_tot, ""])
            else:
                rows.append(["rho", rho, proto, "false", "", "", "", "", "",
                             "", "fl-latency"])
    return write_csv(tmp_path / "sweep.csv", RHO_HEADER, rows)


def _solve_rows(axis, values, fresh_packets):
    rows = []
    for proto, rho0 in (("aloha", 0.9), ("saloha", 0.5)):
        for v, npk in zip(values, fresh_packets):
            feasible = v <= values[-2]
            if feasible:
                rows.append([axis, v, proto, "true", rho0, 4e5,
                             1.0 + 0.01 * v, 0.4, 1.4 + 0.01 * v, 0.45,
                             "throughput-root", npk, ""])
            else:
                rows.append([axis, v, proto, "false", "", "", "", "", "",
                             "", "", npk, "throughput-ceiling"])
    return rows


@pytest.fixture
def n_fl_csv(tmp_path):
    values = [10, 20, 30, 40, 50]
    rows = _solve_rows("n_fl", values, [4.5e5] * len(values))
    return write_csv(tmp_path / "sweep.csv", SOLVE_HEADER, rows)


@pytest.fixture
def lambda_csv(tmp_path):
    values = [1e3, 1e4, 1e5, 5e5, 1e6]
    rows = _solve_rows("lambda_fresh", values, [v * 45 for v in values])
    return write_csv(tmp_path / "sweep.csv", SOLVE_HEADER, rows)
