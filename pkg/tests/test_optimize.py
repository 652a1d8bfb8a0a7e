import math

import numpy as np
import pytest

from flra import fl, optimize, ra
from flra.optimize import BINDING_FLOOR, BINDING_ROOT, GloballyInfeasible
from flra.params import Protocol

from conftest import make_params, showcase_params

A = Protocol.ALOHA
SA = Protocol.SLOTTED_ALOHA


class TestLambdaMin:
    def test_vacuous_constraint(self, c1_params):
        p = make_params(q_min=0.0)
        assert optimize.lambda_min(A, p, 0.5, fl.fl_tx_time(p, 0.5)) == 0.0

    def test_c1_aloha_root(self, c1_params):
        t_tx = fl.fl_tx_time(c1_params, 0.96)
        lam = optimize.lambda_min(A, c1_params, 0.96, t_tx)
        assert lam == pytest.approx(4.06e5, rel=0.005)
        q = ra.throughput(A, c1_params, lam, 0.96, t_tx)
        assert q == pytest.approx(c1_params.q_min, rel=1e-8)

    def test_above_ceiling_infeasible(self, default_params):
        p = make_params(q_min=0.5)
        t_tx = fl.fl_tx_time(p, 0.5)
        assert optimize.lambda_min(A, p, 0.5, t_tx) is None
        assert optimize.lambda_min(SA, p, 0.5, t_tx) is None

    def test_smallest_root_selected(self, default_params):
        # the returned rate sits on the ascending branch: throughput is
        # still increasing just above it
        t_tx = fl.fl_tx_time(default_params, 0.5)
        lam = optimize.lambda_min(SA, default_params, 0.5, t_tx)
        q0 = ra.throughput(SA, default_params, lam * 1.001, 0.5, t_tx)
        assert q0 > default_params.q_min


class TestLambdaStar:
    def test_root_branch_binds(self, c1_params):
        t_tx = fl.fl_tx_time(c1_params, 0.96)
        lam, binding = optimize.lambda_star(A, c1_params, 0.96, t_tx)
        assert binding == BINDING_ROOT
        assert lam == pytest.approx(4.06e5, rel=0.005)

    def test_floor_binds_for_tiny_q(self):
        p = make_params(q_min=1e-6)
        t_tx = fl.fl_tx_time(p, 0.5)
        lam, binding = optimize.lambda_star(A, p, 0.5, t_tx)
        assert binding == BINDING_FLOOR
        assert lam == p.lambda_fresh + p.eps_retx

    def test_c5_floor_binds(self):
        p = showcase_params("C5")
        sol_a = optimize.solve(A, p, 1e-3)
        sol_sa = optimize.solve(SA, p, 1e-3)
        for sol in (sol_a, sol_sa):
            assert sol.binding == BINDING_FLOOR
            assert sol.lambda_star == pytest.approx(5.001e5, rel=1e-12)


class TestObjective:
    def test_c1_aloha_total(self, c1_params):
        assert optimize.objective_energy(A, c1_params, 0.96) == pytest.approx(
            1.29, abs=0.02
        )

    def test_c5_slotted_total(self):
        p = showcase_params("C5")
        assert optimize.objective_energy(SA, p, 0.35) == pytest.approx(67.3, rel=0.01)

    def test_no_ra_traffic_reduces_to_fl(self):
        p = make_params(lambda_fresh=1e-300, q_min=0.0)
        e = optimize.objective_energy(A, p, 0.5)
        assert e == pytest.approx(fl.fl_total_energy(p, 0.5), rel=1e-6)

    def test_infeasible_rho_is_inf(self, default_params):
        assert optimize.objective_energy(A, default_params, 0.01) == math.inf

    def test_energy_split_consistent(self, c1_params):
        sol = optimize.evaluate_rho(A, c1_params, 0.9)
        assert sol.e_total == pytest.approx(
            sol.e_fl_total + sol.e_ra_total, rel=1e-12
        )


class TestSolve:
    def test_c1_aloha(self, c1_params):
        sol = optimize.solve(A, c1_params, 1e-3)
        assert sol.rho_star == pytest.approx(0.96, abs=0.01)
        assert sol.e_total == pytest.approx(1.29, abs=0.02)

    def test_c2_slotted(self):
        p = showcase_params("C2")
        sol = optimize.solve(SA, p, 1e-3)
        assert sol.rho_star == pytest.approx(0.42, abs=0.01)
        assert sol.e_total == pytest.approx(4.71, abs=0.05)

    def test_unreachable_q_raises(self):
        p = make_params(q_min=0.5)
        with pytest.raises(GloballyInfeasible, match="throughput"):
            optimize.solve(A, p, 1e-2)

    def test_zero_budget_raises(self):
        p = make_params(s_fl=1e12)
        with pytest.raises(GloballyInfeasible, match="latency"):
            optimize.solve(A, p, 1e-2)

    def test_deterministic(self, c1_params):
        assert optimize.solve(A, c1_params, 1e-3) == optimize.solve(A, c1_params, 1e-3)

    def test_higher_lambda_costs_more(self, c1_params):
        # raising the rate above lambda* at fixed rho only adds retransmissions
        sol = optimize.solve(A, c1_params, 1e-3)
        t_tx = fl.fl_tx_time(c1_params, sol.rho_star)
        base = ra.energy_per_packet(
            A, c1_params, sol.lambda_star, sol.rho_star, t_tx
        )
        for factor in (1.05, 1.3, 2.0):
            worse = ra.energy_per_packet(
                A, c1_params, sol.lambda_star * factor, sol.rho_star, t_tx
            )
            assert worse > base

    def test_solution_feasibility_invariants(self, c1_params):
        for proto in (A, SA):
            sol = optimize.solve(proto, c1_params, 1e-3)
            assert sol.feasible
            assert fl.fl_latency_feasible(c1_params, sol.rho_star)
            t_tx = fl.fl_tx_time(c1_params, sol.rho_star)
            q = ra.throughput(proto, c1_params, sol.lambda_star, sol.rho_star, t_tx)
            assert q >= c1_params.q_min - 1e-9
            assert sol.lambda_star >= c1_params.lambda_fresh + c1_params.eps_retx - 1e-6


class TestSweeps:
    def test_fl_device_sweep_records_infeasible(self):
        # q above the pure-ALOHA ceiling 1/(2e) can never be met
        p = make_params(q_min=0.2, s_fl=1e8)
        pts = optimize.sweep_fl_devices(p, A, [10, 100], grid_step=5e-3)
        assert all(not pt.feasible for pt in pts)
        assert all("throughput" in pt.reason for pt in pts)
        assert all(pt.solution is None for pt in pts)

    def test_arrival_sweep_slotted_nearly_invariant(self):
        # the slotted optimum barely moves with the fresh rate while the
        # floor does not bind: FL energy dominates the placement of rho*
        pts = optimize.sweep_arrivals(make_params(), SA, [1e3, 1e4, 1e5], 2e-3)
        rhos = [pt.solution.rho_star for pt in pts]
        e_fl = [pt.solution.e_fl_total for pt in pts]
        assert max(rhos) - min(rhos) <= 0.05
        assert max(e_fl) / min(e_fl) <= 1.05

    def test_arrival_sweep_aloha_margin_shrinks(self):
        # ALOHA's advantage over slotted erodes as RA traffic grows
        values = [1e3, 1e5, 5e5]
        pts_a = optimize.sweep_arrivals(make_params(), A, values, 2e-3)
        pts_sa = optimize.sweep_arrivals(make_params(), SA, values, 2e-3)
        ratios = [
            a.solution.e_total / s.solution.e_total
            for a, s in zip(pts_a, pts_sa)
        ]
        assert ratios == sorted(ratios)

    def test_rho_sweep_marks_infeasible_region(self, default_params):
        pts = optimize.sweep_rho(default_params, A, list(np.linspace(0, 1, 21)))
        feas = [pt.feasible for pt in pts]
        assert not feas[0] and feas[-1]
        # single switch from infeasible to feasible
        assert sum(1 for a, b in zip(feas, feas[1:]) if a != b) == 1
