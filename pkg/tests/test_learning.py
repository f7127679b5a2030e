import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from edgekit.core import make_rng
from edgekit.learning import (
    CensorSchedule,
    CommEnergyModel,
    LocalProblem,
    QuantizerConfig,
    build_topology,
    censor_decision,
    centralized_solution,
    dequantize,
    dual_update,
    message_energy,
    primal_update,
    quantize,
    rechain,
    run,
    total_objective,
)
from edgekit.learning.runner import ConfigMismatch
from edgekit.learning.topology import InvalidN

from conftest import scalar_problems, synthetic_problems


class TestCentralizedSolution:
    def test_four_scalar_quadratics(self):
        problems = scalar_problems([1, 2, 3, 4])
        theta = centralized_solution(problems)
        assert theta == pytest.approx([2.5])
        assert total_objective(problems, [theta] * 4) == pytest.approx(5.0)

    def test_single_worker_matches_local_least_squares(self, rng):
        A = rng.standard_normal((10, 3))
        b = rng.standard_normal(10)
        p = LocalProblem(A=A, b=b)
        expect = np.linalg.lstsq(A, b, rcond=None)[0]
        assert centralized_solution([p]) == pytest.approx(expect)

    def test_duplicated_worker_same_solution(self, rng):
        A = rng.standard_normal((10, 3))
        b = rng.standard_normal(10)
        p = LocalProblem(A=A, b=b)
        one = centralized_solution([p])
        two = centralized_solution([p, p])
        assert two == pytest.approx(one)


class TestTopology:
    def test_chain_n4(self):
        t = build_topology(4, kind="chain")
        assert t.edges == ((1, 2), (2, 3), (3, 4))
        assert t.heads == {1, 3}
        assert t.tails == {2, 4}

    def test_n2(self):
        t = build_topology(2, kind="chain")
        assert t.edges == ((1, 2),)
        assert t.heads == {1}
        assert t.tails == {2}

    def test_too_small(self):
        with pytest.raises(InvalidN):
            build_topology(1)

    def test_bipartite_deterministic_and_two_colorable(self):
        a = build_topology(6, kind="bipartite", seed=9)
        b = build_topology(6, kind="bipartite", seed=9)
        assert a.edges == b.edges
        a.validate()  # checks connectivity and role bipartiteness
        for h, t in a.edges:
            assert h in a.heads and t in a.tails

    def test_rechain_pins_first_and_last_worker(self):
        topo = build_topology(4, kind="chain", seed=0, tau_coh=10)
        for k in (10, 20, 30, 40):
            new = rechain(topo, k, seed=k)
            assert 1 in new.heads
            assert 4 in new.tails
            assert new.order[0] == 1 and new.order[-1] == 4
            new.validate()

    def test_rechain_static_noop(self):
        topo = build_topology(6, kind="chain", seed=0)
        assert rechain(topo, 10, seed=0) is topo

    def test_rechain_produces_fresh_chains(self):
        topo = build_topology(8, kind="chain", seed=1, tau_coh=10)
        orders = {rechain(topo, k, seed=1).order for k in range(10, 210, 10)}
        assert len(orders) > 10  # two k values differ with high probability


class TestPrimalDualUpdates:
    def test_proximity_only_pull(self):
        m = np.array([2.0, -1.0])
        out = primal_update(None, [m], [np.zeros(2)], [1], rho=3.0, dim=2)
        assert out == pytest.approx(m)

    def test_scalar_hand_solution(self):
        a, m1, m2 = 3.0, 1.0, 5.0
        p = LocalProblem.scalar_quadratic(a)
        out = primal_update(p, [np.array([m1]), np.array([m2])], [np.zeros(1)] * 2, [1, -1], rho=2.0)
        assert out == pytest.approx([(2 * a + 2 * m1 + 2 * m2) / 6.0])

    def test_large_rho_limit_is_neighbor_average(self):
        p = LocalProblem.scalar_quadratic(10.0)
        ms = [np.array([1.0]), np.array([3.0])]
        out = primal_update(p, ms, [np.zeros(1)] * 2, [1, -1], rho=1e6)
        assert out == pytest.approx([2.0], abs=1e-3)

    def test_rho_must_be_positive(self):
        with pytest.raises(ValueError):
            primal_update(None, [np.zeros(1)], [np.zeros(1)], [1], rho=0.0, dim=1)

    def test_dual_fixed_when_constraint_met(self):
        lam = np.array([1.0, 2.0])
        t = np.array([3.0, 4.0])
        assert dual_update(lam, t, t, rho=5.0) == pytest.approx(lam)

    def test_dual_direct_formula(self):
        out = dual_update(np.zeros(2), np.array([1.0, 0.0]), np.array([0.0, 1.0]), rho=1.0)
        assert out == pytest.approx([1.0, -1.0])

    def test_two_updates_equal_one_with_double_rho(self, rng):
        lam = rng.standard_normal(3)
        tl, tr = rng.standard_normal(3), rng.standard_normal(3)
        twice = dual_update(dual_update(lam, tl, tr, 0.7), tl, tr, 0.7)
        once = dual_update(lam, tl, tr, 1.4)
        assert twice == pytest.approx(once)


class TestQuantizer:
    def test_payload_formula(self):
        q = QuantizerConfig(bits=4)
        assert q.payload_bits(100) == 4 * 100 + 32

    def test_near_full_precision_roundtrip(self, rng):
        x = rng.standard_normal(20)
        q = QuantizerConfig(bits=32)
        back = dequantize(quantize(x, q, rng))
        assert np.max(np.abs(back - x)) <= 1e-6 * np.max(np.abs(x))

    def test_one_bit_unbiased(self):
        rng = make_rng(3)
        x = np.array([0.3, 1.0])  # radius 1 fixed by the second coordinate
        q = QuantizerConfig(bits=1)
        draws = np.array([dequantize(quantize(x, q, rng))[0] for _ in range(100_000)])
        assert 0.29 <= draws.mean() <= 0.31

    @settings(max_examples=50, deadline=None)
    @given(
        vec=st.lists(st.floats(-100, 100), min_size=1, max_size=8),
        bits=st.integers(1, 32),
        seed=st.integers(0, 2**32 - 1),
    )
    def test_roundtrip_error_bounded_by_step(self, vec, bits, seed):
        x = np.array(vec)
        q = QuantizerConfig(bits=bits)
        back = dequantize(quantize(x, q, make_rng(seed)))
        radius = np.max(np.abs(x))
        step = 2 * radius / (2**bits - 1) if bits > 1 else 2 * radius
        assert np.max(np.abs(back - x)) <= step + 1e-12

    def test_zero_delta_sentinel(self, rng):
        msg = quantize(np.zeros(5), QuantizerConfig(bits=2), rng)
        assert msg.radius == 0.0
        assert dequantize(msg) == pytest.approx(np.zeros(5))

    def test_bits_range_enforced(self):
        for bad in (0, 33):
            with pytest.raises(ValueError):
                QuantizerConfig(bits=bad)


class TestCensoring:
    def test_zero_threshold_transmits_any_change(self):
        assert censor_decision(np.array([1.0]), np.array([0.999]), 0.0)

    def test_no_change_never_transmits(self):
        x = np.array([1.0, 2.0])
        for thr in (0.0, 0.5, 10.0):
            assert not censor_decision(x, x, thr)

    def test_strict_boundary(self):
        assert not censor_decision(np.array([0.5]), np.array([0.0]), 0.5)

    @given(
        xi0=st.floats(0, 10, allow_nan=False),
        alpha=st.floats(0.01, 1.0, exclude_min=False),
        k=st.integers(0, 500),
    )
    def test_threshold_schedule_non_increasing(self, xi0, alpha, k):
        s = CensorSchedule(xi0=xi0, alpha=alpha)
        assert s.threshold(k) >= s.threshold(k + 1) >= 0.0


class TestMessageEnergy:
    def test_zero_payload(self):
        assert message_energy(0.0, CommEnergyModel(), 1.0) == 0.0

    def test_unit_case(self):
        m = CommEnergyModel(bandwidth_hz=1.0, slot_s=1.0, noise_density=1.0)
        assert message_energy(1.0, m, 1.0) == pytest.approx(1.0)

    @given(payload=st.floats(1.0, 64.0), gain=st.floats(0.1, 10.0))
    def test_doubling_payload_more_than_doubles_energy(self, payload, gain):
        m = CommEnergyModel(bandwidth_hz=10.0, slot_s=1.0, noise_density=1e-3)
        assert message_energy(2 * payload, m, gain) > 2 * message_energy(payload, m, gain)


class TestRun:
    def test_gadmm_four_scalar_benchmark(self):
        problems = scalar_problems([1, 2, 3, 4])
        topo = build_topology(4, kind="chain")
        trace = run("gadmm", problems, topo, rho=1.0, iters=500)
        assert trace.objective_error[-1] < 1e-6

    @pytest.mark.parametrize("rho", [0.1, 1.0, 10.0])
    def test_residual_below_target_for_rho_range(self, rho):
        problems = scalar_problems([1, 2, 3, 4])
        topo = build_topology(4, kind="chain")
        trace = run("gadmm", problems, topo, rho=rho, iters=2000)
        assert min(trace.residual) < 1e-4

    def test_zero_threshold_censoring_matches_plain(self):
        problems = synthetic_problems(6, 3, 10, seed=4)
        topo = build_topology(6, kind="bipartite", seed=4)
        plain = run("ggadmm", problems, topo, iters=50, seed=4)
        censored = run(
            "c-ggadmm", problems, topo, censor=CensorSchedule(xi0=0.0, alpha=0.99), iters=50, seed=4
        )
        assert censored.objective == plain.objective
        assert censored.bits_cum == plain.bits_cum
        assert censored.joules_cum == plain.joules_cum

    def test_full_precision_quantized_matches_plain(self):
        problems = synthetic_problems(6, 3, 10, seed=5)
        topo = build_topology(6, kind="bipartite", seed=5)
        plain = run("ggadmm", problems, topo, iters=300, seed=5)
        quant = run(
            "cq-ggadmm", problems, topo, quantizer=QuantizerConfig(bits=32),
            censor=CensorSchedule(xi0=0.0, alpha=0.99), iters=300, seed=5,
        )
        assert quant.objective[-1] == pytest.approx(plain.objective[-1], abs=1e-4)

    def test_trace_monotonicity(self):
        problems = synthetic_problems(6, 3, 10, seed=6)
        topo = build_topology(6, kind="bipartite", seed=6)
        trace = run(
            "cq-ggadmm", problems, topo, quantizer=QuantizerConfig(bits=2),
            censor=CensorSchedule(), iters=100, seed=6,
        )
        assert all(b2 >= b1 for b1, b2 in zip(trace.bits_cum, trace.bits_cum[1:]))
        assert all(j2 >= j1 for j1, j2 in zip(trace.joules_cum, trace.joules_cum[1:]))
        scheduled = 6 * len(trace)
        assert 0 <= trace.censored_cum[-1] <= scheduled

    def test_phase_never_schedules_adjacent_workers_together(self):
        topo = build_topology(9, kind="bipartite", seed=2)
        for u, v in topo.edges:
            assert (u in topo.heads) != (v in topo.heads)
        chain = build_topology(9, kind="chain")
        assert len(chain.heads) <= math.ceil(9 / 2)
        assert len(chain.tails) <= math.ceil(9 / 2)

    def test_variant_argument_checks(self):
        problems = scalar_problems([1, 2])
        topo = build_topology(2, kind="chain")
        with pytest.raises(ConfigMismatch):
            run("nope", problems, topo)
        with pytest.raises(ConfigMismatch):
            run("gadmm", problems, None)
        with pytest.raises(ConfigMismatch):
            run("gadmm", problems, topo, quantizer=QuantizerConfig(bits=2))
        with pytest.raises(ConfigMismatch):
            run("cq-ggadmm", problems, topo)
        with pytest.raises(ConfigMismatch):
            run("d-gadmm", problems, topo)  # tau_coh is inf

    def test_ps_admm_converges_and_counts_energy(self):
        problems = synthetic_problems(4, 3, 12, seed=7)
        trace = run("ps-admm", problems, None, iters=2000, seed=7, stop_error=1e-6)
        assert trace.objective_error[-1] < 1e-6
        # 4 workers x 32 bits x 3 coords per iteration
        assert trace.bits_cum[0] == 4 * 32 * 3

    def test_d_gadmm_runs_and_converges(self):
        problems = synthetic_problems(8, 3, 12, seed=8)
        topo = build_topology(8, kind="chain", seed=8, tau_coh=10)
        trace = run("d-gadmm", problems, topo, iters=1000, seed=8)
        assert trace.objective_error[-1] < 1e-6
        static = run("gadmm", problems, build_topology(8, kind="chain", seed=8), iters=1000, seed=8)
        assert trace.objective_error[-1] < static.objective_error[-1]
