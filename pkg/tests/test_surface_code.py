import pytest
from hypothesis import assume, given, strategies as st

from trotterqre.hardware import BUILTIN_PROFILES, HardwareProfile
from trotterqre.surface_code import (
    InvalidDistance,
    NoFeasibleDistance,
    SurfaceCodeConfig,
    distillation_error,
    logical_error_rate,
    optimize,
)
from trotterqre.trotter import LogicalEstimate


def workload(n_t, qubits):
    return LogicalEstimate(n_steps=1, n_b=1, n_a=1, total_rotations=0, total_cnots=0,
                           total_t_gates=n_t, logical_depth=0, logical_qubits=qubits)


def brute_force(n_t, qubits, p, cycle, budget=0.1, d_max=201):
    """Straight transcription of the selection rule, for cross-checking."""
    best = None
    for d in range(3, d_max + 1, 2):
        level, eps = 0, p
        while True:
            level += 1
            eps = 35 * eps ** 3
            if n_t * eps < budget / 2:
                break
        err = qubits * n_t * 0.1 * (100 * p) ** ((d + 1) / 2) + n_t * eps
        if err >= budget:
            continue
        vol = (2 * qubits * 2 * d * d) * (n_t * d * cycle)
        if best is None or vol < best[1]:
            best = (d, vol)
    return best


class TestLogicalErrorRate:
    def test_direct(self):
        assert logical_error_rate(1e-3, 3) == pytest.approx(1e-3, rel=1e-12)

    @pytest.mark.parametrize("d", [3, 7, 51])
    def test_at_threshold(self, d):
        assert logical_error_rate(1e-2, d) == pytest.approx(0.1, rel=1e-12)

    def test_superconducting_d13(self):
        assert logical_error_rate(5e-4, 13) == pytest.approx(0.1 * 0.05 ** 7, rel=1e-12)
        assert logical_error_rate(5e-4, 13) == pytest.approx(7.8125e-11, rel=1e-12)

    @pytest.mark.parametrize("d", [1, 2, 4, 0, -3])
    def test_invalid_distance(self, d):
        with pytest.raises(InvalidDistance):
            logical_error_rate(1e-3, d)

    @given(st.floats(1e-8, 9.99e-3), st.integers(1, 100))
    def test_decreasing_in_distance(self, p, k):
        d = 2 * k + 1
        hi, lo = logical_error_rate(p, d), logical_error_rate(p, d + 2)
        assert lo <= hi
        if lo > 0:
            assert lo < hi


class TestDistillation:
    def test_one_level(self):
        assert distillation_error(1e-3, 1) == pytest.approx(3.5e-8, rel=1e-12)

    def test_two_levels(self):
        assert distillation_error(1e-3, 2) == pytest.approx(35 * 3.5e-8 ** 3, rel=1e-12)
        assert distillation_error(1e-3, 2) == pytest.approx(1.500625e-21, rel=1e-12)

    @given(st.floats(1e-8, 0.16), st.integers(1, 4))
    def test_decreasing_in_levels(self, p, levels):
        e1 = distillation_error(p, levels)
        e2 = distillation_error(p, levels + 1)
        assume(e1 > 1e-300)
        assert e2 < e1


class TestOptimize:
    def test_single_gate(self):
        hw = HardwareProfile("x", 1e-6, 1e-4)
        res = optimize(workload(1, 1), hw)
        assert res.distance == 3 and res.distillation_levels == 1
        assert res.total_error < 0.1

    def test_matches_brute_force(self):
        for n_t, q, name in [(10**6, 20, "superconducting"), (10**9, 50, "trapped_ion"),
                             (10**12, 100, "superconducting")]:
            hw = BUILTIN_PROFILES[name]
            res = optimize(workload(n_t, q), hw)
            d, vol = brute_force(n_t, q, hw.p_phys, hw.cycle_time)
            assert res.distance == d
            assert res.spacetime == pytest.approx(vol, rel=1e-12)

    def test_near_threshold_infeasible(self):
        hw = HardwareProfile("hot", 1e-6, 9.9e-3)
        assert brute_force(10**15, 1, 9.9e-3, 1e-6) is None
        with pytest.raises(NoFeasibleDistance):
            optimize(workload(10**15, 1), hw)

    def test_hardware_ordering(self):
        est = workload(2 * 10**7, 30)
        sc = optimize(est, BUILTIN_PROFILES["superconducting"])
        ion = optimize(est, BUILTIN_PROFILES["trapped_ion"])
        assert ion.distance <= sc.distance
        assert ion.runtime >= 1e3 * sc.runtime

    def test_fields_consistent(self):
        est = workload(10**8, 40)
        hw = BUILTIN_PROFILES["superconducting"]
        res = optimize(est, hw)
        assert res.distance % 2 == 1
        assert res.spacetime == res.physical_qubits * res.runtime
        recomputed = (est.logical_qubits * est.total_t_gates * logical_error_rate(hw.p_phys, res.distance)
                      + est.total_t_gates * distillation_error(hw.p_phys, res.distillation_levels))
        assert res.total_error == pytest.approx(recomputed, rel=1e-12)
        assert res.physical_qubits == 2 * 40 * 2 * res.distance ** 2

    def test_config_knobs(self):
        est = workload(10**8, 40)
        hw = BUILTIN_PROFILES["superconducting"]
        base = optimize(est, hw)
        wide = optimize(est, hw, config=SurfaceCodeConfig(route_factor=3.0))
        assert wide.physical_qubits == base.physical_qubits * 3 // 2

    @given(st.integers(1, 10**14), st.integers(1, 500), st.floats(1e-6, 5e-3), st.floats(0.05, 0.95))
    def test_distance_monotone_in_error_rate(self, n_t, q, p, shrink):
        est = workload(n_t, q)
        try:
            hi = optimize(est, HardwareProfile("hi", 1e-6, p))
        except NoFeasibleDistance:
            return
        lo = optimize(est, HardwareProfile("lo", 1e-6, p * shrink))
        assert lo.distance <= hi.distance

    @given(st.integers(1, 10**12), st.integers(1, 500), st.integers(1, 1000))
    def test_cost_increasing_in_t_at_fixed_distance(self, n_t, q, extra):
        from trotterqre.surface_code import evaluate

        hw = BUILTIN_PROFILES["superconducting"]
        a = evaluate(workload(n_t, q), hw, 15)
        b = evaluate(workload(n_t + extra, q), hw, 15)
        assert b.runtime > a.runtime and b.spacetime > a.spacetime
