import math

import pytest
from hypothesis import given, strategies as st

from trotterqre.hardware import (
    BUILTIN_PROFILES,
    AboveThreshold,
    HardwareProfile,
    InvalidSynthesisError,
    NonPositiveCycleTime,
    SynthesisConfig,
    load_profile,
    logical_depth_per_step,
    t_count,
)


class TestTCount:
    def test_zero(self):
        assert t_count(0, 1e-9) == 0

    def test_power_of_two(self):
        assert t_count(1, 2.0 ** -10) == 130

    def test_default_error(self):
        assert t_count(1, 1e-9) == math.ceil(10 + 12 * math.log2(1e9)) == 369
        assert SynthesisConfig().t_per_rotation == 369

    @pytest.mark.parametrize("eps", [0.0, 1.0, -1e-3, 2.0])
    def test_invalid(self, eps):
        with pytest.raises(InvalidSynthesisError):
            t_count(1, eps)

    @given(st.integers(0, 10**15), st.integers(1, 1000), st.floats(1e-30, 0.5))
    def test_linear(self, n_r, k, eps):
        assert t_count(k * n_r, eps) == k * t_count(n_r, eps)

    @given(st.integers(1, 10**9), st.floats(1e-30, 0.5))
    def test_smaller_error_costs_more(self, n_r, eps):
        assert t_count(n_r, eps / 4) > t_count(n_r, eps)


class TestDepth:
    def test_formula(self):
        assert logical_depth_per_step(100, 50, 10) == 60

    def test_cnot_only(self):
        assert logical_depth_per_step(0, 7, 10) == 7

    def test_fractional_batch(self):
        assert logical_depth_per_step(5, 0, 10) == 1

    @given(st.integers(0, 10**9), st.integers(0, 10**9), st.integers(1, 10**4))
    def test_more_lanes_never_deeper(self, n_r, n_c, lanes):
        assert logical_depth_per_step(n_r, n_c, lanes) >= logical_depth_per_step(n_r, n_c, lanes + 1)


class TestProfiles:
    def test_builtins(self):
        sc = load_profile("superconducting")
        ion = load_profile("trapped_ion")
        assert (sc.cycle_time, sc.p_phys) == (1e-6, 5e-4)
        assert (ion.cycle_time, ion.p_phys) == (7e-2, 3e-5)

    def test_mapping(self):
        hw = load_profile({"name": "x", "cycle_time_s": 2e-6, "p_phys": 1e-4})
        assert hw == HardwareProfile("x", 2e-6, 1e-4)

    def test_above_threshold(self):
        with pytest.raises(AboveThreshold):
            load_profile({"name": "bad", "cycle_time_s": 1e-6, "p_phys": 0.05})

    def test_non_positive_cycle(self):
        with pytest.raises(NonPositiveCycleTime):
            HardwareProfile("bad", 0.0, 1e-4)

    def test_file(self, tmp_path):
        path = tmp_path / "neutral_atom.hw"
        path.write_text("# demo\nname = atoms\ncycle_time_s = 1e-3\np_phys: 2e-4\n")
        assert load_profile(path) == HardwareProfile("atoms", 1e-3, 2e-4)
        path.write_text("cycle_time_s = 1e-3\np_phys = 2e-4\n")
        assert load_profile(str(path)).name == "neutral_atom"

    def test_missing_key(self, tmp_path):
        path = tmp_path / "x.hw"
        path.write_text("name = x\np_phys = 1e-4\n")
        with pytest.raises(KeyError):
            load_profile(path)

    def test_unknown_name(self):
        with pytest.raises(FileNotFoundError):
            load_profile("no_such_profile")

    def test_builtins_immutable(self):
        with pytest.raises(AttributeError):
            BUILTIN_PROFILES["superconducting"].p_phys = 0.1
