"""Acceptance gate: one test per criterion, at the stated tolerance.

The FeMoco check needs the published 54-orbital active-space FCIDUMP; point
``TROTTERQRE_FEMOCO_FCIDUMP`` at it to run that criterion.
"""

import json
import os
import re
import time

import numpy as np
import pytest

from oracles import circuit_tally, fermion_matrix, hamiltonian_matrix, number_operator, random_fcidump
from trotterqre.cli import main
from trotterqre.fcidump import read_fcidump
from trotterqre.hardware import BUILTIN_PROFILES, t_count
from trotterqre.pauli import EmptyHamiltonian, PauliString, QubitHamiltonian, map_hamiltonian
from trotterqre.report import EstimateConfig, run_estimate
from trotterqre.surface_code import logical_error_rate, optimize
from trotterqre.trotter import (
    PrecisionConfig,
    ancilla_count_gap,
    assemble_logical,
    bits_of_precision,
    num_trotter_steps,
    single_step_cost,
)

BENCHMARK_FILES = ["h2_sto3g", "h2_sto6g", "lih_sto3g", "h2o_sto3g"]
FEMOCO_T_GATES = 1.45e15


def test_criterion_1_formula_fidelity():
    assert bits_of_precision(1e-3, 1.0) == 10
    assert num_trotter_steps(4) == 8
    assert num_trotter_steps(54) == 397
    assert t_count(1, 2.0 ** -10) == 130
    assert abs(logical_error_rate(1e-3, 3) - 1e-3) <= 1e-12 * 1e-3
    for n_b in range(1, 40):
        for p_f in (0.01, 0.1, 0.5):
            for gap in (0.01, 0.1, 1.0):
                assert ancilla_count_gap(n_b, p_f, 0.0, gap) == n_b + 1


def test_criterion_2_mapping_oracle(data_dir):
    t0 = time.perf_counter()
    cases = [read_fcidump(data_dir / "h2_sto3g.fcidump")]
    rng = np.random.default_rng(20240601)
    for norb in (1, 2, 3, 4):
        for density in (0.2, 0.5, 1.0):
            cases.append(random_fcidump(rng, norb, density=density))
    checked = 0
    for data in cases:
        try:
            ham = map_hamiltonian(data)
        except EmptyHamiltonian:
            continue
        m = hamiltonian_matrix(ham)
        ev_q = np.linalg.eigvalsh(m)
        ev_f = np.linalg.eigvalsh(fermion_matrix(data))
        assert np.max(np.abs(ev_q - ev_f)) <= 1e-8
        n_op = number_operator(ham.n_qubits)
        assert np.max(np.abs(m @ n_op - n_op @ m)) <= 1e-10
        checked += 1
    assert checked >= 10
    assert time.perf_counter() - t0 < 60


def test_criterion_3_step_cost_oracle():
    rng = np.random.default_rng(7)
    for _ in range(25):
        n_qubits = int(rng.integers(1, 9))
        n_terms = int(rng.integers(1, 201))
        terms = []
        for _ in range(n_terms):
            axes = rng.choice(list("IXYZ"), size=n_qubits)
            terms.append((float(rng.normal()), PauliString.from_dict(dict(enumerate(axes)), n_qubits)))
        ham = QubitHamiltonian.from_terms(terms, n_qubits)
        if len(ham) == 0:
            continue
        ref = circuit_tally(ham)
        step = single_step_cost(ham)
        assert (step.n_r, step.n_c, step.n_cliff) == (ref["rotations"], ref["cnots"], ref["cliffords"])


@pytest.mark.parametrize("name", ["h2_sto3g", "h2_sto6g"])
def test_criterion_4_h2_scale(data_dir, name):
    rep = run_estimate(EstimateConfig(str(data_dir / f"{name}.fcidump")))
    assert 1e5 <= rep.logical["total_t_gates"] <= 1e8


@pytest.mark.slow
def test_criterion_5_femoco_stretch():
    path = os.environ.get("TROTTERQRE_FEMOCO_FCIDUMP")
    if not path or not os.path.exists(path):
        pytest.skip("set TROTTERQRE_FEMOCO_FCIDUMP to the 54-orbital FeMoco active-space FCIDUMP")
    t0 = time.perf_counter()
    data = read_fcidump(path)
    assert data.norb == 54
    step = single_step_cost(map_hamiltonian(data))
    est = assemble_logical(step, data.norb, 2 * data.norb, PrecisionConfig())
    assert time.perf_counter() - t0 <= 30 * 60
    ratio = est.total_t_gates / FEMOCO_T_GATES
    assert 1 / 30 <= ratio <= 30, f"T = {est.total_t_gates:.3e}, ratio {ratio:.2f}"


@pytest.mark.parametrize("name", BENCHMARK_FILES)
def test_criterion_6_hardware_ordering(data_dir, benchmarks, name):
    cfg = EstimateConfig(str(data_dir / f"{name}.fcidump"),
                         precision=PrecisionConfig(delta_E=benchmarks[name]["gap"]))
    data = read_fcidump(cfg.input_path)
    est = assemble_logical(single_step_cost(map_hamiltonian(data)), data.norb, 2 * data.norb,
                           cfg.precision)
    sc = optimize(est, BUILTIN_PROFILES["superconducting"])
    ion = optimize(est, BUILTIN_PROFILES["trapped_ion"])
    assert ion.physical_qubits < sc.physical_qubits
    assert ion.runtime >= 1e3 * sc.runtime
    assert ion.spacetime > sc.spacetime


def test_criterion_7_determinism(data_dir, tmp_path):
    outputs = []
    for i in range(2):
        out = tmp_path / f"run{i}.json"
        code = main(["estimate", "--input", str(data_dir / "lih_sto3g.fcidump"), "--mode", "ec",
                     "--gap", "0.1332", "-o", str(out)])
        assert code == 0
        outputs.append(re.sub(rb'"timestamp": "[^"]*"', b'"timestamp": ""', out.read_bytes()))
    assert outputs[0] == outputs[1]
    assert json.loads(outputs[0])["error_correction"]
