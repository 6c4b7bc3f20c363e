"""Logical T-count for a large active-space FCIDUMP, e.g. the 54-orbital FeMoco model.

Reports wall time and peak memory of the mapping alongside the estimate and
its ratio to a reference T-count (1.45e15 by default).

    python scripts/femoco_stretch.py FCIDUMP [--reference 1.45e15] [--gap HA]
"""

import argparse
import resource
import time

from trotterqre.fcidump import read_fcidump, validate_integrals
from trotterqre.pauli import map_hamiltonian
from trotterqre.trotter import PrecisionConfig, assemble_logical, single_step_cost


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("fcidump")
    parser.add_argument("--reference", type=float, default=1.45e15)
    parser.add_argument("--gap", type=float, default=None)
    parser.add_argument("--drop-threshold", type=float, default=1e-10)
    args = parser.parse_args()

    t0 = time.perf_counter()
    data = read_fcidump(args.fcidump)
    print(f"parsed norb={data.norb} nelec={data.nelec}, {len(data.two_body)} unique two-body integrals "
          f"in {time.perf_counter() - t0:.1f}s")
    bad = validate_integrals(data)
    if bad:
        print(f"warning: {len(bad)} symmetry violations, worst {max(abs(v.magnitude) for v in bad):.2e}")

    t1 = time.perf_counter()
    ham = map_hamiltonian(data, args.drop_threshold)
    step = single_step_cost(ham)
    t2 = time.perf_counter()
    print(f"mapped {len(ham):,} Pauli terms on {ham.n_qubits} qubits in {t2 - t1:.1f}s")
    print(f"per step: {step.n_r:,} rotations, {step.n_c:,} CNOTs, {step.n_cliff:,} single-qubit Cliffords")

    est = assemble_logical(step, data.norb, ham.n_qubits, PrecisionConfig(delta_E=args.gap))
    print(f"n_steps={est.n_steps} n_b={est.n_b} n_a={est.n_a} ({est.ancilla_mode} mode)")
    print(f"total rotations {est.total_rotations:.3e}, T gates {est.total_t_gates:.3e}")
    print(f"ratio to reference {args.reference:.3e}: {est.total_t_gates / args.reference:.2f}")
    peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
    print(f"peak RSS {peak:.0f} MB, total {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
