"""Mapping cost versus active-space size on dense random integrals.

Dense random tensors give the largest possible term count for a given number
of orbitals, so the timings bound what a real Hamiltonian of that size costs.

    python scripts/scaling.py 8 16 24 32
"""

import argparse
import resource
import time

import numpy as np

from trotterqre.fcidump import FcidumpData
from trotterqre.pauli import map_hamiltonian
from trotterqre.trotter import single_step_cost


def dense_random(norb, rng):
    h1 = rng.normal(size=(norb, norb))
    g = rng.normal(size=(norb,) * 4)
    g = g + g.transpose(1, 0, 2, 3)
    g = g + g.transpose(0, 1, 3, 2)
    g = g + g.transpose(2, 3, 0, 1)
    return FcidumpData.from_arrays(h1 + h1.T, g, nelec=norb)


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("norbs", type=int, nargs="+")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'norb':>5} {'terms':>12} {'n_c':>14} {'map (s)':>9} {'peak MB':>9}")
    for norb in args.norbs:
        data = dense_random(norb, rng)
        t0 = time.perf_counter()
        ham = map_hamiltonian(data)
        step = single_step_cost(ham)
        dt = time.perf_counter() - t0
        peak = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024
        print(f"{norb:>5} {len(ham):>12,} {step.n_c:>14,} {dt:>9.1f} {peak:>9.0f}")


if __name__ == "__main__":
    main()
