"""Compare surface-code overheads across hardware profiles for the fixture molecules.

For each FCIDUMP in tests/data the logical estimate uses the FCI gap stored in
benchmarks.json, then every profile is optimized independently.

    python scripts/hardware_comparison.py [--hardware NAME_OR_FILE ...] [--json out.json]
"""

import argparse
import json
from pathlib import Path

from trotterqre.hardware import BUILTIN_PROFILES
from trotterqre.report import EstimateConfig, run_estimate
from trotterqre.trotter import PrecisionConfig

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"


def main():
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--hardware", action="append", default=[])
    parser.add_argument("--data", type=Path, default=DATA)
    parser.add_argument("--json", type=Path, default=None, help="also dump all rows here")
    args = parser.parse_args()

    bench = json.loads((args.data / "benchmarks.json").read_text())
    hardware = tuple(args.hardware) or tuple(BUILTIN_PROFILES)
    rows = []
    for name, meta in bench.items():
        cfg = EstimateConfig(str(args.data / f"{name}.fcidump"), mode="ec", hardware=hardware,
                             precision=PrecisionConfig(delta_E=meta["gap"]))
        rep = run_estimate(cfg, timestamp="")
        for ec in rep.error_correction:
            rows.append({"molecule": name, "n_qubits": rep.molecule["n_qubits"],
                         "t_gates": rep.logical["total_t_gates"], **ec})

    header = f"{'molecule':<10} {'hardware':<16} {'T gates':>10} {'d':>4} {'phys qubits':>12} " \
             f"{'runtime (s)':>12} {'qubit-s':>11}"
    print(header)
    print("-" * len(header))
    for r in rows:
        if r["status"] != "ok":
            print(f"{r['molecule']:<10} {r['hardware']:<16} {r['t_gates']:>10.3e}  infeasible")
            continue
        print(f"{r['molecule']:<10} {r['hardware']:<16} {r['t_gates']:>10.3e} {r['distance']:>4d} "
              f"{r['physical_qubits']:>12,d} {r['runtime']:>12.3e} {r['spacetime']:>11.3e}")
    if args.json:
        args.json.write_text(json.dumps(rows, indent=2) + "\n")


if __name__ == "__main__":
    main()
