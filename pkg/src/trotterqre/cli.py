"""Command-line entry point.

    trotterqre estimate --input h2.fcidump --gap 0.8 --mode ec --format table
    trotterqre hamiltonian --input h2.fcidump -o h2.paulis

Exit codes: 0 success, 2 unreadable or malformed input, 3 integral symmetry
violations under ``--strict``, 4 a hardware profile admits no surface-code
distance within budget (the report is still written).
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .fcidump import FcidumpError, read_fcidump
from .hardware import BUILTIN_PROFILES, PROFILE_KEYS, AboveThreshold, NonPositiveCycleTime
from .pauli import DEFAULT_DROP_THRESHOLD, EmptyHamiltonian, NonHermitianResidue, map_hamiltonian
from .report import DEPTH_LANES, FORMATS, EstimateConfig, StrictValidationError, run_estimate
from .surface_code import SurfaceCodeConfig
from .trotter import CHEMICAL_ACCURACY, PrecisionConfig

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_STRICT = 3
EXIT_INFEASIBLE = 4

log = logging.getLogger("trotterqre")

_HW_HELP = (
    f"built-in profile ({', '.join(BUILTIN_PROFILES)}) or a key=value file with keys "
    f"{', '.join(PROFILE_KEYS)}; repeat for several profiles (default: all built-ins)"
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="trotterqre", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="resource estimate for one FCIDUMP file")
    est.add_argument("--input", required=True, help="FCIDUMP file")
    est.add_argument("--gap", type=float, default=None,
                     help="first excitation gap in Ha; selects the Trotter-error ancilla formula "
                          "(omit to size ancillas for a known eigenstate)")
    est.add_argument("--pf", type=float, default=0.1, help="QPE failure probability (default 0.1)")
    est.add_argument("--eps-p", type=float, default=1e-3, help="target precision in Ha (default 1e-3)")
    est.add_argument("--delta-er", type=float, default=1.0, help="spectral range in Ha (default 1)")
    est.add_argument("--eps-t", type=float, default=CHEMICAL_ACCURACY,
                     help="target Trotter error in Ha (default 1.6e-3)")
    est.add_argument("--eps-ss", type=float, default=1e-9, help="per-rotation synthesis error (default 1e-9)")
    est.add_argument("--eps-sc", type=float, default=0.1, help="surface-code error budget (default 0.1)")
    est.add_argument("--hardware", action="append", default=[], help=_HW_HELP)
    est.add_argument("--mode", choices=("logical", "ec"), default="logical")
    est.add_argument("--format", choices=FORMATS, default="json")
    est.add_argument("--strict", action="store_true", help="abort on integral symmetry violations")
    est.add_argument("--depth-lanes", choices=DEPTH_LANES, default="orbitals",
                     help="parallel rotation lanes in the depth model (default: orbitals)")
    est.add_argument("--drop-threshold", type=float, default=DEFAULT_DROP_THRESHOLD,
                     help="drop Pauli terms below this magnitude in Ha (default 1e-10)")
    est.add_argument("--integral-threshold", type=float, default=1e-12,
                     help="drop integrals below this magnitude at parse time (default 1e-12)")
    est.add_argument("--route-factor", type=float, default=2.0,
                     help="logical-qubit routing overhead in the surface-code model (default 2)")
    est.add_argument("-o", "--output", default="-", help="write the report here (default stdout)")

    ham = sub.add_parser("hamiltonian", help="export the Jordan-Wigner qubit Hamiltonian as text")
    ham.add_argument("--input", required=True)
    ham.add_argument("--drop-threshold", type=float, default=DEFAULT_DROP_THRESHOLD)
    ham.add_argument("-o", "--output", default="-")
    return parser


def _write(text: str, dest: str):
    if dest == "-":
        sys.stdout.write(text)
    else:
        with open(dest, "w") as fh:
            fh.write(text)


def _estimate(args) -> int:
    try:
        cfg = EstimateConfig(
            input_path=args.input,
            precision=PrecisionConfig(eps_p=args.eps_p, delta_E_R=args.delta_er, p_f=args.pf,
                                      eps_t=args.eps_t, delta_E=args.gap),
            eps_ss=args.eps_ss,
            eps_sc=args.eps_sc,
            hardware=tuple(args.hardware),
            mode=args.mode,
            output_format=args.format,
            strict=args.strict,
            depth_lanes=args.depth_lanes,
            parse_threshold=args.integral_threshold,
            drop_threshold=args.drop_threshold,
            surface_code=SurfaceCodeConfig(route_factor=args.route_factor),
        )
        if cfg.mode == "ec":
            cfg.profiles()
        report = run_estimate(cfg)
    except (OSError, FcidumpError, KeyError, AboveThreshold, NonPositiveCycleTime,
            EmptyHamiltonian, NonHermitianResidue, ValueError) as exc:
        if isinstance(exc, StrictValidationError):
            log.error("%s: %s", args.input, exc)
            return EXIT_STRICT
        log.error("%s", exc)
        return EXIT_INPUT
    _write(report.render(cfg.output_format), args.output)
    if report.has_infeasible:
        for row in report.error_correction:
            if row["status"] != "ok":
                log.error("%s", row["error"])
        return EXIT_INFEASIBLE
    return EXIT_OK


def _hamiltonian(args) -> int:
    try:
        ham = map_hamiltonian(read_fcidump(args.input), args.drop_threshold)
    except (OSError, FcidumpError, EmptyHamiltonian, NonHermitianResidue) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    _write(ham.to_text(), args.output)
    return EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    if args.command == "estimate":
        return _estimate(args)
    return _hamiltonian(args)
