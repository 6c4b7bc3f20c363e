"""Logical and surface-code resource estimates for Trotterized QPE on chemistry Hamiltonians."""

__version__ = "0.1.0"

from .fcidump import FcidumpData, parse_fcidump, read_fcidump, validate_integrals, write_fcidump
from .hardware import BUILTIN_PROFILES, HardwareProfile, load_profile, logical_depth_per_step, t_count
from .pauli import PauliString, PauliTerm, QubitHamiltonian, jordan_wigner_ladder, map_hamiltonian, multiply
from .surface_code import SurfaceCodeResult, logical_error_rate, optimize
from .trotter import (
    LogicalEstimate,
    PrecisionConfig,
    TrotterStepCost,
    ancilla_count_gap,
    ancilla_count_known,
    assemble_logical,
    bits_of_precision,
    num_trotter_steps,
    single_step_cost,
)

__all__ = [
    "FcidumpData", "parse_fcidump", "read_fcidump", "validate_integrals", "write_fcidump",
    "BUILTIN_PROFILES", "HardwareProfile", "load_profile", "logical_depth_per_step", "t_count",
    "PauliString", "PauliTerm", "QubitHamiltonian", "jordan_wigner_ladder", "map_hamiltonian", "multiply",
    "SurfaceCodeResult", "logical_error_rate", "optimize",
    "LogicalEstimate", "PrecisionConfig", "TrotterStepCost", "ancilla_count_gap", "ancilla_count_known",
    "assemble_logical", "bits_of_precision", "num_trotter_steps", "single_step_cost",
]
