"""Per-step Trotter gate counts and logical QPE resource totals.

Each Pauli exponential ``exp(i theta P)`` of weight w is compiled as: basis
changes onto Z for every X/Y factor, a CNOT ladder folding parity onto the
last acted qubit, one Rz, the ladder undone, basis changes undone. That is
1 rotation, 2(w - 1) CNOTs and 2 (#X + #Y) single-qubit Cliffords.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .hardware import DEFAULT_SYNTHESIS_ERROR, logical_depth_per_step, t_count
from .pauli import EmptyHamiltonian, QubitHamiltonian, popcount

CHEMICAL_ACCURACY = 1.6e-3
_SNAP = 1e-12


class InvalidPrecision(ValueError):
    pass


class InvalidProbability(ValueError):
    pass


class ZeroGap(ValueError):
    pass


def _ceil_log2(v: float) -> int:
    # values within 1e-12 relative of a power of two count as that power
    k = math.ceil(math.log2(v))
    return k - 1 if 2.0 ** (k - 1) >= v * (1 - _SNAP) else k


@dataclass(frozen=True)
class TrotterStepCost:
    n_r: int
    n_c: int
    n_cliff: int

    def __post_init__(self):
        if min(self.n_r, self.n_c, self.n_cliff) < 0:
            raise ValueError("gate counts must be non-negative")
        if self.n_c % 2:
            raise ValueError(f"CNOT count must be even, got {self.n_c}")


@dataclass(frozen=True)
class PrecisionConfig:
    """QPE accuracy targets, all energies in Hartree.

    ``delta_E`` is the first excitation gap. When given, ancillas are sized
    with the Trotter-error formula; when ``None`` the eigenstate is treated
    as known.
    """

    eps_p: float = 1e-3
    delta_E_R: float = 1.0
    p_f: float = 0.1
    eps_t: float = CHEMICAL_ACCURACY
    delta_E: Optional[float] = None

    def __post_init__(self):
        if not 0 < self.eps_p < self.delta_E_R:
            raise InvalidPrecision(f"need 0 < eps_p < delta_E_R, got {self.eps_p}, {self.delta_E_R}")
        if not 0 < self.p_f < 1:
            raise InvalidProbability(f"p_f must lie in (0, 1), got {self.p_f}")
        if self.eps_t < 0:
            raise InvalidPrecision(f"eps_t must be non-negative, got {self.eps_t}")
        if self.delta_E is not None and self.delta_E <= 0:
            raise ZeroGap(f"gap must be positive, got {self.delta_E}")

    @property
    def ancilla_mode(self) -> str:
        return "known" if self.delta_E is None else "gap"


@dataclass(frozen=True)
class LogicalEstimate:
    n_steps: int
    n_b: int
    n_a: int
    total_rotations: int
    total_cnots: int
    total_t_gates: int
    logical_depth: int
    logical_qubits: int
    ancilla_mode: str = "gap"

    @property
    def total_toffolis(self) -> float:
        return self.total_t_gates / 4


def single_step_cost(h: QubitHamiltonian) -> TrotterStepCost:
    """Gate tally of one first-order Trotter step over every term of ``h``."""
    if len(h) == 0:
        raise EmptyHamiltonian("Hamiltonian has no non-identity terms")
    w = popcount(h.x | h.z)
    xy = popcount(h.x)
    live = w > 0
    return TrotterStepCost(
        n_r=int(live.sum()),
        n_c=int(2 * (w[live] - 1).sum()),
        n_cliff=int(2 * xy.sum()),
    )


def num_trotter_steps(n_o: int) -> int:
    """``ceil(n_o ** 1.5)``, computed in integers."""
    if n_o < 1:
        raise ValueError(f"need at least one orbital, got {n_o}")
    cube = n_o ** 3
    root = math.isqrt(cube)
    return root if root * root == cube else root + 1


def bits_of_precision(eps_p: float, delta_E_R: float = 1.0) -> int:
    if not 0 < eps_p < delta_E_R:
        raise InvalidPrecision(f"need 0 < eps_p < delta_E_R, got {eps_p}, {delta_E_R}")
    return max(1, _ceil_log2(delta_E_R / eps_p))


def ancilla_count_known(n_b: int, p_f: float) -> int:
    """Ancillas for QPE on an exact eigenstate with failure probability ``p_f``."""
    if not 0 < p_f < 1:
        raise InvalidProbability(f"p_f must lie in (0, 1), got {p_f}")
    if n_b < 1:
        raise ValueError(f"n_b must be positive, got {n_b}")
    return n_b + _ceil_log2(2 + 1 / (2 * p_f))


def ancilla_count_gap(n_b: int, p_f: float, eps_t: float, delta_E: float) -> int:
    """Ancillas accounting for Trotter error ``eps_t`` against the gap ``delta_E``."""
    if delta_E == 0:
        raise ZeroGap("a nonzero excitation gap is required")
    if delta_E < 0:
        raise ValueError(f"gap must be positive, got {delta_E}")
    if not 0 < p_f < 1:
        raise InvalidProbability(f"p_f must lie in (0, 1), got {p_f}")
    if eps_t < 0:
        raise ValueError(f"eps_t must be non-negative, got {eps_t}")
    return n_b + _ceil_log2(2 + eps_t ** 2 / (2 * p_f * delta_E ** 2))


def ancilla_count(cfg: PrecisionConfig) -> tuple[int, int]:
    """``(n_b, n_a)`` for the mode implied by ``cfg``."""
    n_b = bits_of_precision(cfg.eps_p, cfg.delta_E_R)
    if cfg.delta_E is None:
        return n_b, ancilla_count_known(n_b, cfg.p_f)
    return n_b, ancilla_count_gap(n_b, cfg.p_f, cfg.eps_t, cfg.delta_E)


def assemble_logical(step: TrotterStepCost, n_o: int, n_qubits: int,
                     cfg: PrecisionConfig = PrecisionConfig(),
                     eps_ss: float = DEFAULT_SYNTHESIS_ERROR,
                     depth_lanes: Optional[int] = None,
                     n_a: Optional[int] = None) -> LogicalEstimate:
    """Scale one step's cost by ``n_steps * n_a``.

    ``depth_lanes`` is how many rotations run in parallel (default: the
    system register width). ``n_a`` overrides the ancilla count derived from
    ``cfg``.
    """
    if step.n_r == 0:
        raise EmptyHamiltonian("Trotter step contains no rotations")
    n_steps = num_trotter_steps(n_o)
    n_b, derived = ancilla_count(cfg)
    n_a = derived if n_a is None else n_a
    reps = n_steps * n_a
    total_rotations = step.n_r * reps
    return LogicalEstimate(
        n_steps=n_steps,
        n_b=n_b,
        n_a=n_a,
        total_rotations=total_rotations,
        total_cnots=step.n_c * reps,
        total_t_gates=t_count(total_rotations, eps_ss),
        logical_depth=logical_depth_per_step(step.n_r, step.n_c, depth_lanes or n_qubits) * reps,
        logical_qubits=n_qubits + n_a,
        ancilla_mode=cfg.ancilla_mode,
    )
