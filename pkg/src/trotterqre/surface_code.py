"""Surface-code distance selection for a logical workload.

Model, per odd distance d:

* patch of ``patch_factor * d**2`` physical qubits per logical qubit, times a
  routing factor on the logical-qubit count;
* T gates consumed one at a time, ``d`` cycles each;
* failure = logical qubits * T count * p_L(d) plus T count times the error of
  the shallowest 15-to-1 distillation cascade that keeps distillation under
  half the budget.

The feasible distance with the smallest space-time volume wins.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .hardware import HardwareProfile
from .trotter import LogicalEstimate

DEFAULT_BUDGET = 0.1


class InvalidDistance(ValueError):
    pass


class NoFeasibleDistance(RuntimeError):
    pass


@dataclass(frozen=True)
class SurfaceCodeConfig:
    route_factor: float = 2.0
    patch_factor: int = 2
    d_min: int = 3
    d_max: int = 201
    max_levels: int = 8
    distillation_share: float = 0.5


@dataclass(frozen=True)
class SurfaceCodeResult:
    hardware: str
    distance: int
    physical_qubits: int
    runtime: float
    spacetime: float
    total_error: float
    logical_error: float
    distillation_error: float
    distillation_levels: int
    n_cycles: int


def logical_error_rate(p_phys: float, d: int) -> float:
    """Per-patch, per-round logical error ``0.1 (100 p)^((d+1)/2)``."""
    if d < 3 or d % 2 == 0:
        raise InvalidDistance(f"distance must be odd and >= 3, got {d}")
    if not 0 < p_phys < 1:
        raise ValueError(f"p_phys must lie in (0, 1), got {p_phys}")
    return 0.1 * (100 * p_phys) ** ((d + 1) // 2)


def distillation_error(p_phys: float, levels: int) -> float:
    """Output error of ``levels`` rounds of 15-to-1 distillation (35 eps^3 per round)."""
    if levels < 1:
        raise ValueError(f"need at least one level, got {levels}")
    eps = p_phys
    for _ in range(levels):
        eps = 35 * eps ** 3
    return eps


def distillation_levels(n_t: int, p_phys: float, budget: float, max_levels: int = 8) -> int | None:
    """Smallest cascade depth with ``n_t * eps_l < budget``, or None."""
    for level in range(1, max_levels + 1):
        if n_t * distillation_error(p_phys, level) < budget:
            return level
    return None


def evaluate(est: LogicalEstimate, hw: HardwareProfile, d: int,
             config: SurfaceCodeConfig = SurfaceCodeConfig(),
             eps_sc: float = DEFAULT_BUDGET) -> SurfaceCodeResult | None:
    """Cost of running ``est`` at distance ``d``; None if distillation cannot meet its share."""
    n_t = est.total_t_gates
    levels = distillation_levels(n_t, hw.p_phys, config.distillation_share * eps_sc, config.max_levels)
    if levels is None:
        return None
    qubits = int(round(config.route_factor * est.logical_qubits)) * config.patch_factor * d * d
    n_cycles = n_t * d
    runtime = n_cycles * hw.cycle_time
    logical = est.logical_qubits * n_t * logical_error_rate(hw.p_phys, d)
    distill = n_t * distillation_error(hw.p_phys, levels)
    return SurfaceCodeResult(
        hardware=hw.name,
        distance=d,
        physical_qubits=qubits,
        runtime=runtime,
        spacetime=qubits * runtime,
        total_error=logical + distill,
        logical_error=logical,
        distillation_error=distill,
        distillation_levels=levels,
        n_cycles=n_cycles,
    )


def sweep(est: LogicalEstimate, hw: HardwareProfile,
          config: SurfaceCodeConfig = SurfaceCodeConfig(),
          eps_sc: float = DEFAULT_BUDGET) -> Iterator[SurfaceCodeResult]:
    for d in range(config.d_min | 1, config.d_max + 1, 2):
        res = evaluate(est, hw, d, config, eps_sc)
        if res is not None:
            yield res


def optimize(est: LogicalEstimate, hw: HardwareProfile, eps_sc: float = DEFAULT_BUDGET,
             config: SurfaceCodeConfig = SurfaceCodeConfig()) -> SurfaceCodeResult:
    """Feasible distance (total error < eps_sc) with minimal space-time; ties go to smaller d."""
    if est.total_t_gates < 1:
        raise ValueError("workload has no T gates")
    if not 0 < eps_sc < 1:
        raise ValueError(f"error budget must lie in (0, 1), got {eps_sc}")
    best = None
    for res in sweep(est, hw, config, eps_sc):
        if res.total_error < eps_sc and (best is None or res.spacetime < best.spacetime):
            best = res
    if best is None:
        raise NoFeasibleDistance(
            f"{hw.name}: no distance <= {config.d_max} keeps total error below {eps_sc} "
            f"for {est.total_t_gates:.3e} T gates at p_phys={hw.p_phys}")
    return best
