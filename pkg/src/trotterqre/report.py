"""Pipeline orchestration and report rendering."""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import logging
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Sequence

from . import __version__
from .fcidump import DEFAULT_DROP_THRESHOLD as PARSE_THRESHOLD
from .fcidump import read_fcidump, validate_integrals
from .hardware import BUILTIN_PROFILES, DEFAULT_SYNTHESIS_ERROR, HardwareProfile, load_profile
from .pauli import DEFAULT_DROP_THRESHOLD as TERM_THRESHOLD
from .pauli import map_hamiltonian
from .surface_code import DEFAULT_BUDGET, NoFeasibleDistance, SurfaceCodeConfig, optimize
from .trotter import LogicalEstimate, PrecisionConfig, assemble_logical, single_step_cost

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
MODES = ("logical", "ec")
FORMATS = ("json", "csv", "table")
DEPTH_LANES = ("orbitals", "qubits")


class StrictValidationError(ValueError):
    def __init__(self, violations):
        self.violations = violations
        worst = max(violations, key=lambda v: abs(v.magnitude))
        super().__init__(f"{len(violations)} integral symmetry violation(s); "
                         f"worst {worst.kind} {worst.indices} vs {worst.other}: {worst.magnitude:.3e}")


@dataclass(frozen=True)
class EstimateConfig:
    input_path: str
    precision: PrecisionConfig = PrecisionConfig()
    eps_ss: float = DEFAULT_SYNTHESIS_ERROR
    eps_sc: float = DEFAULT_BUDGET
    hardware: tuple[str, ...] = ()
    mode: str = "logical"
    output_format: str = "json"
    strict: bool = False
    depth_lanes: str = "orbitals"
    parse_threshold: float = PARSE_THRESHOLD
    drop_threshold: float = TERM_THRESHOLD
    surface_code: SurfaceCodeConfig = SurfaceCodeConfig()

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.output_format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.output_format!r}")
        if self.depth_lanes not in DEPTH_LANES:
            raise ValueError(f"depth_lanes must be one of {DEPTH_LANES}, got {self.depth_lanes!r}")
        object.__setattr__(self, "hardware", tuple(str(h) for h in self.hardware))

    def profiles(self) -> list[HardwareProfile]:
        return [load_profile(h) for h in self.hardware or BUILTIN_PROFILES]


@dataclass
class Report:
    molecule: dict
    step_cost: dict
    logical: dict
    error_correction: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    version: str = __version__
    schema_version: int = SCHEMA_VERSION
    timestamp: str = ""

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "version": self.version,
            "timestamp": self.timestamp,
            "molecule": self.molecule,
            "step_cost": self.step_cost,
            "logical": self.logical,
            "error_correction": self.error_correction,
            "config": self.config,
        }

    @property
    def has_infeasible(self) -> bool:
        return any(row["status"] != "ok" for row in self.error_correction)

    def render(self, fmt: str = "json") -> str:
        if fmt == "json":
            return json.dumps(self.to_dict(), indent=2) + "\n"
        rows = flatten(self.to_dict())
        if fmt == "csv":
            buf = io.StringIO()
            writer = csv.writer(buf, lineterminator="\n")
            writer.writerow(["key", "value"])
            writer.writerows(rows)
            return buf.getvalue()
        if fmt == "table":
            width = max(len(k) for k, _ in rows)
            return "".join(f"{k:<{width}}  {v}\n" for k, v in rows)
        raise ValueError(f"unknown format {fmt!r}")


def flatten(obj: Any, prefix: str = "") -> list[tuple[str, str]]:
    """Leaves as ``(dotted.key, json-encoded value)`` in document order."""
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out += flatten(v, f"{prefix}.{k}" if prefix else k)
        return out
    if isinstance(obj, list):
        if not obj:
            return [(prefix, "[]")]
        out = []
        for i, v in enumerate(obj):
            out += flatten(v, f"{prefix}[{i}]")
        return out
    return [(prefix, json.dumps(obj))]


_EC_FIELDS = ("distance", "physical_qubits", "runtime", "spacetime", "total_error",
              "logical_error", "distillation_error", "distillation_levels", "n_cycles")


def _ec_row(est: LogicalEstimate, hw: HardwareProfile, cfg: EstimateConfig) -> dict:
    row = {"hardware": hw.name, "cycle_time_s": hw.cycle_time, "p_phys": hw.p_phys, "status": "ok"}
    try:
        res = optimize(est, hw, cfg.eps_sc, cfg.surface_code)
    except NoFeasibleDistance as exc:
        row.update({k: None for k in _EC_FIELDS}, status="infeasible", error=str(exc))
        return row
    row.update({k: getattr(res, k) for k in _EC_FIELDS}, error=None)
    return row


def compare_hardware(cfg: EstimateConfig, est: LogicalEstimate,
                     profiles: Sequence[HardwareProfile | str] | None = None) -> list[dict]:
    """One row per profile, sorted by space-time volume; infeasible rows go last."""
    profiles = [load_profile(p) for p in profiles] if profiles is not None else cfg.profiles()
    rows = [_ec_row(est, hw, cfg) for hw in profiles]
    return sorted(rows, key=lambda r: (r["status"] != "ok", r["spacetime"] or 0.0))


def _config_echo(cfg: EstimateConfig) -> dict:
    out = dataclasses.asdict(cfg)
    out["hardware"] = list(cfg.hardware)
    return out


def run_estimate(cfg: EstimateConfig, timestamp: str | None = None) -> Report:
    """parse -> validate -> map -> step cost -> assemble -> (surface code per profile)."""
    data = read_fcidump(cfg.input_path, threshold=cfg.parse_threshold)
    violations = validate_integrals(data)
    if violations:
        if cfg.strict:
            raise StrictValidationError(violations)
        for v in violations:
            log.warning("asymmetric %s integrals %s vs %s differ by %.3e",
                        v.kind, v.indices, v.other, v.magnitude)

    ham = map_hamiltonian(data, cfg.drop_threshold)
    step = single_step_cost(ham)
    lanes = data.norb if cfg.depth_lanes == "orbitals" else ham.n_qubits
    est = assemble_logical(step, data.norb, ham.n_qubits, cfg.precision, cfg.eps_ss, depth_lanes=lanes)

    molecule = {
        "input": str(cfg.input_path),
        "norb": data.norb,
        "nelec": data.nelec,
        "ms2": data.ms2,
        "n_qubits": ham.n_qubits,
        "n_terms": len(ham),
        "identity_offset": ham.identity_offset,
        "symmetry_violations": len(violations),
    }
    logical = dataclasses.asdict(est)
    logical["total_toffolis"] = est.total_toffolis
    logical["depth_lanes"] = lanes
    ec = compare_hardware(cfg, est) if cfg.mode == "ec" else []
    if timestamp is None:
        timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return Report(
        molecule=molecule,
        step_cost=dataclasses.asdict(step),
        logical=logical,
        error_correction=ec,
        config=_config_echo(cfg),
        timestamp=timestamp,
    )
