"""Hardware profiles, rotation synthesis cost and logical depth."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

SURFACE_CODE_THRESHOLD = 1e-2
DEFAULT_SYNTHESIS_ERROR = 1e-9


class InvalidSynthesisError(ValueError):
    pass


class AboveThreshold(ValueError):
    pass


class NonPositiveCycleTime(ValueError):
    pass


@dataclass(frozen=True)
class HardwareProfile:
    name: str
    cycle_time: float  # seconds per surface-code cycle
    p_phys: float

    def __post_init__(self):
        if not self.cycle_time > 0:
            raise NonPositiveCycleTime(f"{self.name}: cycle_time must be > 0, got {self.cycle_time}")
        if not 0 < self.p_phys < SURFACE_CODE_THRESHOLD:
            raise AboveThreshold(
                f"{self.name}: p_phys={self.p_phys} must lie in (0, {SURFACE_CODE_THRESHOLD})")


BUILTIN_PROFILES = {
    "superconducting": HardwareProfile("superconducting", 1e-6, 5e-4),
    "trapped_ion": HardwareProfile("trapped_ion", 7e-2, 3e-5),
}

PROFILE_KEYS = ("name", "cycle_time_s", "p_phys")


@dataclass(frozen=True)
class SynthesisConfig:
    eps_ss: float = DEFAULT_SYNTHESIS_ERROR

    def __post_init__(self):
        _check_eps(self.eps_ss)

    @property
    def t_per_rotation(self) -> int:
        return t_count(1, self.eps_ss)


def _check_eps(eps_ss):
    if not 0 < eps_ss < 1:
        raise InvalidSynthesisError(f"synthesis error must lie in (0, 1), got {eps_ss}")


def t_count(n_r: int, eps_ss: float = DEFAULT_SYNTHESIS_ERROR) -> int:
    """T gates needed to synthesize ``n_r`` arbitrary Z rotations.

    Each rotation costs ``ceil(10 + 12 log2(1/eps_ss))`` T gates, so the total
    is exactly linear in ``n_r``.
    """
    _check_eps(eps_ss)
    if n_r < 0:
        raise ValueError(f"rotation count must be non-negative, got {n_r}")
    per_rotation = 10 + 12 * math.log2(1 / eps_ss)
    return n_r * math.ceil(per_rotation - 1e-12 * per_rotation)


def logical_depth_per_step(n_r: int, n_c: int, n_qubits: int) -> int:
    """Rotations run ``n_qubits`` at a time; CNOTs are fully sequential."""
    if n_qubits < 1:
        raise ValueError(f"need at least one lane, got {n_qubits}")
    return -(-n_r // n_qubits) + n_c


def parse_profile_text(text: str) -> dict[str, str]:
    """Read ``key = value`` (or ``key: value``) lines; ``#`` starts a comment."""
    out = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else ":"
        key, _, value = line.partition(sep)
        out[key.strip()] = value.strip()
    return out


def load_profile(source: HardwareProfile | str | Path | Mapping) -> HardwareProfile:
    """Resolve a built-in name, a profile file path, or a mapping to a profile.

    Mappings and files use the keys ``name``, ``cycle_time_s`` and ``p_phys``
    (``cycle_time`` is accepted as an alias).
    """
    if isinstance(source, HardwareProfile):
        return source
    if isinstance(source, (str, Path)):
        if str(source) in BUILTIN_PROFILES:
            return BUILTIN_PROFILES[str(source)]
        path = Path(source)
        if not path.is_file():
            raise FileNotFoundError(
                f"{source!s} is neither a built-in profile {sorted(BUILTIN_PROFILES)} nor a file")
        record = parse_profile_text(path.read_text())
        record.setdefault("name", path.stem)
        source = record
    try:
        cycle = source["cycle_time_s"] if "cycle_time_s" in source else source["cycle_time"]
        return HardwareProfile(str(source["name"]), float(cycle), float(source["p_phys"]))
    except KeyError as exc:
        raise KeyError(f"hardware profile missing key {exc}; expected {PROFILE_KEYS}") from None
