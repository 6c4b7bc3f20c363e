"""Reading, validating and writing FCIDUMP integral files.

Indices are 1-based on disk and 0-based everywhere in memory. Two-electron
integrals use chemist ordering ``(pq|rs)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np

DEFAULT_DROP_THRESHOLD = 1e-12
SYMMETRY_RTOL = 1e-10


class FcidumpError(ValueError):
    """Base class for FCIDUMP parse failures. ``line`` is 1-based (0 if unknown)."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


class MalformedHeader(FcidumpError):
    pass


class IndexOutOfRange(FcidumpError):
    pass


class NonNumericValue(FcidumpError):
    pass


class EmptyFile(FcidumpError):
    pass


def canonical_pair(p: int, q: int) -> tuple[int, int]:
    return (p, q) if p <= q else (q, p)


def two_body_class(p: int, q: int, r: int, s: int) -> tuple[tuple[int, int, int, int], ...]:
    """All index tuples equivalent to ``(pq|rs)`` under 8-fold real symmetry."""
    return tuple(sorted({
        (p, q, r, s), (q, p, r, s), (p, q, s, r), (q, p, s, r),
        (r, s, p, q), (s, r, p, q), (r, s, q, p), (s, r, q, p),
    }))


def canonical_quad(p: int, q: int, r: int, s: int) -> tuple[int, int, int, int]:
    a = canonical_pair(p, q)
    b = canonical_pair(r, s)
    return a + b if a <= b else b + a


@dataclass(frozen=True)
class FcidumpData:
    """Immutable view of one FCIDUMP file.

    ``one_body`` and ``two_body`` hold one canonical representative per symmetry
    class (lexicographically smallest index tuple). ``raw_one_body`` and
    ``raw_two_body`` keep the records exactly as indexed on disk (last write
    wins per tuple) so that asymmetries can still be reported after
    canonicalization.
    """

    norb: int
    nelec: int
    ms2: int = 0
    orbsym: tuple[int, ...] = ()
    isym: int = 1
    one_body: Mapping[tuple[int, int], float] = field(default_factory=dict)
    two_body: Mapping[tuple[int, int, int, int], float] = field(default_factory=dict)
    core_energy: float = 0.0
    raw_one_body: Mapping[tuple[int, int], float] = field(default_factory=dict, repr=False)
    raw_two_body: Mapping[tuple[int, int, int, int], float] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.norb < 1:
            raise ValueError(f"norb must be positive, got {self.norb}")
        if self.nelec < 0:
            raise ValueError(f"nelec must be non-negative, got {self.nelec}")
        if not self.orbsym:
            object.__setattr__(self, "orbsym", (1,) * self.norb)
        for name in ("one_body", "two_body", "raw_one_body", "raw_two_body"):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))
        for key in list(self.one_body) + list(self.two_body):
            if any(not 0 <= i < self.norb for i in key):
                raise IndexError(f"integral index {key} outside 0..{self.norb - 1}")

    @classmethod
    def from_arrays(cls, h1, eri, *, nelec: int, core_energy: float = 0.0, ms2: int = 0,
                    threshold: float = DEFAULT_DROP_THRESHOLD) -> FcidumpData:
        """Build from dense ``h1[p, q]`` and chemist ``eri[p, q, r, s]`` arrays."""
        h1 = np.asarray(h1, dtype=float)
        eri = np.asarray(eri, dtype=float)
        norb = h1.shape[0]
        one = {}
        for p in range(norb):
            for q in range(p, norb):
                if abs(h1[p, q]) >= threshold:
                    one[(p, q)] = float(h1[p, q])
        two = {}
        for idx in zip(*np.nonzero(np.abs(eri) >= threshold)):
            key = canonical_quad(*map(int, idx))
            if key == tuple(map(int, idx)):
                two[key] = float(eri[idx])
        return cls(norb=norb, nelec=nelec, ms2=ms2, one_body=one, two_body=two,
                   core_energy=float(core_energy), raw_one_body=one, raw_two_body=two)

    def h1(self, p: int, q: int) -> float:
        return self.one_body.get(canonical_pair(p, q), 0.0)

    def eri(self, p: int, q: int, r: int, s: int) -> float:
        return self.two_body.get(canonical_quad(p, q, r, s), 0.0)

    def one_body_matrix(self) -> np.ndarray:
        h = np.zeros((self.norb, self.norb))
        for (p, q), v in self.one_body.items():
            h[p, q] = h[q, p] = v
        return h

    def two_body_tensor(self) -> np.ndarray:
        """Dense chemist-ordered tensor with all 8 symmetry images filled in."""
        n = self.norb
        g = np.zeros((n, n, n, n))
        for (p, q, r, s), v in self.two_body.items():
            for idx in two_body_class(p, q, r, s):
                g[idx] = v
        return g


@dataclass(frozen=True)
class Violation:
    kind: str  # "one_body" or "two_body"
    indices: tuple[int, ...]
    other: tuple[int, ...]
    magnitude: float


_KEY_RE = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)\s*=")


def _parse_header(text: str) -> dict[str, list[str]]:
    body = re.sub(r"^\s*&FCI", "", text, flags=re.IGNORECASE)
    body = re.sub(r"(&END|/)\s*$", "", body.strip(), flags=re.IGNORECASE)
    matches = list(_KEY_RE.finditer(body))
    fields: dict[str, list[str]] = {}
    for m, nxt in zip(matches, matches[1:] + [None]):
        end = nxt.start() if nxt is not None else len(body)
        raw = body[m.end():end]
        fields[m.group(1).upper()] = [v for v in re.split(r"[,\s]+", raw) if v]
    return fields


def _header_int(fields, key, line, default=None):
    if key not in fields or not fields[key]:
        if default is None:
            raise MalformedHeader(f"missing {key} in &FCI namelist", line)
        return default
    try:
        return int(fields[key][0])
    except ValueError:
        raise MalformedHeader(f"{key}={fields[key][0]!r} is not an integer", line) from None


def _to_float(token: str, lineno: int) -> float:
    try:
        return float(token.replace("D", "E").replace("d", "e"))
    except ValueError:
        raise NonNumericValue(f"cannot read integral value {token!r}", lineno) from None


def parse_fcidump(source: str | Iterable[str],
                  threshold: float = DEFAULT_DROP_THRESHOLD) -> FcidumpData:
    """Parse FCIDUMP text (a string or an iterable of lines).

    Records with ``|value| < threshold`` are read but not kept. A repeated
    record for the same canonical index overwrites the earlier one.
    """
    lines = source.splitlines() if isinstance(source, str) else [l.rstrip("\n") for l in source]
    if not any(l.strip() for l in lines):
        raise EmptyFile("no content", 1 if lines else 0)

    # locate the namelist header
    start = next(i for i, l in enumerate(lines) if l.strip())
    if not lines[start].lstrip().upper().startswith("&FCI"):
        raise MalformedHeader("file does not start with an &FCI namelist", start + 1)
    end = None
    for i in range(start, len(lines)):
        stripped = lines[i].strip()
        if re.search(r"&END\s*$", stripped, re.IGNORECASE) or stripped.endswith("/"):
            end = i
            break
    if end is None:
        raise MalformedHeader("unterminated &FCI namelist (expected '/' or '&END')", start + 1)
    fields = _parse_header("\n".join(lines[start:end + 1]))

    norb = _header_int(fields, "NORB", start + 1)
    nelec = _header_int(fields, "NELEC", start + 1)
    ms2 = _header_int(fields, "MS2", start + 1, default=0)
    isym = _header_int(fields, "ISYM", start + 1, default=1)
    if norb < 1:
        raise MalformedHeader(f"NORB must be positive, got {norb}", start + 1)
    orbsym = tuple(int(v) for v in fields.get("ORBSYM", [])[:norb]) or (1,) * norb

    raw_one: dict[tuple[int, int], float] = {}
    raw_two: dict[tuple[int, int, int, int], float] = {}
    one: dict[tuple[int, int], float] = {}
    two: dict[tuple[int, int, int, int], float] = {}
    core = 0.0
    for lineno, line in enumerate(lines[end + 1:], start=end + 2):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != 5:
            raise NonNumericValue(f"expected 'value i j k l', got {line.strip()!r}", lineno)
        value = _to_float(tokens[0], lineno)
        try:
            i, j, k, l = (int(t) for t in tokens[1:])
        except ValueError:
            raise NonNumericValue(f"non-integer index in {line.strip()!r}", lineno) from None
        if any(x < 0 or x > norb for x in (i, j, k, l)):
            raise IndexOutOfRange(f"index out of range 0..{norb} in {line.strip()!r}", lineno)
        if i == j == k == l == 0:
            core = value
        elif j == k == l == 0:
            # orbital-energy record ("e i 0 0 0"); no Hamiltonian content
            continue
        elif k == 0 and l == 0:
            if i == 0:
                raise IndexOutOfRange(f"one-body record with zero index: {line.strip()!r}", lineno)
            key = (i - 1, j - 1)
            raw_one[key] = value
            one[canonical_pair(*key)] = value
        elif 0 in (i, j, k, l):
            raise IndexOutOfRange(f"two-body record with zero index: {line.strip()!r}", lineno)
        else:
            key4 = (i - 1, j - 1, k - 1, l - 1)
            raw_two[key4] = value
            two[canonical_quad(*key4)] = value

    one = {k: v for k, v in one.items() if abs(v) >= threshold}
    two = {k: v for k, v in two.items() if abs(v) >= threshold}
    return FcidumpData(norb=norb, nelec=nelec, ms2=ms2, orbsym=orbsym, isym=isym,
                       one_body=one, two_body=two, core_energy=core,
                       raw_one_body=raw_one, raw_two_body=raw_two)


def read_fcidump(path: str | Path, threshold: float = DEFAULT_DROP_THRESHOLD) -> FcidumpData:
    with open(path) as fh:
        return parse_fcidump(fh.read(), threshold=threshold)


def _conflicts(kind, groups, rtol, atol):
    out = []
    for key in sorted(groups):
        entries = groups[key]
        if len(entries) < 2:
            continue
        (lo_idx, lo), (hi_idx, hi) = min(entries, key=lambda e: e[1]), max(entries, key=lambda e: e[1])
        if not math.isclose(lo, hi, rel_tol=rtol, abs_tol=atol):
            out.append(Violation(kind, lo_idx, hi_idx, hi - lo))
    return out


def validate_integrals(data: FcidumpData, rtol: float = SYMMETRY_RTOL,
                       atol: float = DEFAULT_DROP_THRESHOLD) -> list[Violation]:
    """Report symmetry-class members whose on-disk values disagree.

    One violation per offending class; ``magnitude`` is the spread between the
    largest and smallest member. An empty list means the data is symmetric.
    """
    ones: dict[tuple, list] = {}
    for key, v in data.raw_one_body.items():
        ones.setdefault(canonical_pair(*key), []).append((key, v))
    twos: dict[tuple, list] = {}
    for key, v in data.raw_two_body.items():
        twos.setdefault(canonical_quad(*key), []).append((key, v))
    return _conflicts("one_body", ones, rtol, atol) + _conflicts("two_body", twos, rtol, atol)


def write_fcidump(data: FcidumpData, float_format: str = "{:.17g}") -> str:
    """Serialize canonical integrals back to FCIDUMP text."""
    out = [
        f" &FCI NORB={data.norb},NELEC={data.nelec},MS2={data.ms2},",
        "  ORBSYM=" + ",".join(str(s) for s in data.orbsym) + ",",
        f"  ISYM={data.isym},",
        " &END",
    ]
    for (p, q, r, s), v in sorted(data.two_body.items()):
        out.append(f" {float_format.format(v)} {p + 1:4d} {q + 1:4d} {r + 1:4d} {s + 1:4d}")
    for (p, q), v in sorted(data.one_body.items()):
        out.append(f" {float_format.format(v)} {p + 1:4d} {q + 1:4d}    0    0")
    out.append(f" {float_format.format(data.core_energy)}    0    0    0    0")
    return "\n".join(out) + "\n"
