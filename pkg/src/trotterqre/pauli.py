"""Pauli strings, Jordan-Wigner mapping and qubit Hamiltonians.

Spin orbitals are interleaved: spin orbital ``2p`` is spatial orbital ``p``
spin-up and ``2p + 1`` is spin-down. Occupied modes are ``|1>`` and

    a_p -> Z_0 ... Z_{p-1} (X_p + iY_p) / 2

Internally a Pauli string is a pair of bitmasks ``(x, z)`` stored as rows of
uint64 words, read as ``i^{popcount(x & z)} X^x Z^z`` so that a bit set in both
masks is a Y.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .fcidump import FcidumpData

DEFAULT_DROP_THRESHOLD = 1e-10
IMAG_TOLERANCE = 1e-10

_AXES = ("X", "Y", "Z")

# single-qubit products: (a, b) -> (phase, result); "I" is the identity
_PRODUCT = {
    ("X", "X"): (1, "I"), ("Y", "Y"): (1, "I"), ("Z", "Z"): (1, "I"),
    ("X", "Y"): (1j, "Z"), ("Y", "Z"): (1j, "X"), ("Z", "X"): (1j, "Y"),
    ("Y", "X"): (-1j, "Z"), ("Z", "Y"): (-1j, "X"), ("X", "Z"): (-1j, "Y"),
}


class MismatchedWidth(ValueError):
    pass


class NonHermitianResidue(ValueError):
    pass


class EmptyHamiltonian(ValueError):
    pass


@dataclass(frozen=True, order=True)
class PauliString:
    """Sparse Pauli string; qubits not listed in ``ops`` carry the identity."""

    ops: tuple[tuple[int, str], ...]
    n_qubits: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        ops = tuple(sorted(self.ops))
        seen = set()
        for q, a in ops:
            if a not in _AXES:
                raise ValueError(f"unknown Pauli axis {a!r}")
            if not 0 <= q < self.n_qubits:
                raise IndexError(f"qubit {q} outside register of {self.n_qubits}")
            if q in seen:
                raise ValueError(f"qubit {q} listed twice")
            seen.add(q)
        object.__setattr__(self, "ops", ops)

    @classmethod
    def from_dict(cls, ops: Mapping[int, str], n_qubits: int) -> PauliString:
        return cls(tuple((q, a) for q, a in ops.items() if a != "I"), n_qubits)

    @classmethod
    def parse(cls, label: str, n_qubits: int) -> PauliString:
        """Read ``"X0 Z1 Y2"``; ``"I"`` or an empty label is the identity."""
        ops = []
        for tok in label.split():
            if tok == "I":
                continue
            ops.append((int(tok[1:]), tok[0]))
        return cls(tuple(ops), n_qubits)

    @classmethod
    def identity(cls, n_qubits: int) -> PauliString:
        return cls((), n_qubits)

    @classmethod
    def from_masks(cls, x: int, z: int, n_qubits: int) -> PauliString:
        ops = []
        for q in range(n_qubits):
            bx, bz = (x >> q) & 1, (z >> q) & 1
            if bx or bz:
                ops.append((q, "Y" if bx and bz else "X" if bx else "Z"))
        return cls(tuple(ops), n_qubits)

    def masks(self) -> tuple[int, int]:
        x = z = 0
        for q, a in self.ops:
            if a in "XY":
                x |= 1 << q
            if a in "YZ":
                z |= 1 << q
        return x, z

    def as_dict(self) -> dict[int, str]:
        return dict(self.ops)

    @property
    def weight(self) -> int:
        return len(self.ops)

    def count(self, axis: str) -> int:
        return sum(1 for _, a in self.ops if a == axis)

    def __str__(self):
        return " ".join(f"{a}{q}" for q, a in self.ops) or "I"


@dataclass(frozen=True)
class PauliTerm:
    coefficient: float
    string: PauliString

    def __str__(self):
        return f"{self.coefficient!r} {self.string}"


def multiply(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    """Product ``a * b`` as ``(phase, string)`` with phase in {1, -1, 1j, -1j}."""
    if a.n_qubits != b.n_qubits:
        raise MismatchedWidth(f"{a.n_qubits} vs {b.n_qubits} qubits")
    phase: complex = 1
    out = a.as_dict()
    for q, axis in b.ops:
        if q not in out:
            out[q] = axis
            continue
        ph, res = _PRODUCT[(out[q], axis)]
        phase *= ph
        if res == "I":
            del out[q]
        else:
            out[q] = res
    return phase, PauliString.from_dict(out, a.n_qubits)


def jordan_wigner_ladder(p: int, dagger: bool, n: int) -> list[tuple[complex, PauliString]]:
    """Jordan-Wigner image of ``a_p`` (or ``a_p^dagger``) on ``n`` qubits."""
    if not 0 <= p < n:
        raise IndexError(f"mode {p} outside register of {n}")
    prefix = tuple((q, "Z") for q in range(p))
    return [
        (0.5, PauliString(prefix + ((p, "X"),), n)),
        (-0.5j if dagger else 0.5j, PauliString(prefix + ((p, "Y"),), n)),
    ]


# --------------------------------------------------------------------------
# word-packed symplectic rows


def n_words(n_qubits: int) -> int:
    return (n_qubits + 63) // 64


def _int_to_words(v: int, w: int) -> np.ndarray:
    return np.array([(v >> (64 * k)) & 0xFFFFFFFFFFFFFFFF for k in range(w)], dtype=np.uint64)


def _words_to_int(row) -> int:
    return sum(int(word) << (64 * k) for k, word in enumerate(row))


@functools.lru_cache(maxsize=16)
def _mode_tables(n_qubits: int) -> tuple[np.ndarray, np.ndarray]:
    """Per mode p: the single bit ``1 << p`` and the prefix mask ``(1 << p) - 1``."""
    w = n_words(n_qubits)
    bit = np.stack([_int_to_words(1 << p, w) for p in range(n_qubits)])
    below = np.stack([_int_to_words((1 << p) - 1, w) for p in range(n_qubits)])
    bit.flags.writeable = False
    below.flags.writeable = False
    return bit, below


def popcount(rows: np.ndarray) -> np.ndarray:
    return np.bitwise_count(rows).sum(axis=-1, dtype=np.int64)


_I_POW = np.array([1, 1j, -1, -1j])


def _jw_products(modes: np.ndarray, daggers: Sequence[bool], coeffs: np.ndarray,
                 n_qubits: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Expand products of ladder operators into Pauli rows.

    ``modes`` has shape (K, m): term k is ``coeffs[k] * prod_j op_j(modes[k, j])``
    with op_j a creator when ``daggers[j]``. Returns (x, z, coeff) with
    ``K * 2**m`` rows, not yet combined.
    """
    bit, below = _mode_tables(n_qubits)
    K, m = modes.shape
    xs, zs, cs = [], [], []
    for choice in itertools.product((0, 1), repeat=m):
        x = np.zeros((K, bit.shape[1]), dtype=np.uint64)
        z = np.zeros_like(x)
        c = coeffs.astype(complex)
        for j, use_y in enumerate(choice):
            p = modes[:, j]
            x2 = bit[p]
            z2 = below[p] | bit[p] if use_y else below[p]
            if use_y:
                c = c * (-0.5j if daggers[j] else 0.5j)
            else:
                c = c * 0.5
            x3, z3 = x ^ x2, z ^ z2
            e = (popcount(x & z) + popcount(x2 & z2) + 2 * popcount(z & x2)
                 - popcount(x3 & z3)) % 4
            c = c * _I_POW[e]
            x, z = x3, z3
        xs.append(x)
        zs.append(z)
        cs.append(c)
    return np.concatenate(xs), np.concatenate(zs), np.concatenate(cs)


def _combine(x: np.ndarray, z: np.ndarray, c: np.ndarray):
    """Sum coefficients of identical rows; output sorted by (x, z) words."""
    if len(c) == 0:
        return x, z, c
    keys = np.concatenate([x, z], axis=1)
    # lexsort on integer columns is far faster than np.unique(axis=0) on void rows
    order = np.lexsort(keys.T[::-1])
    keys, c = keys[order], c[order]
    first = np.ones(len(c), dtype=bool)
    first[1:] = (keys[1:] != keys[:-1]).any(axis=1)
    group = np.cumsum(first) - 1
    re = np.bincount(group, weights=c.real)
    im = np.bincount(group, weights=c.imag)
    uniq = keys[first]
    w = x.shape[1]
    return uniq[:, :w].copy(), uniq[:, w:].copy(), re + 1j * im


def _canonical_two_body(i, j, k, l, coeff):
    """Reorder ``a+_i a+_j a_k a_l`` to i > j, k > l and merge duplicates."""
    sign = np.ones_like(coeff)
    swap = i < j
    i, j = np.where(swap, j, i), np.where(swap, i, j)
    sign[swap] *= -1
    swap = k < l
    k, l = np.where(swap, l, k), np.where(swap, k, l)
    sign[swap] *= -1
    n = int(max(i.max(), k.max())) + 1
    key = ((i * n + j) * n + k) * n + l
    uniq, inv = np.unique(key, return_inverse=True)
    total = np.bincount(inv.ravel(), weights=coeff * sign, minlength=len(uniq))
    l_, rest = uniq % n, uniq // n
    k_, rest = rest % n, rest // n
    j_, i_ = rest % n, rest // n
    return np.stack([i_, j_, k_, l_], axis=1), total


@dataclass(frozen=True, eq=False)
class QubitHamiltonian:
    """Real-weighted sum of distinct Pauli strings plus a scalar offset.

    ``x`` and ``z`` are (n_terms, n_words) uint64 masks, ``coeffs`` the real
    weights. The identity string never appears among the terms; its weight
    and the core energy live in ``identity_offset``.
    """

    n_qubits: int
    x: np.ndarray
    z: np.ndarray
    coeffs: np.ndarray
    identity_offset: float = 0.0

    def __post_init__(self):
        for name in ("x", "z", "coeffs"):
            arr = getattr(self, name)
            # frozen arrays that own their memory are adopted as-is
            if not (isinstance(arr, np.ndarray) and arr.flags.owndata and not arr.flags.writeable):
                arr = np.array(arr, copy=True)
                arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @classmethod
    def from_terms(cls, terms: Iterable[PauliTerm | tuple[float, PauliString]], n_qubits: int,
                   identity_offset: float = 0.0) -> QubitHamiltonian:
        """Build from explicit terms; repeated strings are summed, identity folded."""
        acc: dict[tuple[int, int], float] = {}
        for t in terms:
            c, s = (t.coefficient, t.string) if isinstance(t, PauliTerm) else t
            if s.n_qubits != n_qubits:
                raise MismatchedWidth(f"{s.n_qubits} vs {n_qubits} qubits")
            acc[s.masks()] = acc.get(s.masks(), 0.0) + c
        offset = identity_offset + acc.pop((0, 0), 0.0)
        w = n_words(n_qubits)
        keys = sorted(k for k, v in acc.items() if v != 0)
        x = np.array([_int_to_words(k[0], w) for k in keys], dtype=np.uint64).reshape(-1, w)
        z = np.array([_int_to_words(k[1], w) for k in keys], dtype=np.uint64).reshape(-1, w)
        return cls(n_qubits, x, z, np.array([acc[k] for k in keys], dtype=float), float(offset))

    def __len__(self):
        return len(self.coeffs)

    @functools.cached_property
    def terms(self) -> tuple[PauliTerm, ...]:
        """Terms ordered by descending |coefficient|, then by string."""
        out = [
            PauliTerm(float(c), PauliString.from_masks(_words_to_int(xr), _words_to_int(zr), self.n_qubits))
            for xr, zr, c in zip(self.x, self.z, self.coeffs)
        ]
        out.sort(key=lambda t: (-abs(t.coefficient), t.string.ops))
        return tuple(out)

    def weights(self) -> np.ndarray:
        return popcount(self.x | self.z)

    def to_text(self) -> str:
        """One term per line, ``coeff pauli-word``; the offset is written as ``I``."""
        lines = [f"{self.identity_offset!r} I"]
        lines += [str(t) for t in self.terms]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, n_qubits: int) -> QubitHamiltonian:
        terms = []
        for line in text.splitlines():
            if not line.strip():
                continue
            coeff, _, label = line.strip().partition(" ")
            terms.append((float(coeff), PauliString.parse(label, n_qubits)))
        return cls.from_terms(terms, n_qubits)

    def to_dense(self) -> np.ndarray:
        """Dense matrix (qubit 0 is the least significant bit); small registers only."""
        if self.n_qubits > 14:
            raise ValueError("dense matrices limited to 14 qubits")
        dim = 1 << self.n_qubits
        idx = np.arange(dim)
        mat = np.zeros((dim, dim), dtype=complex)
        mat[idx, idx] += self.identity_offset
        for xr, zr, c in zip(self.x, self.z, self.coeffs):
            xm, zm = _words_to_int(xr), _words_to_int(zr)
            ny = (xm & zm).bit_count()
            # <b ^ x| P |b> = i^ny (-1)^popcount(b & z)
            signs = 1 - 2 * (np.bitwise_count(idx & zm).astype(np.int64) & 1)
            mat[idx ^ xm, idx] += c * (1j ** ny) * signs
        return mat


def _two_body_rows(g: np.ndarray, p_block: Iterable[int]):
    """Spin-orbital ``1/2 (pq|rs) a+_{p s} a+_{r t} a_{s t} a_{q s}`` for p in block."""
    p_block = np.asarray(list(p_block))
    sub = g[p_block]
    pi, q, r, s = np.nonzero(sub)
    vals = 0.5 * sub[pi, q, r, s]
    p = p_block[pi]
    rows, coeffs = [], []
    for sig in (0, 1):
        for tau in (0, 1):
            i, j, k, l = 2 * p + sig, 2 * r + tau, 2 * s + tau, 2 * q + sig
            keep = (i != j) & (k != l)
            rows.append(np.stack([i[keep], j[keep], k[keep], l[keep]], axis=1))
            coeffs.append(vals[keep])
    return np.concatenate(rows), np.concatenate(coeffs)


_HASH_MULT = np.array([0x9E3779B97F4A7C15, 0xC2B2AE3D27D4EB4F, 0x165667B19E3779F9, 0x27D4EB2F165667C5],
                      dtype=np.uint64)


def _bucket_of(modes: np.ndarray, n_qubits: int, n_buckets: int) -> np.ndarray:
    """Hash of the X mask shared by every Pauli row a ladder product expands into.

    Rows can only combine when their X masks agree, so terms in different
    buckets never need to be merged with each other.
    """
    if n_buckets == 1:
        return np.zeros(len(modes), dtype=np.int64)
    bit, _ = _mode_tables(n_qubits)
    x = np.zeros((len(modes), bit.shape[1]), dtype=np.uint64)
    for j in range(modes.shape[1]):
        x ^= bit[modes[:, j]]
    mult = np.resize(_HASH_MULT, bit.shape[1])
    with np.errstate(over="ignore"):
        h = np.bitwise_xor.reduce(x * mult, axis=1)
    return ((h >> np.uint64(32)) % np.uint64(n_buckets)).astype(np.int64)


def _split(modes, coeff, bucket, n_buckets):
    """Yield ``(bucket, modes, coeff)`` for every non-empty bucket."""
    order = np.argsort(bucket, kind="stable")
    cuts = np.searchsorted(bucket[order], np.arange(1, n_buckets))
    for b, (m, c) in enumerate(zip(np.split(modes[order], cuts), np.split(coeff[order], cuts))):
        if len(c):
            yield b, m, c


def map_hamiltonian(data: FcidumpData, drop_threshold: float = DEFAULT_DROP_THRESHOLD,
                    block_size: int | None = None, n_buckets: int | None = None) -> QubitHamiltonian:
    """Jordan-Wigner map the electronic Hamiltonian stored in ``data``.

    ``H = sum h_pq a+_p a_q + 1/2 sum (pq|rs) a+_p a+_r a_s a_q + E_core`` over
    spin orbitals with spin conserved at each vertex. Fermion terms are
    generated ``block_size`` spatial orbitals at a time, routed into
    ``n_buckets`` groups by the X mask they produce, and each group is expanded
    and combined on its own, which bounds peak memory for large active spaces.
    """
    n = 2 * data.norb
    h1 = data.one_body_matrix()
    g = data.two_body_tensor()
    if block_size is None:
        block_size = max(1, 250_000 // max(1, data.norb ** 3))
    if n_buckets is None:
        # aim for about a million Pauli rows per group
        expanded = 64 * np.count_nonzero(g) + 8 * np.count_nonzero(h1)
        n_buckets = max(1, int(expanded // 1_000_000))
    mode_t = np.int16 if n < 2 ** 15 else np.int64

    one = [([], []) for _ in range(n_buckets)]
    p, q = np.nonzero(h1)
    if len(p):
        modes = np.concatenate([np.stack([2 * p + s, 2 * q + s], axis=1) for s in (0, 1)])
        coeff = np.concatenate([h1[p, q]] * 2)
        for b, m, c in _split(modes.astype(mode_t), coeff, _bucket_of(modes, n, n_buckets),
                              n_buckets):
            one[b][0].append(m)
            one[b][1].append(c)

    two = [([], []) for _ in range(n_buckets)]
    for start in range(0, data.norb, block_size):
        rows, coeff = _two_body_rows(g, range(start, min(start + block_size, data.norb)))
        if len(coeff) == 0:
            continue
        modes, coeff = _canonical_two_body(*rows.T, coeff)
        keep = coeff != 0
        modes, coeff = modes[keep], coeff[keep]
        for b, m, c in _split(modes.astype(mode_t), coeff, _bucket_of(modes, n, n_buckets),
                              n_buckets):
            two[b][0].append(m)
            two[b][1].append(c)

    xs, zs, cs = [], [], []
    offset = data.core_energy
    seen = False
    for b in range(n_buckets):
        parts = []
        if one[b][0]:
            modes = np.concatenate(one[b][0]).astype(np.int64)
            parts.append(_jw_products(modes, (True, False), np.concatenate(one[b][1]), n))
        one[b] = None
        if two[b][0]:
            modes = np.concatenate(two[b][0]).astype(np.int64)
            # the same term can arrive from two generation blocks
            modes, coeff = _canonical_two_body(*modes.T, np.concatenate(two[b][1]))
            keep = coeff != 0
            parts.append(_jw_products(modes[keep], (True, True, False, False), coeff[keep], n))
        two[b] = None
        if not parts:
            continue
        x, z, c = _combine(*(np.concatenate(a) for a in zip(*parts)))
        del parts
        bad = np.abs(c.imag) > IMAG_TOLERANCE
        if bad.any():
            k = int(np.argmax(np.abs(c.imag)))
            label = PauliString.from_masks(_words_to_int(x[k]), _words_to_int(z[k]), n)
            raise NonHermitianResidue(f"imaginary coefficient {c[k].imag:.3e} on {label}")
        c = c.real
        ident = ~(x.any(axis=1) | z.any(axis=1))
        offset += float(c[ident].sum())
        keep = ~ident & (np.abs(c) >= drop_threshold)
        xs.append(x[keep])
        zs.append(z[keep])
        cs.append(c[keep])
        seen = True

    if not seen:
        raise EmptyHamiltonian("no nonzero integrals")
    total = sum(len(c) for c in cs)
    if total == 0:
        raise EmptyHamiltonian("no non-identity terms above the drop threshold")
    x = np.empty((total, n_words(n)), dtype=np.uint64)
    z = np.empty_like(x)
    c = np.empty(total)
    at = 0
    while cs:
        # release each group as soon as it is copied so the result is never held twice
        xb, zb, cb = xs.pop(0), zs.pop(0), cs.pop(0)
        x[at:at + len(cb)], z[at:at + len(cb)], c[at:at + len(cb)] = xb, zb, cb
        at += len(cb)
    for arr in (x, z, c):
        arr.flags.writeable = False
    return QubitHamiltonian(n, x, z, c, offset)
