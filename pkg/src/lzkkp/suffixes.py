"""Suffix array construction, inversion, predecessor links, validation.

The suffix array is stored with two writable sentinel slots (index 0 and
n + 1) around the 1-based permutation, so consumers that repurpose the
buffer as a stack never reallocate. Entries are int32 while n fits, else
int64; both widths flow through every algorithm unchanged.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from . import _sais

FULL_VALIDATION_LIMIT = 1 << 20  # full order check up to this n, sampled above
VALIDATION_SAMPLES = 1 << 16
_SAMPLED_CMP_CAP = 1 << 20  # per-pair byte budget in sampled mode


def dtype_for_length(n: int):
    """Index width wide enough for positions 0..n."""
    return np.int32 if n < 2**31 - 2 else np.int64


class SuffixArray:
    """Permutation of 1..n listing suffix start positions in ascending
    lexicographic order, padded with scratch sentinel slots at 0 and n+1.
    """

    __slots__ = ("a",)

    def __init__(self, buf: np.ndarray):
        if buf.ndim != 1 or buf.size < 2:
            raise ValueError("need a 1-d buffer of size n + 2")
        self.a = buf

    @classmethod
    def from_positions(cls, positions, dtype=None) -> "SuffixArray":
        """Wrap 1-based positions, allocating the sentinel slots."""
        positions = np.asarray(positions)
        n = positions.size
        if dtype is None:
            dtype = positions.dtype if positions.size and positions.dtype.kind == "i" else dtype_for_length(n)
        buf = np.zeros(n + 2, dtype=dtype)
        buf[1 : n + 1] = positions
        return cls(buf)

    @property
    def n(self) -> int:
        return self.a.size - 2

    @property
    def dtype(self):
        return self.a.dtype

    @property
    def positions(self) -> np.ndarray:
        """View of the 1-based entries sa[1..n] (no sentinels)."""
        return self.a[1 : self.a.size - 1]

    def copy(self) -> "SuffixArray":
        return SuffixArray(self.a.copy())

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"SuffixArray(n={self.n}, dtype={self.a.dtype})"


def build_sa_naive(text: bytes) -> SuffixArray:
    """Reference builder: comparison sort of the suffixes themselves.

    Quadratic-ish and memory-hungry; exists as the independent oracle for
    build_sa_fast and for small inputs only.
    """
    n = len(text)
    order = sorted(range(1, n + 1), key=lambda i: text[i - 1 :])
    return SuffixArray.from_positions(np.asarray(order, dtype=dtype_for_length(n)))


def build_sa_fast(text: bytes, dtype=None) -> SuffixArray:
    """Suffix array by induced sorting; linear time, a few n-word arrays."""
    n = len(text)
    if dtype is None:
        dtype = dtype_for_length(n)
    buf = np.zeros(n + 2, dtype=dtype)
    if n:
        buf[1 : n + 1] = _sais.sais_positions(text)
        buf[1 : n + 1] += 1
    return SuffixArray(buf)


def _permutation_counts(sa: SuffixArray) -> np.ndarray:
    pos = sa.positions
    n = sa.n
    if pos.size and (pos.min() < 1 or pos.max() > n):
        return np.zeros(0, dtype=np.int64)  # out of range: cannot be a permutation
    return np.bincount(pos, minlength=n + 1)


def _require_permutation(sa: SuffixArray) -> None:
    counts = _permutation_counts(sa)
    if sa.n and (counts.size == 0 or (counts[1:] != 1).any()):
        raise ValueError("suffix array entries are not a permutation of 1..n")


def build_isa(sa: SuffixArray) -> np.ndarray:
    """Inverse permutation: isa[i] = rank of suffix i; slot 0 unused (0)."""
    _require_permutation(sa)
    n = sa.n
    isa = np.zeros(n + 1, dtype=sa.dtype)
    isa[sa.positions] = np.arange(1, n + 1, dtype=sa.dtype)
    return isa


def build_phi(sa: SuffixArray) -> np.ndarray:
    """Predecessor links: phi[i] = suffix just before i in lexicographic
    order, phi[first] = 0, phi[0] = last; a single-cycle permutation of
    0..n. One pass over the suffix array, no inverse needed.
    """
    _require_permutation(sa)
    n = sa.n
    phi = np.zeros(n + 1, dtype=sa.dtype)
    if n:
        pos = sa.positions
        phi[pos[1:]] = pos[:-1]
        phi[pos[0]] = 0
        phi[0] = pos[-1]
    return phi


@njit(cache=True)
def _first_duplicate_slot(positions, n):
    # 1-based slot of the first entry that is out of range or repeated, or 0
    seen = np.zeros(n + 1, np.uint8)
    for k in range(positions.size):
        v = positions[k]
        if v < 1 or v > n or seen[v]:
            return k + 1
        seen[v] = 1
    return 0


@njit(cache=True)
def _first_order_violation(T, positions, isa_ext):
    # Exact adjacent-order check in O(n): suffixes u < v iff their first
    # bytes order them, or the bytes tie and the ranks of u+1, v+1 do
    # (rank of the empty suffix is 0). Valid whenever positions is a
    # permutation, which the caller has already established.
    for k in range(positions.size - 1):
        u = positions[k]
        v = positions[k + 1]
        cu = T[u - 1]
        cv = T[v - 1]
        if cu > cv:
            return k + 1
        if cu == cv and isa_ext[u + 1] >= isa_ext[v + 1]:
            return k + 1
    return 0


@njit(cache=True)
def _sampled_order_violation(T, positions, sample_slots, cap):
    # direct byte comparison of sampled adjacent pairs, capped per pair
    n = positions.size
    for s in range(sample_slots.size):
        k = sample_slots[s]
        u = positions[k]
        v = positions[k + 1]
        j = 0
        while j < cap and u + j <= n and v + j <= n:
            if T[u - 1 + j] != T[v - 1 + j]:
                break
            j += 1
        if j == cap:
            continue  # budget exhausted: treat as unresolved, not an error
        a = T[u - 1 + j] if u + j <= n else -1
        b = T[v - 1 + j] if v + j <= n else -1
        if a > b:
            return k + 1
    return 0


def validate_sa(text: bytes, sa: SuffixArray, *, seed: int = 0) -> str | None:
    """Diagnose a (text, suffix array) pair; None when consistent.

    Always checks the permutation property in O(n). Order is verified for
    every adjacent pair up to FULL_VALIDATION_LIMIT (exact, linear, using
    ranks to settle equal first bytes); above it, VALIDATION_SAMPLES
    random adjacent pairs are compared directly as a gross-corruption
    check.
    """
    n = len(text)
    if sa.n != n:
        return f"length mismatch: suffix array has {sa.n} entries, text {n}"
    if n == 0:
        return None
    k = int(_first_duplicate_slot(sa.positions, n))
    if k:
        return f"not a permutation at {k}"
    T = np.frombuffer(text, dtype=np.uint8)
    if n <= FULL_VALIDATION_LIMIT:
        isa_ext = np.zeros(n + 2, dtype=sa.dtype)  # isa_ext[n + 1] = 0, the empty suffix
        isa_ext[sa.positions] = np.arange(1, n + 1, dtype=sa.dtype)
        k = int(_first_order_violation(T, sa.positions, isa_ext))
    else:
        rng = np.random.default_rng(seed)
        slots = rng.integers(0, n - 1, size=VALIDATION_SAMPLES, dtype=np.int64)
        k = int(_sampled_order_violation(T, sa.positions, slots, _SAMPLED_CMP_CAP))
    if k:
        return f"order violated at {k}"
    return None
