"""Brute-force ground truth for tests: definition-transcribed, no cleverness.

These deliberately share no machinery with the kkp module beyond the
plain value types. The parser scans every earlier position for the best
match; the smaller-value scan walks the suffix array slot by slot.
Compiled for speed, cubic/quadratic by nature, test sizes only.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .suffixes import SuffixArray
from .textmodel import Factorization


@njit(cache=True)
def _best_previous_match(T, n, i):
    # maximal match length at i with a source strictly before i; the
    # smallest source attaining it wins (strict > keeps the first)
    best_p = 0
    best_l = 0
    for p in range(1, i):
        l = 0
        while i + l <= n and T[p - 1 + l] == T[i - 1 + l]:
            l += 1
        if l > best_l:
            best_l = l
            best_p = p
    return best_p, best_l


@njit(cache=True)
def _brute_parse(T, out_pos, out_len):
    n = T.size
    z = 0
    i = 1
    while i <= n:
        p, l = _best_previous_match(T, n, i)
        if l == 0:
            out_pos[z] = T[i - 1]
            out_len[z] = 0
            i += 1
        else:
            out_pos[z] = p
            out_len[z] = l
            i += l
        z += 1
    return z


@njit(cache=True)
def _brute_smaller_values(positions, inter):
    # literal scan per slot: nearest later / earlier slot holding a
    # smaller text position, mapped back to text order
    n = positions.size
    for j in range(n):
        v = positions[j]
        nsv = 0
        for k in range(j + 1, n):
            if positions[k] < v:
                nsv = positions[k]
                break
        psv = 0
        for k in range(j - 1, -1, -1):
            if positions[k] < v:
                psv = positions[k]
                break
        inter[2 * v] = psv
        inter[2 * v + 1] = nsv


def brute_lz(text: bytes) -> Factorization:
    """Greedy parse by exhaustive search; the reference every fast variant
    is compared against. Smallest source position on ties.
    """
    n = len(text)
    T = np.frombuffer(text, dtype=np.uint8)
    out_pos = np.empty(n, dtype=np.int64)
    out_len = np.empty(n, dtype=np.int64)
    z = _brute_parse(T, out_pos, out_len)
    return Factorization.from_arrays(out_pos[:z].copy(), out_len[:z].copy(), n)


def brute_nsv_psv(sa: SuffixArray) -> np.ndarray:
    """Nearest-smaller tables by quadratic scan, interleaved in text order:
    inter[2i] = previous-side value, inter[2i+1] = next-side value, 0 when
    the scanned range holds nothing smaller.
    """
    inter = np.zeros(2 * sa.n + 2, dtype=sa.dtype)
    _brute_smaller_values(sa.positions, inter)
    return inter


def brute_lpf(text: bytes, i: int) -> tuple[int, int]:
    """Longest previous factor at position i by exhaustive scan.

    Returns (source, length); when nothing before i matches, the pair is
    (byte value at i, 0).
    """
    n = len(text)
    if not 1 <= i <= n:
        raise ValueError(f"position {i} outside 1..{n}")
    T = np.frombuffer(text, dtype=np.uint8)
    p, l = _best_previous_match(T, n, i)
    if l == 0:
        return int(T[i - 1]), 0
    return int(p), int(l)
