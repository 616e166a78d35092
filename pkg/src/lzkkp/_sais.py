"""Suffix array construction by induced sorting (SA-IS), linear time.

Works on int32 symbol arrays terminated by a unique smallest sentinel 0;
the public wrapper shifts raw bytes up by one and appends the sentinel.
Positions here are 0-based; callers convert to the package's 1-based
convention.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _bucket_heads(counts, out):
    s = 0
    for c in range(counts.size):
        out[c] = s
        s += counts[c]


@njit(cache=True)
def _bucket_tails(counts, out):
    s = 0
    for c in range(counts.size):
        s += counts[c]
        out[c] = s


@njit(cache=True)
def _induce(s, sa, stype, counts, heads, tails):
    # left-to-right: L-type predecessors go to bucket heads
    n = s.size
    _bucket_heads(counts, heads)
    for i in range(n):
        v = sa[i]
        if v > 0 and stype[v - 1] == 0:
            c = s[v - 1]
            sa[heads[c]] = v - 1
            heads[c] += 1
    # right-to-left: S-type predecessors go to bucket tails
    _bucket_tails(counts, tails)
    for i in range(n - 1, -1, -1):
        v = sa[i]
        if v > 0 and stype[v - 1] == 1:
            c = s[v - 1]
            tails[c] -= 1
            sa[tails[c]] = v - 1


@njit(cache=True)
def _lms_substrings_equal(s, stype, a, b):
    # compare from a and b up to and including the next LMS position
    n = s.size
    if a == n - 1 or b == n - 1:
        return False  # the sentinel substring is unique
    k = 0
    while True:
        a_lms = k > 0 and stype[a + k] == 1 and stype[a + k - 1] == 0
        b_lms = k > 0 and stype[b + k] == 1 and stype[b + k - 1] == 0
        if a_lms and b_lms:
            return True
        if a_lms != b_lms:
            return False
        if s[a + k] != s[b + k] or stype[a + k] != stype[b + k]:
            return False
        k += 1


@njit(cache=True)
def _sais_core(s, K):
    n = s.size
    sa = np.full(n, -1, np.int32)
    if n == 1:
        sa[0] = 0
        return sa

    # classify: 1 = S-type (suffix smaller than its right neighbour)
    stype = np.zeros(n, np.uint8)
    stype[n - 1] = 1
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1] or (s[i] == s[i + 1] and stype[i + 1] == 1):
            stype[i] = 1

    counts = np.zeros(K, np.int32)
    for i in range(n):
        counts[s[i]] += 1
    heads = np.empty(K, np.int32)
    tails = np.empty(K, np.int32)

    # round 1: drop LMS positions at their bucket tails, then induce to
    # get the LMS substrings into sorted order
    _bucket_tails(counts, tails)
    for i in range(1, n):
        if stype[i] == 1 and stype[i - 1] == 0:
            c = s[i]
            tails[c] -= 1
            sa[tails[c]] = i
    _induce(s, sa, stype, counts, heads, tails)

    # name LMS substrings by rank; equal substrings share a name
    name_of = np.full(n, -1, np.int32)
    names = 0
    prev = -1
    for i in range(n):
        v = sa[i]
        if v > 0 and stype[v] == 1 and stype[v - 1] == 0:
            if prev < 0 or not _lms_substrings_equal(s, stype, prev, v):
                names += 1
            name_of[v] = names - 1
            prev = v

    m = 0
    for i in range(n):
        if name_of[i] >= 0:
            m += 1
    reduced = np.empty(m, np.int32)
    lms_pos = np.empty(m, np.int32)
    j = 0
    for i in range(n):
        if name_of[i] >= 0:
            reduced[j] = name_of[i]
            lms_pos[j] = i
            j += 1

    if names < m:
        # names repeat: recurse to rank the LMS suffixes exactly
        rsa = _sais_core(reduced, names)
    else:
        rsa = np.empty(m, np.int32)
        for i in range(m):
            rsa[reduced[i]] = i

    # round 2: place LMS suffixes in true order and induce the rest
    sa[:] = -1
    _bucket_tails(counts, tails)
    for i in range(m - 1, -1, -1):
        p = lms_pos[rsa[i]]
        c = s[p]
        tails[c] -= 1
        sa[tails[c]] = p
    _induce(s, sa, stype, counts, heads, tails)
    return sa


def sais_positions(data):
    """0-based suffix array of a bytes-like object, as an int32 array."""
    n = len(data)
    if n == 0:
        return np.empty(0, np.int32)
    if n >= 2**31 - 1:
        raise ValueError("input longer than int32 positions can index")
    s = np.empty(n + 1, np.int32)
    s[:n] = np.frombuffer(data, np.uint8)
    s[:n] += 1
    s[n] = 0
    return _sais_core(s, 257)[1:]
