"""Compiled inner loops shared by the factorization variants.

Position convention: text positions are 1-based; 0 means "no position".
Text buffers (`T`) are 0-based uint8 views, so the byte at text position
i is T[i - 1]. Suffix array buffers carry writable sentinel slots at
index 0 and n + 1; position-valued work arrays (psv/nsv pairs, the
predecessor permutation and its inverse) are indexed directly by text
position.

Every kernel is single-threaded and deterministic. Kernels that evaluate
match lengths return a byte-comparison count alongside their result.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def factor_candidates(T, n, i, psv, nsv):
    """Pick the longer of the two candidate matches for the phrase at i.

    Returns (source, length, comparisons). Ties go to the nsv candidate;
    a 0 candidate contributes length 0 without touching the text.
    """
    lp = 0
    ncmp = 0
    if psv != 0:
        while i + lp <= n:
            ncmp += 1
            if T[psv - 1 + lp] != T[i - 1 + lp]:
                break
            lp += 1
    ln = 0
    if nsv != 0:
        while i + ln <= n:
            ncmp += 1
            if T[nsv - 1 + ln] != T[i - 1 + ln]:
                break
            ln += 1
    if lp > ln:
        return psv, lp, ncmp
    return nsv, ln, ncmp


@njit(cache=True)
def nsv_psv_stack_pass(sa, n, inter):
    """One left-to-right pass filling inter[2i] = psv(i), inter[2i+1] = nsv(i).

    The already-scanned prefix of `sa` doubles as the stack, so `sa` is
    destroyed. Both values of a position are written together when it is
    popped. Returns the maximum stack depth reached.
    """
    sa[0] = 0
    sa[n + 1] = 0
    top = 0
    max_top = 0
    for i in range(1, n + 2):
        v = sa[i]
        while sa[top] > v:
            e = sa[top]
            inter[2 * e] = sa[top - 1]
            inter[2 * e + 1] = v
            top -= 1
        top += 1
        if top > max_top:
            max_top = top
        sa[top] = v
    return max_top


@njit(cache=True)
def chain_pass(positions, top, inter):
    """Stack-free variant of the psv/nsv pass, resumable over chunks.

    The pending positions are threaded through their own psv pointers in
    `inter`, so `positions` is only read. `top` is the current chain head
    (0 when empty); the updated head is returned.
    """
    for k in range(positions.size):
        v = positions[k]
        while top > v:
            inter[2 * top + 1] = v
            top = inter[2 * top]
        inter[2 * v] = top
        top = v
    return top


@njit(cache=True)
def chain_flush(top, inter):
    """Assign nsv = 0 to positions still pending after the scan."""
    while top > 0:
        inter[2 * top + 1] = 0
        top = inter[2 * top]


@njit(cache=True)
def phrase_pass_inter(T, n, inter, out_pos, out_len):
    """Emit the greedy parse reading psv/nsv pairs from `inter`.

    Literals are stored as (byte value, 0). Returns (z, comparisons).
    """
    z = 0
    ncmp = 0
    i = 1
    while i <= n:
        p, ell, c = factor_candidates(T, n, i, inter[2 * i], inter[2 * i + 1])
        ncmp += c
        if ell == 0:
            out_pos[z] = T[i - 1]
            out_len[z] = 0
            i += 1
        else:
            out_pos[z] = p
            out_len[z] = ell
            i += ell
        z += 1
    return z, ncmp


@njit(cache=True)
def kkp2s_stack_pass(sa, n, phi):
    """Left-to-right pass storing only nsv values, stack kept inside `sa`.

    phi[i] = nsv(i) for every position afterwards; `sa` is destroyed.
    """
    sa[0] = 0
    sa[n + 1] = 0
    top = 0
    for i in range(1, n + 2):
        v = sa[i]
        while sa[top] > v:
            phi[sa[top]] = v
            top -= 1
        top += 1
        sa[top] = v


@njit(cache=True)
def kkp2s_phrase_pass(T, n, phi, out_pos, out_len):
    """Parse while recovering psv values on the fly from the nsv array.

    `phi` enters holding nsv values and is reshaped, position by position,
    into the circular predecessor list of the suffixes seen so far; when
    the loop finishes it equals the full predecessor permutation.
    Returns (z, comparisons).
    """
    phi[0] = 0
    z = 0
    ncmp = 0
    nxt = 1
    for t in range(1, n + 1):
        nsv = phi[t]
        psv = phi[nsv]
        if t == nxt:
            p, ell, c = factor_candidates(T, n, t, psv, nsv)
            ncmp += c
            if ell == 0:
                out_pos[z] = T[t - 1]
                out_len[z] = 0
                nxt = t + 1
            else:
                out_pos[z] = p
                out_len[z] = ell
                nxt = t + ell
            z += 1
        phi[t] = psv
        phi[nsv] = t
    return z, ncmp


@njit(cache=True)
def kkp2n_psv_pass(positions, top, phiinv):
    """Stack-free pass storing only psv values; resumable over chunks.

    phiinv[v] = psv(v) for every scanned position v; `positions` is only
    read. Returns the updated chain head.
    """
    for k in range(positions.size):
        v = positions[k]
        while top > v:
            top = phiinv[top]
        phiinv[v] = top
        top = v
    return top


@njit(cache=True)
def kkp2b_psv_pass(positions, phiinv, buf, cnt):
    """Buffered form of kkp2n_psv_pass; writes the identical psv values.

    `buf` holds the top of the pending-position chain (bottom at buf[0],
    top at buf[cnt-1]; a 0 entry can only sit at the very bottom). On
    overflow the bottom half is discarded; on underflow the buffer is
    refilled half way by walking the psv pointers already in `phiinv`.
    Returns the updated entry count.
    """
    cap = buf.size
    half = cap // 2
    for k in range(positions.size):
        v = positions[k]
        while buf[cnt - 1] > v:
            popped = buf[cnt - 1]
            cnt -= 1
            if cnt == 0:
                x = phiinv[popped]
                m = 0
                while True:
                    buf[m] = x
                    m += 1
                    if x == 0 or m == half:
                        break
                    x = phiinv[x]
                a = 0
                b = m - 1
                while a < b:
                    tmp = buf[a]
                    buf[a] = buf[b]
                    buf[b] = tmp
                    a += 1
                    b -= 1
                cnt = m
        if cnt == cap:
            for a in range(cap - half):
                buf[a] = buf[a + half]
            cnt = cap - half
        phiinv[v] = buf[cnt - 1]
        buf[cnt] = v
        cnt += 1
    return cnt


@njit(cache=True)
def kkp2n_phrase_pass(T, n, phiinv, out_pos, out_len):
    """Parse while recovering nsv values on the fly from the psv array.

    Mirror image of kkp2s_phrase_pass: `phiinv` enters holding psv values
    and leaves as the inverse of the predecessor permutation.
    Returns (z, comparisons).
    """
    phiinv[0] = 0
    z = 0
    ncmp = 0
    nxt = 1
    for t in range(1, n + 1):
        psv = phiinv[t]
        nsv = phiinv[psv]
        if t == nxt:
            p, ell, c = factor_candidates(T, n, t, psv, nsv)
            ncmp += c
            if ell == 0:
                out_pos[z] = T[t - 1]
                out_len[z] = 0
                nxt = t + 1
            else:
                out_pos[z] = p
                out_len[z] = ell
                nxt = t + ell
            z += 1
        phiinv[t] = nsv
        phiinv[psv] = t
    return z, ncmp


@njit(cache=True)
def decode_pass(pos, lens, srclen, out):
    """Rebuild the text; copies run byte by byte so self-overlap works.

    Returns (status, factor_index): status 0 = ok, 1 = output overflow,
    2 = copy source at or past the current position, 3 = output shorter
    than srclen (index -1 for status 0/3).
    """
    cur = 0
    for k in range(pos.size):
        ell = lens[k]
        if ell == 0:
            if cur >= srclen:
                return 1, k
            out[cur] = pos[k]
            cur += 1
        else:
            p = pos[k]
            if p < 1 or p > cur:
                return 2, k
            if cur + ell > srclen:
                return 1, k
            src = p - 1
            for j in range(ell):
                out[cur + j] = out[src + j]
            cur += ell
    if cur != srclen:
        return 3, -1
    return 0, -1


@njit(cache=True)
def first_invalid_factor(T, pos, lens):
    """Index of the first factor that does not reproduce the text, or -1.

    A literal must equal the byte at its phrase start; a copy must point
    strictly before its start and match byte for byte.
    """
    n = T.size
    start = 1
    for k in range(pos.size):
        ell = lens[k]
        if ell == 0:
            if start > n or pos[k] != T[start - 1]:
                return k
            start += 1
        else:
            p = pos[k]
            if p < 1 or p >= start or start + ell - 1 > n:
                return k
            for j in range(ell):
                if T[p - 1 + j] != T[start - 1 + j]:
                    return k
            start += ell
    return -1


@njit(cache=True)
def scan_binary_records(buf, width, out_pos, out_len):
    """Parse tag-prefixed factor records from a byte buffer.

    Record: tag 0 + 1 byte literal, or tag 1 + two little-endian `width`-
    byte integers (pos, len). Returns (z, err_offset); err_offset is -1
    on success, else the offset of the offending record.
    """
    z = 0
    off = 0
    total = buf.size
    while off < total:
        tag = buf[off]
        if tag == 0:
            if off + 2 > total:
                return z, off
            out_pos[z] = buf[off + 1]
            out_len[z] = 0
            off += 2
        elif tag == 1:
            if off + 1 + 2 * width > total:
                return z, off
            p = np.int64(0)
            ell = np.int64(0)
            for j in range(width):
                p |= np.int64(buf[off + 1 + j]) << (8 * j)
                ell |= np.int64(buf[off + 1 + width + j]) << (8 * j)
            out_pos[z] = p
            out_len[z] = ell
            off += 1 + 2 * width
        else:
            return z, off
        z += 1
    return z, -1
