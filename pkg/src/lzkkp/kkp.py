"""Linear-time greedy factorization over a suffix array: five variants.

All variants compute the same parse from the same nearest-smaller-value
candidates and share one tie-break (equal match lengths pick the nsv
side), so their outputs are identical factor for factor. They differ in
working-array layout and in what happens to the suffix array:

  kkp3            psv/nsv pairs in one interleaved array; the scanned
                  prefix of the suffix array is reused as the stack
                  (suffix array destroyed).
  kkp3_stackless  same pairs, stack replaced by psv pointer chains
                  (suffix array untouched).
  kkp2s           single extra array: nsv values first, psv recovered on
                  the fly; finishes holding the predecessor permutation
                  (suffix array destroyed).
  kkp2n           mirror of kkp2s storing psv values; finishes holding
                  the inverse predecessor permutation (suffix array
                  untouched).
  kkp2b           kkp2n with a fixed-size buffer over the pointer chain
                  to keep stack traffic local; output is independent of
                  the buffer size.

Each variant reads the suffix array exactly once, in order, which is
what makes the streaming entry point possible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .suffixes import SuffixArray, build_sa_fast, dtype_for_length
from .textmodel import Copy, Factor, Factorization, Literal, lcp

DEFAULT_BUFFER_ENTRIES = 65536  # 256 KiB of 32-bit entries

ALGORITHM_NAMES = ("kkp3", "kkp3s", "kkp2s", "kkp2n", "kkp2b")

STREAMABLE = ("kkp3s", "kkp2n", "kkp2b")  # variants that never write the SA

_STREAM_CHUNK = 1 << 20


class SaStreamError(ValueError):
    """A one-pass suffix array source did not match the text."""


@dataclass
class SmallerValueArrays:
    """Nearest smaller text positions, interleaved in text order.

    inter[2i] is the nearest smaller position on the lexicographic
    predecessor side of i, inter[2i+1] on the successor side; 0 means no
    such position. max_stack_depth records how deep the construction
    stack got (n for the worst case a^(n-1)b).
    """

    inter: np.ndarray
    max_stack_depth: int

    def psv(self, i: int) -> int:
        return int(self.inter[2 * i])

    def nsv(self, i: int) -> int:
        return int(self.inter[2 * i + 1])


def _require_match(text: bytes, sa: SuffixArray) -> None:
    n = len(text)
    if sa.n != n:
        raise ValueError(f"suffix array has {sa.n} entries, text has {n} bytes")
    if n:
        pos = sa.positions
        if int(pos.min()) < 1 or int(pos.max()) > n:
            raise ValueError("suffix array entries out of range 1..n")


def _text_view(text: bytes) -> np.ndarray:
    return np.frombuffer(text, dtype=np.uint8)


def _new_parse(pos, lens, z, n, ncmp) -> Factorization:
    return Factorization.from_arrays(
        pos[:z].copy(), lens[:z].copy(), n, comparisons=int(ncmp)
    )


def lz_factor_step(text: bytes, i: int, psv: int, nsv: int) -> tuple[Factor, int]:
    """Compute the phrase starting at i from its two candidate sources.

    Match lengths are evaluated by direct byte comparison; the longer
    candidate wins and ties go to nsv. Returns the factor and the start
    of the next phrase.
    """
    n = len(text)
    assert 1 <= i <= n, f"phrase start {i} outside 1..{n}"
    lp = lcp(text, i, psv)
    ln = lcp(text, i, nsv)
    if lp > ln:
        p, ell = psv, lp
    else:
        p, ell = nsv, ln
    if ell == 0:
        return Literal(text[i - 1]), i + 1
    return Copy(p, ell), i + ell


def nsv_psv_arrays(sa: SuffixArray) -> SmallerValueArrays:
    """Both nearest-smaller tables in one pass; consumes the suffix array.

    The scanned prefix of the suffix array buffer serves as the stack, so
    the caller's array is destroyed.
    """
    n = sa.n
    inter = np.empty(2 * n + 2, dtype=sa.dtype)
    inter[0] = inter[1] = 0
    depth = _kernels.nsv_psv_stack_pass(sa.a, n, inter)
    return SmallerValueArrays(inter, int(depth))


def kkp3(text: bytes, sa: SuffixArray) -> Factorization:
    """Parse using suffix array + interleaved psv/nsv pairs (3n words).

    Destroys the suffix array (its buffer becomes the stack).
    """
    _require_match(text, sa)
    n = sa.n
    svals = nsv_psv_arrays(sa)
    T = _text_view(text)
    out_pos = np.empty(n, dtype=sa.dtype)
    out_len = np.empty(n, dtype=sa.dtype)
    z, ncmp = _kernels.phrase_pass_inter(T, n, svals.inter, out_pos, out_len)
    return _new_parse(out_pos, out_len, z, n, ncmp)


def kkp3_stackless(text: bytes, sa: SuffixArray) -> Factorization:
    """kkp3 without the stack: pending positions are chained through their
    own psv pointers. The suffix array is left untouched.
    """
    _require_match(text, sa)
    n = sa.n
    inter = np.empty(2 * n + 2, dtype=sa.dtype)
    inter[0] = inter[1] = 0
    top = int(_kernels.chain_pass(sa.positions, 0, inter))
    _kernels.chain_flush(top, inter)
    T = _text_view(text)
    out_pos = np.empty(n, dtype=sa.dtype)
    out_len = np.empty(n, dtype=sa.dtype)
    z, ncmp = _kernels.phrase_pass_inter(T, n, inter, out_pos, out_len)
    return _new_parse(out_pos, out_len, z, n, ncmp)


def kkp2s(text: bytes, sa: SuffixArray) -> tuple[Factorization, np.ndarray]:
    """Parse with a single n-word auxiliary array (2n words total).

    The array holds nsv values after the first pass; the second pass
    recovers each psv from it while parsing and, as a side effect, leaves
    the array equal to the full predecessor permutation on 0..n, which is
    returned. Destroys the suffix array.
    """
    _require_match(text, sa)
    n = sa.n
    phi = np.zeros(n + 1, dtype=sa.dtype)
    _kernels.kkp2s_stack_pass(sa.a, n, phi)
    T = _text_view(text)
    out_pos = np.empty(n, dtype=sa.dtype)
    out_len = np.empty(n, dtype=sa.dtype)
    z, ncmp = _kernels.kkp2s_phrase_pass(T, n, phi, out_pos, out_len)
    return _new_parse(out_pos, out_len, z, n, ncmp), phi


def kkp2n(text: bytes, sa: SuffixArray) -> tuple[Factorization, np.ndarray]:
    """Mirror of kkp2s storing psv values, no stack, suffix array intact.

    Returns the parse and the auxiliary array, which finishes as the
    inverse of the predecessor permutation on 0..n.
    """
    _require_match(text, sa)
    n = sa.n
    phiinv = np.zeros(n + 1, dtype=sa.dtype)
    _kernels.kkp2n_psv_pass(sa.positions, 0, phiinv)
    T = _text_view(text)
    out_pos = np.empty(n, dtype=sa.dtype)
    out_len = np.empty(n, dtype=sa.dtype)
    z, ncmp = _kernels.kkp2n_phrase_pass(T, n, phiinv, out_pos, out_len)
    return _new_parse(out_pos, out_len, z, n, ncmp), phiinv


def kkp2b(
    text: bytes, sa: SuffixArray, buffer_entries: int = DEFAULT_BUFFER_ENTRIES
) -> Factorization:
    """kkp2n with a fixed-size buffer holding the top of the pointer chain.

    The buffer discards its bottom half when full and refills half way
    from the psv pointers when empty; the parse is identical for every
    buffer size. Suffix array intact.
    """
    if buffer_entries < 2:
        raise ValueError(f"buffer_entries must be >= 2, got {buffer_entries}")
    _require_match(text, sa)
    n = sa.n
    phiinv = np.zeros(n + 1, dtype=sa.dtype)
    buf = np.zeros(buffer_entries, dtype=sa.dtype)
    _kernels.kkp2b_psv_pass(sa.positions, phiinv, buf, 1)
    T = _text_view(text)
    out_pos = np.empty(n, dtype=sa.dtype)
    out_len = np.empty(n, dtype=sa.dtype)
    z, ncmp = _kernels.kkp2n_phrase_pass(T, n, phiinv, out_pos, out_len)
    return _new_parse(out_pos, out_len, z, n, ncmp)


def factorize(
    text: bytes,
    sa: SuffixArray | None = None,
    algorithm: str = "kkp3",
    *,
    buffer_entries: int | None = None,
) -> Factorization:
    """Run a variant by name, building the suffix array when not given.

    Note kkp3 and kkp2s consume the suffix array they are handed.
    """
    if algorithm not in ALGORITHM_NAMES:
        raise ValueError(f"unknown algorithm {algorithm!r}; pick one of {ALGORITHM_NAMES}")
    if sa is None:
        sa = build_sa_fast(text)
    if algorithm == "kkp3":
        return kkp3(text, sa)
    if algorithm == "kkp3s":
        return kkp3_stackless(text, sa)
    if algorithm == "kkp2s":
        return kkp2s(text, sa)[0]
    if algorithm == "kkp2n":
        return kkp2n(text, sa)[0]
    return kkp2b(text, sa, buffer_entries or DEFAULT_BUFFER_ENTRIES)


def _stream_chunks(source, n: int, dtype, chunk_entries: int):
    """Yield numpy chunks from a one-pass position source, exactly n entries.

    Accepts either an object with read_positions(max_count) -> ndarray or
    any iterable of positions. Raises SaStreamError when the source runs
    short or yields extra entries.
    """
    reader = getattr(source, "read_positions", None)
    if reader is not None:
        seen = 0
        while seen < n:
            chunk = np.asarray(reader(min(chunk_entries, n - seen)))
            if chunk.size == 0:
                raise SaStreamError(f"stream ended after {seen} of {n} entries")
            seen += chunk.size
            if seen > n:
                raise SaStreamError(f"stream yields more than {n} entries")
            yield chunk.astype(dtype, copy=False)
        if np.asarray(reader(1)).size:
            raise SaStreamError(f"stream yields more than {n} entries")
        return
    it = iter(source)
    seen = 0
    while seen < n:
        chunk = np.fromiter(
            itertools.islice(it, min(chunk_entries, n - seen)), dtype=dtype
        )
        if chunk.size == 0:
            raise SaStreamError(f"stream ended after {seen} of {n} entries")
        seen += chunk.size
        yield chunk
    for _ in it:
        raise SaStreamError(f"stream yields more than {n} entries")


def factorize_streaming(
    text: bytes,
    sa_stream,
    algorithm: str = "kkp2n",
    *,
    buffer_entries: int = DEFAULT_BUFFER_ENTRIES,
    chunk_entries: int = _STREAM_CHUNK,
) -> Factorization:
    """Parse with the suffix array arriving as a one-pass stream.

    `sa_stream` must yield sa[1..n] in order, once; every entry is read
    exactly one time (the source may be a plain iterable or expose
    read_positions(max_count) for block reads). Only the variants that
    never write the suffix array are available: kkp3s, kkp2n, kkp2b.
    """
    if algorithm == "kkp3_stackless":
        algorithm = "kkp3s"
    if algorithm not in STREAMABLE:
        raise ValueError(
            f"algorithm {algorithm!r} cannot stream; it needs the suffix array "
            f"in memory (streamable: {STREAMABLE})"
        )
    n = len(text)
    dtype = dtype_for_length(n)
    T = _text_view(text)
    out_pos = np.empty(n, dtype=dtype)
    out_len = np.empty(n, dtype=dtype)

    def checked(chunk):
        if chunk.size and (int(chunk.min()) < 1 or int(chunk.max()) > n):
            raise SaStreamError("stream entry out of range 1..n")
        return chunk

    if algorithm == "kkp3s":
        inter = np.empty(2 * n + 2, dtype=dtype)
        inter[0] = inter[1] = 0
        top = 0
        for chunk in _stream_chunks(sa_stream, n, dtype, chunk_entries):
            top = int(_kernels.chain_pass(checked(chunk), top, inter))
        _kernels.chain_flush(top, inter)
        z, ncmp = _kernels.phrase_pass_inter(T, n, inter, out_pos, out_len)
        return _new_parse(out_pos, out_len, z, n, ncmp)

    phiinv = np.zeros(n + 1, dtype=dtype)
    if algorithm == "kkp2n":
        top = 0
        for chunk in _stream_chunks(sa_stream, n, dtype, chunk_entries):
            top = int(_kernels.kkp2n_psv_pass(checked(chunk), top, phiinv))
        z, ncmp = _kernels.kkp2n_phrase_pass(T, n, phiinv, out_pos, out_len)
        return _new_parse(out_pos, out_len, z, n, ncmp)

    if buffer_entries < 2:
        raise ValueError(f"buffer_entries must be >= 2, got {buffer_entries}")
    buf = np.zeros(buffer_entries, dtype=dtype)
    cnt = 1
    for chunk in _stream_chunks(sa_stream, n, dtype, chunk_entries):
        cnt = _kernels.kkp2b_psv_pass(checked(chunk), phiinv, buf, cnt)
    z, ncmp = _kernels.kkp2n_phrase_pass(T, n, phiinv, out_pos, out_len)
    return _new_parse(out_pos, out_len, z, n, ncmp)
