"""Value types for byte texts and their greedy left-to-right parses.

Texts are plain ``bytes``; positions are 1-based in the public API, so a
text X of length n has symbols X[1..n] and position 0 acts as an
"undefined" sentinel. A parse is an ordered list of factors that tile
the text: literals (a single byte with no earlier occurrence) and copies
(pos, len) referring strictly before their own start, possibly
overlapping it.

Everything here is an immutable value once built; all operations are
pure functions, safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

import numpy as np

from . import _kernels


class MalformedFactorizationError(ValueError):
    """Raised when a phrase list cannot be decoded back into a text."""


@dataclass(frozen=True)
class Literal:
    """A phrase of length 0: one byte emitted verbatim."""

    symbol: int

    def __post_init__(self):
        if not 0 <= self.symbol <= 255:
            raise ValueError(f"literal symbol {self.symbol} outside byte range")


@dataclass(frozen=True)
class Copy:
    """A phrase copied from an earlier position; may overlap its own start."""

    pos: int
    length: int

    def __post_init__(self):
        if self.pos < 1:
            raise ValueError(f"copy source {self.pos} must be a position >= 1")
        if self.length < 1:
            raise ValueError(f"copy length {self.length} must be >= 1")


Factor = Union[Literal, Copy]


class Factorization:
    """An ordered factor list tiling a text of length ``source_len``.

    Factors are stored compactly as parallel position/length arrays;
    length 0 marks a literal whose byte value sits in the position slot.
    ``comparisons`` is optional producer metadata (byte comparisons spent
    computing match lengths) and never takes part in equality.
    """

    __slots__ = ("pos", "lengths", "source_len", "comparisons")

    def __init__(self, factors: Iterable[Factor] = (), source_len: int = 0):
        pos = []
        lengths = []
        for f in factors:
            if isinstance(f, Literal):
                pos.append(f.symbol)
                lengths.append(0)
            elif isinstance(f, Copy):
                pos.append(f.pos)
                lengths.append(f.length)
            else:
                raise TypeError(f"not a factor: {f!r}")
        self.pos = np.asarray(pos, dtype=np.int64)
        self.lengths = np.asarray(lengths, dtype=np.int64)
        self.source_len = int(source_len)
        self.comparisons = None

    @classmethod
    def from_arrays(cls, pos, lengths, source_len, comparisons=None) -> "Factorization":
        """Wrap existing arrays without copying (fast path for algorithms)."""
        f = cls.__new__(cls)
        f.pos = np.asarray(pos)
        f.lengths = np.asarray(lengths)
        if f.pos.shape != f.lengths.shape or f.pos.ndim != 1:
            raise ValueError("pos and lengths must be 1-d arrays of equal size")
        f.source_len = int(source_len)
        f.comparisons = comparisons
        return f

    def __len__(self) -> int:
        return self.pos.size

    def __getitem__(self, k: int) -> Factor:
        ell = int(self.lengths[k])
        if ell == 0:
            return Literal(int(self.pos[k]))
        return Copy(int(self.pos[k]), ell)

    def __iter__(self) -> Iterator[Factor]:
        for k in range(self.pos.size):
            yield self[k]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Factorization):
            return NotImplemented
        return (
            self.source_len == other.source_len
            and np.array_equal(self.pos, other.pos)
            and np.array_equal(self.lengths, other.lengths)
        )

    def __repr__(self) -> str:
        return f"Factorization(z={len(self)}, source_len={self.source_len})"

    @property
    def factors(self) -> list:
        return list(self)

    @property
    def consumed(self) -> np.ndarray:
        """Bytes of text each factor covers: max(length, 1)."""
        return np.where(self.lengths == 0, 1, self.lengths)

    @property
    def starts(self) -> np.ndarray:
        """1-based starting position of each phrase."""
        c = self.consumed
        out = np.empty(c.size, dtype=np.int64)
        if c.size:
            out[0] = 1
            np.cumsum(c[:-1], out=out[1:])
            out[1:] += 1
        return out


@dataclass(frozen=True)
class ParseStats:
    z: int
    n_over_z: float | None


def lcp(text: bytes, i: int, j: int) -> int:
    """Length of the longest common prefix of suffixes i and j (1-based).

    Position 0 is the sentinel "no suffix" and yields 0.
    """
    n = len(text)
    if not 0 <= i <= n or not 0 <= j <= n:
        raise ValueError(f"positions must lie in [0..{n}], got ({i}, {j})")
    if i == 0 or j == 0:
        return 0
    k = 0
    while i + k <= n and j + k <= n and text[i - 1 + k] == text[j - 1 + k]:
        k += 1
    return k


def decode(f: Factorization) -> bytes:
    """Rebuild the text a factorization encodes, left to right.

    Copies are replayed byte by byte from the already-decoded output, so
    self-overlapping sources work. Raises MalformedFactorizationError if
    a copy points at or past its own start or the factors do not tile
    source_len exactly.
    """
    out = np.empty(f.source_len, dtype=np.uint8)
    status, k = _kernels.decode_pass(f.pos, f.lengths, f.source_len, out)
    if status == 1:
        raise MalformedFactorizationError(
            f"factor {k} overflows the declared source length {f.source_len}"
        )
    if status == 2:
        raise MalformedFactorizationError(
            f"factor {k} copies from position {int(f.pos[k])}, "
            "at or past its own start"
        )
    if status == 3:
        raise MalformedFactorizationError(
            f"factors decode to fewer than source_len={f.source_len} bytes"
        )
    return out.tobytes()


def stats(f: Factorization) -> ParseStats:
    """Phrase count and mean phrase length (None when the text is empty)."""
    z = len(f)
    if z == 0:
        return ParseStats(z=0, n_over_z=None)
    return ParseStats(z=z, n_over_z=f.source_len / z)


def format_n_over_z(value: float | None) -> str:
    """Two-decimal rendering used by the CLI; '-' when undefined."""
    return "-" if value is None else f"{value:.2f}"


def validate_factorization(text: bytes, f: Factorization) -> str | None:
    """Check that `f` is a valid tiling parse of `text`; None when it is.

    Verifies tiling (covered bytes equal both source_len and len(text)),
    literal bytes, and that every copy names a genuine earlier occurrence.
    Returns a diagnostic string for the first violation found.
    """
    n = len(text)
    if f.source_len != n:
        return f"source_len {f.source_len} != text length {n}"
    covered = int(f.consumed.sum()) if len(f) else 0
    if covered != n:
        return f"factors cover {covered} bytes, text has {n}"
    T = np.frombuffer(text, dtype=np.uint8)
    k = _kernels.first_invalid_factor(T, f.pos, f.lengths)
    if k >= 0:
        ell = int(f.lengths[k])
        kind = "literal" if ell == 0 else "copy"
        return f"{kind} factor {k} does not reproduce the text"
    return None
