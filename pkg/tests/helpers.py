"""Shared corpus generators and comparison helpers for the test suite."""

import hashlib
import random

import numpy as np

from lzkkp import brute_lz, build_sa_fast, decode, validate_factorization

WORKED_EXAMPLE = b"zzzzzipzip"


def random_text(rng: random.Random, n: int, sigma: int) -> bytes:
    return bytes(rng.randrange(sigma) for _ in range(n))


def thue_morse(n: int) -> bytes:
    """First n symbols of the Thue-Morse sequence over {a, b}."""
    out = bytearray(n)
    for i in range(n):
        out[i] = ord("a") + (bin(i).count("1") & 1)
    return bytes(out)


def boundaries_match(a, b) -> bool:
    """Same phrase boundaries and lengths; sources may differ legally."""
    return (
        a.source_len == b.source_len
        and len(a) == len(b)
        and np.array_equal(a.starts, b.starts)
        and np.array_equal(a.lengths, b.lengths)
    )


def check_parse(text: bytes, fact) -> None:
    """Assert `fact` is a valid parse of `text` matching the brute oracle
    in boundaries and lengths, with every copy a genuine earlier match.
    """
    diag = validate_factorization(text, fact)
    assert diag is None, diag
    assert decode(fact) == text
    ref = brute_lz(text)
    assert boundaries_match(fact, ref), (
        f"parse differs from oracle on {text[:40]!r}..: "
        f"{fact.factors[:6]} vs {ref.factors[:6]}"
    )


def parse_digest(fact) -> str:
    h = hashlib.sha256()
    h.update(np.asarray(fact.pos, dtype="<i8").tobytes())
    h.update(np.asarray(fact.lengths, dtype="<i8").tobytes())
    h.update(str(fact.source_len).encode())
    return h.hexdigest()


def inter_digest(inter) -> str:
    return hashlib.sha256(np.asarray(inter, dtype="<i8").tobytes()).hexdigest()


def fresh_sa(text: bytes):
    return build_sa_fast(text)
