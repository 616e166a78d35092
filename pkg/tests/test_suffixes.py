import itertools
import random

import numpy as np
import pytest

from lzkkp import (
    SuffixArray,
    build_isa,
    build_phi,
    build_sa_fast,
    build_sa_naive,
    validate_sa,
)
from helpers import WORKED_EXAMPLE, random_text


def suffixes_sorted(text, sa) -> bool:
    pos = sa.positions.tolist()
    return all(text[pos[k] - 1 :] < text[pos[k + 1] - 1 :] for k in range(len(pos) - 1))


def test_naive_small_cases():
    assert build_sa_naive(b"aaa").positions.tolist() == [3, 2, 1]
    assert build_sa_naive(b"").positions.tolist() == []
    sa = build_sa_naive(WORKED_EXAMPLE)
    assert sorted(sa.positions.tolist()) == list(range(1, 11))
    assert suffixes_sorted(WORKED_EXAMPLE, sa)


def test_fast_equals_naive_exhaustive_binary():
    for n in range(0, 11):
        for tup in itertools.product(b"ab", repeat=n):
            t = bytes(tup)
            assert np.array_equal(
                build_sa_fast(t).positions, build_sa_naive(t).positions
            ), t


def test_fast_equals_naive_random():
    rng = random.Random(4242)
    lengths = [rng.randint(0, 4096) if rng.random() < 0.2 else rng.randint(0, 300)
               for _ in range(1000)]
    lengths[:3] = [4096, 4096, 4095]  # pin a few at the top of the range
    for n in lengths:
        sigma = rng.choice([1, 2, 4, 26, 256])
        t = random_text(rng, n, sigma)
        assert np.array_equal(
            build_sa_fast(t).positions, build_sa_naive(t).positions
        ), (n, sigma)


def test_fast_on_alternating_strings():
    for k in (1, 2, 5, 64, 1000):
        t = b"ab" * k
        sa = build_sa_fast(t)
        assert np.array_equal(sa.positions, build_sa_naive(t).positions)
        # suffixes starting with 'a' (odd positions) sort before the rest
        half = sa.positions[: k]
        assert (half % 2 == 1).all()


def test_fast_int64_entries():
    t = WORKED_EXAMPLE
    sa = build_sa_fast(t, dtype=np.int64)
    assert sa.dtype == np.int64
    assert np.array_equal(sa.positions, build_sa_naive(t).positions)


def test_build_isa_examples():
    assert build_isa(SuffixArray.from_positions([3, 2, 1]))[1:].tolist() == [3, 2, 1]
    assert build_isa(SuffixArray.from_positions([2, 3, 1]))[1:].tolist() == [3, 1, 2]


def test_build_isa_inverts_random_permutations():
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = int(rng.integers(0, 500))
        perm = rng.permutation(n) + 1
        sa = SuffixArray.from_positions(perm.astype(np.int32))
        isa = build_isa(sa)
        for k in range(1, n + 1):
            assert isa[sa.positions[k - 1]] == k


def test_build_isa_rejects_non_permutation():
    with pytest.raises(ValueError):
        build_isa(SuffixArray.from_positions([1, 1, 3]))
    with pytest.raises(ValueError):
        build_isa(SuffixArray.from_positions([0, 1]))


def test_build_phi_single_char():
    assert build_phi(SuffixArray.from_positions([1])).tolist() == [1, 0]


def test_build_phi_is_unicyclic():
    rng = random.Random(11)
    for _ in range(30):
        t = random_text(rng, rng.randint(1, 400), rng.choice([1, 2, 26]))
        sa = build_sa_fast(t)
        phi = build_phi(sa)
        n = len(t)
        seen = set()
        x = 0
        for _ in range(n + 1):
            assert x not in seen
            seen.add(x)
            x = int(phi[x])
        assert x == 0 and len(seen) == n + 1


def test_phi_walk_descends_lexicographically():
    rng = random.Random(12)
    for _ in range(10):
        t = random_text(rng, rng.randint(1, 200), 4)
        sa = build_sa_fast(t)
        phi = build_phi(sa)
        walk = []
        x = int(phi[0])
        while x != 0:
            walk.append(x)
            x = int(phi[x])
        assert walk == sa.positions[::-1].tolist()


def test_phi_of_worked_example_single_cycle():
    phi = build_phi(build_sa_fast(WORKED_EXAMPLE))
    x, steps = 0, 0
    while True:
        x = int(phi[x])
        steps += 1
        if x == 0:
            break
    assert steps == len(WORKED_EXAMPLE) + 1


def test_validate_sa_accepts_valid_pairs():
    rng = random.Random(13)
    for _ in range(20):
        t = random_text(rng, rng.randint(0, 300), rng.choice([1, 4, 256]))
        assert validate_sa(t, build_sa_fast(t)) is None


def test_validate_sa_flags_duplicates():
    t = b"abc"
    sa = SuffixArray.from_positions([3, 3, 2])
    diag = validate_sa(t, sa)
    assert diag is not None and "not a permutation" in diag


def test_validate_sa_flags_swapped_entries():
    rng = random.Random(14)
    t = random_text(rng, 64, 4)
    sa = build_sa_fast(t)
    pos = sa.positions
    pos[10], pos[11] = int(pos[11]), int(pos[10])
    diag = validate_sa(t, sa)
    assert diag is not None and "order violated" in diag


def test_validate_sa_flags_length_mismatch():
    assert validate_sa(b"ab", SuffixArray.from_positions([1])) is not None


def test_validate_sa_sampled_mode_large_input():
    rng = np.random.default_rng(5)
    t = rng.integers(0, 256, (1 << 20) + 10, dtype=np.uint8).tobytes()
    sa = build_sa_fast(t)
    assert validate_sa(t, sa) is None
    pos = sa.positions
    pos[:] = pos[::-1].copy()  # grossly corrupt
    assert validate_sa(t, sa) is not None


def test_sentinel_slots_reserved_and_writable():
    sa = build_sa_fast(WORKED_EXAMPLE)
    assert sa.a.size == len(WORKED_EXAMPLE) + 2
    sa.a[0] = 0
    sa.a[-1] = 0
    assert sa.positions.tolist() == build_sa_naive(WORKED_EXAMPLE).positions.tolist()
