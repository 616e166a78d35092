"""Greedy longest-previous-factor parsing over suffix arrays, linear time.

The parse of a byte string is computed from its suffix array in one
sequential pass via nearest-smaller-value candidates; five variants
trade working space against suffix array survival. Brute-force oracles,
a decoder, and a CLI with a benchmark harness round out the package.
"""

from .kkp import (
    ALGORITHM_NAMES,
    DEFAULT_BUFFER_ENTRIES,
    SaStreamError,
    SmallerValueArrays,
    factorize,
    factorize_streaming,
    kkp2b,
    kkp2n,
    kkp2s,
    kkp3,
    kkp3_stackless,
    lz_factor_step,
    nsv_psv_arrays,
)
from .oracles import brute_lpf, brute_lz, brute_nsv_psv
from .suffixes import (
    SuffixArray,
    build_isa,
    build_phi,
    build_sa_fast,
    build_sa_naive,
    validate_sa,
)
from .textmodel import (
    Copy,
    Factor,
    Factorization,
    Literal,
    MalformedFactorizationError,
    ParseStats,
    decode,
    lcp,
    stats,
    validate_factorization,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHM_NAMES",
    "DEFAULT_BUFFER_ENTRIES",
    "Copy",
    "Factor",
    "Factorization",
    "Literal",
    "MalformedFactorizationError",
    "ParseStats",
    "SaStreamError",
    "SmallerValueArrays",
    "SuffixArray",
    "brute_lpf",
    "brute_lz",
    "brute_nsv_psv",
    "build_isa",
    "build_phi",
    "build_sa_fast",
    "build_sa_naive",
    "decode",
    "factorize",
    "factorize_streaming",
    "kkp2b",
    "kkp2n",
    "kkp2s",
    "kkp3",
    "kkp3_stackless",
    "lcp",
    "lz_factor_step",
    "nsv_psv_arrays",
    "stats",
    "validate_factorization",
    "validate_sa",
]
