"""Regenerate oracle_fixtures.json: frozen digests of oracle output on a
seeded corpus. Run from the repository root:

    python tests/data/make_oracle_fixtures.py
"""

import hashlib
import json
import random
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from lzkkp import brute_lz, brute_nsv_psv, build_sa_fast  # noqa: E402
from helpers import inter_digest, parse_digest, random_text  # noqa: E402

SEED = 20250810
GRID = [
    (1, 64), (1, 1000),
    (2, 128), (2, 997), (2, 4096),
    (4, 512), (4, 2048),
    (26, 333), (26, 3000),
    (256, 100), (256, 1024), (256, 8192),
]


def main() -> None:
    rng = random.Random(SEED)
    cases = []
    for sigma, n in GRID:
        text = random_text(rng, n, sigma)
        fact = brute_lz(text)
        inter = brute_nsv_psv(build_sa_fast(text))
        cases.append(
            {
                "sigma": sigma,
                "length": n,
                "text_sha256": hashlib.sha256(text).hexdigest(),
                "z": len(fact),
                "parse_sha256": parse_digest(fact),
                "nsv_psv_sha256": inter_digest(inter),
            }
        )
    out = Path(__file__).parent / "oracle_fixtures.json"
    out.write_text(
        json.dumps({"seed": SEED, "cases": cases}, indent=2) + "\n"
    )
    print(f"wrote {out} ({len(cases)} cases)")


if __name__ == "__main__":
    main()
