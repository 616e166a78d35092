"""Command-line front end and the on-disk formats.

Commands: factorize, stats, verify, bench. Exit codes: 0 success, 1
verification failure, 2 I/O or format errors.

Suffix array file: 8-byte magic, 1-byte entry width (4 or 8), 8-byte
little-endian n, then n little-endian entries holding 1-based positions.
Factorization file: same header shape with its own magic and n = decoded
text length, then per-factor records (tag 0 + literal byte, or tag 1 +
two width-byte little-endian integers pos, len).
Text factor format: one factor per line, a copy as "pos len", a literal
as the byte's printable form (or \\xNN) followed by " 0".
"""

from __future__ import annotations

import argparse
import resource
import statistics
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _kernels, kkp, textmodel
from .suffixes import SuffixArray, build_sa_fast, dtype_for_length
from .textmodel import Factorization, format_n_over_z

SA_MAGIC = b"KKPSA\x01\x00\x00"
LZ_MAGIC = b"KKPLZ\x01\x00\x00"
_HEADER_LEN = len(SA_MAGIC) + 1 + 8  # magic, width byte, n


class FormatError(ValueError):
    """A file does not follow one of the on-disk formats."""


# ---------------------------------------------------------------------------
# suffix array files


def _pack_header(magic: bytes, width: int, n: int) -> bytes:
    return magic + bytes([width]) + n.to_bytes(8, "little")


def _parse_header(raw: bytes, magic: bytes, what: str) -> tuple[int, int]:
    if len(raw) < _HEADER_LEN or raw[: len(magic)] != magic:
        raise FormatError(f"not a {what} file (bad magic)")
    width = raw[len(magic)]
    if width not in (4, 8):
        raise FormatError(f"unsupported entry width {width}")
    n = int.from_bytes(raw[len(magic) + 1 : _HEADER_LEN], "little")
    return width, n


def save_sa(path, sa: SuffixArray) -> None:
    width = sa.dtype.itemsize
    wire = np.dtype(f"<i{width}")
    with open(path, "wb") as fh:
        fh.write(_pack_header(SA_MAGIC, width, sa.n))
        fh.write(sa.positions.astype(wire, copy=False).tobytes())


def load_sa(path) -> SuffixArray:
    with open(path, "rb") as fh:
        width, n = _parse_header(fh.read(_HEADER_LEN), SA_MAGIC, "suffix array")
        payload = fh.read()
    if len(payload) != width * n:
        raise FormatError(
            f"suffix array file holds {len(payload)} payload bytes, expected {width * n}"
        )
    entries = np.frombuffer(payload, dtype=f"<i{width}").astype(
        np.int32 if width == 4 else np.int64, copy=False
    )
    return SuffixArray.from_positions(entries)


class SaFileStream:
    """One-pass block reader over a suffix array file (no rewind)."""

    def __init__(self, path):
        self._fh = open(path, "rb")
        try:
            self.width, self.n = _parse_header(
                self._fh.read(_HEADER_LEN), SA_MAGIC, "suffix array"
            )
        except Exception:
            self._fh.close()
            raise
        self._dtype = np.dtype(f"<i{self.width}")
        self._remaining = self.n

    def read_positions(self, max_count: int) -> np.ndarray:
        count = min(max_count, self._remaining)
        if count <= 0:
            return np.empty(0, dtype=self._dtype)
        raw = self._fh.read(count * self.width)
        got = len(raw) // self.width
        self._remaining -= got
        return np.frombuffer(raw[: got * self.width], dtype=self._dtype)

    def close(self) -> None:
        self._fh.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


# ---------------------------------------------------------------------------
# factorization files


def escape_byte(b: int) -> str:
    if 33 <= b <= 126 and b != 0x5C:
        return chr(b)
    return f"\\x{b:02x}"


def unescape_byte(tok: str) -> int:
    if len(tok) == 1 and 33 <= ord(tok) <= 126 and tok != "\\":
        return ord(tok)
    if len(tok) == 4 and tok.startswith("\\x"):
        try:
            return int(tok[2:], 16)
        except ValueError as e:
            raise FormatError(f"bad literal token {tok!r}") from e
    raise FormatError(f"bad literal token {tok!r}")


def factorization_to_text(f: Factorization) -> str:
    lines = []
    pos = f.pos
    lengths = f.lengths
    for k in range(len(f)):
        ell = int(lengths[k])
        if ell == 0:
            lines.append(f"{escape_byte(int(pos[k]))} 0")
        else:
            lines.append(f"{int(pos[k])} {ell}")
    return "\n".join(lines) + ("\n" if lines else "")


def factorization_from_text(s: str) -> Factorization:
    pos = []
    lengths = []
    covered = 0
    for lineno, line in enumerate(s.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected two fields, got {line!r}")
        try:
            ell = int(parts[1])
        except ValueError as e:
            raise FormatError(f"line {lineno}: bad length {parts[1]!r}") from e
        if ell == 0:
            pos.append(unescape_byte(parts[0]))
            lengths.append(0)
            covered += 1
        elif ell > 0:
            try:
                p = int(parts[0])
            except ValueError as e:
                raise FormatError(f"line {lineno}: bad position {parts[0]!r}") from e
            pos.append(p)
            lengths.append(ell)
            covered += ell
        else:
            raise FormatError(f"line {lineno}: negative length")
    return Factorization.from_arrays(
        np.asarray(pos, dtype=np.int64), np.asarray(lengths, dtype=np.int64), covered
    )


def write_binary_factorization(f: Factorization, fh) -> None:
    width = 4 if f.source_len < 2**31 else 8
    fh.write(_pack_header(LZ_MAGIC, width, f.source_len))
    lit = f.lengths == 0
    rec_len = np.where(lit, 2, 1 + 2 * width)
    offs = np.zeros(len(f), dtype=np.int64)
    if len(f) > 1:
        np.cumsum(rec_len[:-1], out=offs[1:])
    buf = np.zeros(int(rec_len.sum()), dtype=np.uint8)
    buf[offs] = np.where(lit, 0, 1)
    buf[offs[lit] + 1] = f.pos[lit]
    cop = offs[~lit]
    cp = f.pos[~lit].astype(np.uint64)
    cl = f.lengths[~lit].astype(np.uint64)
    for k in range(width):
        buf[cop + 1 + k] = (cp >> np.uint64(8 * k)).astype(np.uint8)
        buf[cop + 1 + width + k] = (cl >> np.uint64(8 * k)).astype(np.uint8)
    fh.write(buf.tobytes())


def read_binary_factorization(fh) -> Factorization:
    width, n = _parse_header(fh.read(_HEADER_LEN), LZ_MAGIC, "factorization")
    payload = np.frombuffer(fh.read(), dtype=np.uint8)
    cap = payload.size // 2 + 1
    pos = np.empty(cap, dtype=np.int64)
    lengths = np.empty(cap, dtype=np.int64)
    z, err = _kernels.scan_binary_records(payload, width, pos, lengths)
    if err >= 0:
        raise FormatError(f"corrupt factor record at byte {err}")
    return Factorization.from_arrays(pos[:z].copy(), lengths[:z].copy(), n)


# ---------------------------------------------------------------------------
# run configuration and commands


@dataclass
class RunConfig:
    """Everything one command invocation needs."""

    inputs: list = field(default_factory=list)
    algorithm: str = "kkp3"
    buffer_entries: int | None = None
    sa_path: Path | None = None
    sa_stream: bool = False
    output_path: Path | None = None
    output_format: str = "text"  # none | text | binary
    mode: str = "factorize"
    repetitions: int = 5

    def validate(self) -> None:
        if self.algorithm not in kkp.ALGORITHM_NAMES:
            raise FormatError(f"unknown algorithm {self.algorithm!r}")
        if self.sa_stream and self.sa_path is None:
            raise FormatError("--sa-stream needs --sa FILE to stream from")
        if self.sa_stream and self.algorithm not in kkp.STREAMABLE:
            raise FormatError(
                f"--sa-stream requires an algorithm that leaves the suffix array "
                f"untouched ({', '.join(kkp.STREAMABLE)}), not {self.algorithm}"
            )
        if self.buffer_entries is not None and self.algorithm != "kkp2b":
            raise FormatError("--buffer only applies to kkp2b")
        if self.buffer_entries is not None and self.buffer_entries < 2:
            raise FormatError("--buffer must be at least 2 entries")
        if self.repetitions < 1:
            raise FormatError("--reps must be at least 1")

    @property
    def input_path(self) -> Path:
        if len(self.inputs) != 1:
            raise FormatError(f"{self.mode} takes exactly one --input")
        return Path(self.inputs[0])


def _read_input(path) -> bytes:
    return Path(path).read_bytes()


def _peak_mem_mib() -> float:
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024.0


def _acquire_sa(cfg: RunConfig, text: bytes) -> SuffixArray:
    if cfg.sa_path is not None:
        sa = load_sa(cfg.sa_path)
        if sa.n != len(text):
            raise FormatError(
                f"suffix array file has n={sa.n}, input has {len(text)} bytes"
            )
        return sa
    return build_sa_fast(text)


def _run_algorithm(cfg: RunConfig, text: bytes) -> tuple[Factorization, float]:
    buffer_entries = cfg.buffer_entries or kkp.DEFAULT_BUFFER_ENTRIES
    if cfg.sa_stream:
        with SaFileStream(cfg.sa_path) as stream:
            if stream.n != len(text):
                raise FormatError(
                    f"suffix array file has n={stream.n}, input has {len(text)} bytes"
                )
            t0 = time.perf_counter()
            fact = kkp.factorize_streaming(
                text, stream, cfg.algorithm, buffer_entries=buffer_entries
            )
            return fact, time.perf_counter() - t0
    sa = _acquire_sa(cfg, text)
    t0 = time.perf_counter()
    fact = kkp.factorize(text, sa, cfg.algorithm, buffer_entries=buffer_entries)
    return fact, time.perf_counter() - t0


def _write_output(cfg: RunConfig, fact: Factorization) -> None:
    if cfg.output_path is None or cfg.output_format == "none":
        return
    if cfg.output_format == "text":
        Path(cfg.output_path).write_text(factorization_to_text(fact))
    else:
        with open(cfg.output_path, "wb") as fh:
            write_binary_factorization(fact, fh)


def run_factorize(cfg: RunConfig, out=sys.stdout) -> int:
    text = _read_input(cfg.input_path)
    fact, elapsed = _run_algorithm(cfg, text)
    _write_output(cfg, fact)
    st = textmodel.stats(fact)
    print(f"z={st.z}", file=out)
    print(f"n/z={format_n_over_z(st.n_over_z)}", file=out)
    print(f"time={elapsed:.4f}s", file=out)
    print(f"mem={_peak_mem_mib():.1f}MiB (measured)", file=out)
    return 0


def run_verify(cfg: RunConfig, out=sys.stdout) -> int:
    text = _read_input(cfg.input_path)
    fact, _ = _run_algorithm(cfg, text)
    try:
        decoded = textmodel.decode(fact)
    except textmodel.MalformedFactorizationError as e:
        print(f"FAIL: {e}", file=out)
        return 1
    if decoded != text:
        k = 0
        for k, (a, b) in enumerate(zip(decoded, text)):
            if a != b:
                break
        print(f"FAIL: decoded text differs from input at byte {k}", file=out)
        return 1
    print("OK", file=out)
    return 0


def run_bench(cfg: RunConfig, out=sys.stdout, timer=time.perf_counter) -> int:
    text = _read_input(cfg.input_path)
    n = len(text)
    sa = _acquire_sa(cfg, text)
    destructive = cfg.algorithm in ("kkp3", "kkp2s")
    buffer_entries = cfg.buffer_entries or kkp.DEFAULT_BUFFER_ENTRIES
    # warm the compiled kernels so rep 1 is not charged for JIT cache loads
    warm = b"warmup\x00warmup" * 8
    kkp.factorize(warm, build_sa_fast(warm), cfg.algorithm, buffer_entries=buffer_entries)
    times = []
    z = None
    for _ in range(cfg.repetitions):
        work = sa.copy() if destructive else sa
        t0 = timer()
        fact = kkp.factorize(text, work, cfg.algorithm, buffer_entries=buffer_entries)
        times.append(timer() - t0)
        z = len(fact)
    median = statistics.median(times)
    per_gib = median * (2**30 / n) if n else float("nan")
    buf_note = f" buffer={buffer_entries}" if cfg.algorithm == "kkp2b" else ""
    print(
        f"algo={cfg.algorithm} n={n} z={z}{buf_note} reps={cfg.repetitions}", file=out
    )
    print(f"median={median:.4f}s", file=out)
    print(f"s_per_gib={per_gib:.2f}", file=out)
    return 0


def run_corpus_stats(cfg: RunConfig, out=sys.stdout, err=sys.stderr) -> int:
    print(f"{'name':<28} {'n':>12} {'sigma':>5} {'z':>12} {'n/z':>8}", file=out)
    failed = False
    for raw in cfg.inputs:
        path = Path(raw)
        try:
            text = _read_input(path)
            n = len(text)
            if n == 0:
                print(f"{path.name:<28} {0:>12} {'-':>5} {'-':>12} {'-':>8}", file=out)
                continue
            sigma = len(set(text))
            fact = kkp.factorize(text, build_sa_fast(text), cfg.algorithm)
            st = textmodel.stats(fact)
            print(
                f"{path.name:<28} {n:>12} {sigma:>5} {st.z:>12} "
                f"{format_n_over_z(st.n_over_z):>8}",
                file=out,
            )
        except Exception as e:
            failed = True
            print(f"error: {path}: {e}", file=err)
    return 2 if failed else 0


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--algo",
        choices=list(kkp.ALGORITHM_NAMES),
        default="kkp3",
        help="factorization variant (default kkp3)",
    )
    common.add_argument(
        "--input",
        action="append",
        required=True,
        metavar="PATH",
        help="input file (stats accepts the flag repeatedly)",
    )
    common.add_argument("--sa", metavar="PATH", help="precomputed suffix array file")
    common.add_argument(
        "--sa-stream",
        action="store_true",
        help="stream the --sa file in one pass instead of loading it",
    )
    common.add_argument(
        "--buffer",
        type=int,
        metavar="ENTRIES",
        help="stack buffer entries for kkp2b (default 65536)",
    )

    parser = argparse.ArgumentParser(
        prog="lzkkp",
        description="Greedy longest-previous-factor parsing over suffix arrays",
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    p_fact = sub.add_parser("factorize", parents=[common], help="parse a file")
    p_fact.add_argument("--output", metavar="PATH", help="write the factor list here")
    p_fact.add_argument(
        "--format",
        choices=["none", "text", "binary"],
        default="text",
        help="factor list format (default text)",
    )

    sub.add_parser("stats", parents=[common], help="per-file n, sigma, z, n/z table")

    sub.add_parser("verify", parents=[common], help="parse, decode, compare")

    p_bench = sub.add_parser(
        "bench", parents=[common], help="time the algorithm, median of N reps"
    )
    p_bench.add_argument(
        "--reps", type=int, default=5, metavar="K", help="repetitions (default 5)"
    )
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        inputs=list(args.input),
        algorithm=args.algo,
        buffer_entries=args.buffer,
        sa_path=Path(args.sa) if args.sa else None,
        sa_stream=args.sa_stream,
        output_path=Path(args.output) if getattr(args, "output", None) else None,
        output_format=getattr(args, "format", "text"),
        mode=args.mode,
        repetitions=getattr(args, "reps", 5),
    )
    cfg.validate()
    return cfg


_COMMANDS = {
    "factorize": run_factorize,
    "stats": run_corpus_stats,
    "verify": run_verify,
    "bench": run_bench,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        return _COMMANDS[cfg.mode](cfg)
    except (OSError, FormatError, kkp.SaStreamError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
