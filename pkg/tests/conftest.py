"""Suite-wide fixtures plus a pass/fail line per acceptance criterion."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_acceptance_results: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call":
        _acceptance_results[name] = report.outcome.upper()
    elif report.when == "setup" and report.outcome in ("skipped", "failed"):
        _acceptance_results[name] = report.outcome.upper()


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_acceptance_results):
        outcome = _acceptance_results[name]
        word = {"PASSED": "PASS", "FAILED": "FAIL", "SKIPPED": "SKIP"}.get(
            outcome, outcome
        )
        terminalreporter.write_line(f"{name}: {word}")


@pytest.fixture(scope="session")
def real_file_64mib(tmp_path_factory) -> bytes:
    """At least 64 MiB of real data: installed Python sources, concatenated."""
    target = 1 << 26
    roots = [Path(p) for p in sys.path if p and Path(p).is_dir()]
    chunks = []
    total = 0
    seen = set()
    for root in roots:
        if total >= target:
            break
        for py in sorted(root.rglob("*.py")):
            if total >= target:
                break
            key = str(py)
            if key in seen:
                continue
            seen.add(key)
            try:
                data = py.read_bytes()
            except OSError:
                continue
            chunks.append(data)
            total += len(data)
    blob = b"".join(chunks)[:target]
    if len(blob) < target:
        pytest.skip("not enough installed source files to assemble 64 MiB")
    return blob
