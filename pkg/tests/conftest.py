"""Shared fixtures: the synthetic 10-item fixture collection and its index.

The fixture is generated once per session into a tmp directory; tests that
mutate session state get their own data directories.
"""
from __future__ import annotations

import pytest

from bricolage.collection import Collection, load_manifest_file
from bricolage.index import CollectionIndex, build_index
from bricolage.sample import write_sample_collection


@pytest.fixture(scope="session")
def sample_dir(tmp_path_factory):
    dest = tmp_path_factory.mktemp("sample")
    write_sample_collection(dest)
    return dest


@pytest.fixture(scope="session")
def manifest_path(sample_dir):
    return sample_dir / "manifest.json"


@pytest.fixture(scope="session")
def collection(manifest_path) -> Collection:
    return load_manifest_file(manifest_path)


@pytest.fixture(scope="session")
def index(collection) -> CollectionIndex:
    return build_index(collection)


_ACCEPTANCE_PREFIX = "tests/test_acceptance.py::"


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion at the end of the run."""
    lines = []
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if _ACCEPTANCE_PREFIX not in nodeid:
                continue
            name = nodeid.split("::", 1)[1]
            verdict = "PASS" if status == "passed" else "FAIL"
            lines.append((name, verdict))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, verdict in sorted(lines):
            terminalreporter.write_line(f"[{verdict}] {name}")
