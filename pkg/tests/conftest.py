import json
from pathlib import Path

import pytest

import riskbench
from riskbench import ProjectStore, generate_synthetic, load_registry

SAMPLE_REGISTRY = Path(riskbench.__file__).parent / "data" / "sample_registry.json"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def registry():
    return load_registry(SAMPLE_REGISTRY)


@pytest.fixture(scope="session")
def registry_doc():
    return json.loads(SAMPLE_REGISTRY.read_text(encoding="utf-8"))


@pytest.fixture
def store(tmp_path, registry):
    return ProjectStore(tmp_path / "store", registry)


@pytest.fixture(scope="session")
def pool(registry):
    """200 synthetic entities, fixed seed, shared across tests (read-only)."""
    return generate_synthetic(7, 200, registry)


def pytest_runtest_logreport(report):
    """One scorecard line per acceptance test."""
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if hasattr(report, "wasxfail"):
        word = "EXPECTED FAIL (documented)" if report.skipped else "UNEXPECTED PASS"
    elif report.passed:
        word = "PASS"
    elif report.failed:
        word = "FAIL"
    else:
        word = "SKIP"
    print(f"\nacceptance {name}: {word}", flush=True)
