import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tsnet.io import write_landings_csv  # noqa: E402
from tsnet.synth import generate_landings  # noqa: E402


@pytest.fixture(scope="session")
def synthetic():
    return generate_landings(seed=0)


@pytest.fixture(scope="session")
def landings_csv(tmp_path_factory, synthetic):
    path = tmp_path_factory.mktemp("data") / "landings.csv"
    write_landings_csv(synthetic.records, path)
    return path


_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line; the summary prints them after the run."""

    def record(number: int, ok: bool, detail: str):
        _ACCEPTANCE[number] = (bool(ok), detail)
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
