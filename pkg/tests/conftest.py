import json
import os
from pathlib import Path

import pytest

from eitffkit.drackn import DracknAdjacency, mathon_drackn

DATA = Path(__file__).parent / "data"
GARDINER_ENV = "EITFFKIT_GARDINER"

_criteria: list[str] = []


def gardiner_path():
    path = os.environ.get(GARDINER_ENV)
    path = Path(path) if path else DATA / "gardiner_7_6_1.json"
    return path if path.exists() else None


@pytest.fixture(scope="session")
def gardiner():
    path = gardiner_path()
    if path is None:
        pytest.skip("no (7,6,1) cover file supplied")
    return DracknAdjacency.from_json(json.loads(path.read_text()))


@pytest.fixture(scope="session")
def mathon():
    cache = {}

    def get(k):
        if k not in cache:
            cache[k] = mathon_drackn(k)
        return cache[k]

    return get


@pytest.fixture
def criterion_log():
    return _criteria


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)
