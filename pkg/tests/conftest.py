import sys
from pathlib import Path

import pytest

import corridor_det
from corridor_det.formats import (
    arrangement_from_json,
    corridors_from_json,
    graph_from_json,
    load_json,
    system_from_json,
)

FIXTURES = Path(corridor_det.__file__).parent / "fixtures"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture
def expr_graph():
    return graph_from_json(load_json(FIXTURES / "expr_graph.json"))


@pytest.fixture
def expr_corridor():
    return corridors_from_json(load_json(FIXTURES / "expr_corridor.json"))[0]


@pytest.fixture
def exdi_graph():
    return graph_from_json(load_json(FIXTURES / "exdi_graph.json"))


@pytest.fixture
def final_system():
    return system_from_json(load_json(FIXTURES / "final_example_system.json"))


@pytest.fixture
def arrangement():
    def load(name):
        return arrangement_from_json(load_json(FIXTURES / f"{name}.json"))

    return load


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
