import pytest

from diagram_forge.builtins import load_category
from diagram_forge.fincat import CategorySpec, build_category

E_DOC = {
    "objects": [{"name": "x", "degree": 0}, {"name": "y", "degree": 1}, {"name": "z", "degree": 2}],
    "generators": [
        {"name": "u", "src": "y", "dst": "x"},
        {"name": "v", "src": "y", "dst": "x"},
        {"name": "w", "src": "z", "dst": "y"},
    ],
    "relations": [[["u", "w"], ["v", "w"]]],
}


@pytest.fixture(scope="session")
def E():
    return build_category(CategorySpec.from_dict(E_DOC), 4, name="E")


@pytest.fixture(scope="session")
def terminal():
    return load_category("terminal")


@pytest.fixture(scope="session")
def linear():
    return load_category("linear")


@pytest.fixture(scope="session")
def parallel():
    return load_category("parallel")


@pytest.fixture(scope="session")
def arrow():
    return load_category("arrow")


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module is not None and module.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(module.RESULTS):
            terminalreporter.write_line(line)
