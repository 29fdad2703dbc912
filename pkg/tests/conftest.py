import pytest

from mrdcensus.gfield import build_extension, build_field


def pytest_addoption(parser):
    parser.addoption("--long", action="store_true", default=False, help="run slow exhaustive checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long"):
        return
    skip = pytest.mark.skip(reason="needs --long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


_FIELDS = {}


def field(q):
    if q not in _FIELDS:
        _FIELDS[q] = build_field(q)
    return _FIELDS[q]


_EXTS = {}


def ext(q):
    if q not in _EXTS:
        _EXTS[q] = build_extension(field(q))
    return _EXTS[q]


@pytest.fixture(scope="session")
def F2():
    return field(2)


@pytest.fixture(scope="session")
def F3():
    return field(3)


@pytest.fixture(scope="session")
def E2():
    return ext(2)


@pytest.fixture(scope="session")
def E3():
    return ext(3)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
