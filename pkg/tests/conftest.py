import pytest


def pytest_addoption(parser):
    parser.addoption("--extended", action="store_true", default=False, help="run hours-long searches and scans")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--extended"):
        return
    skip = pytest.mark.skip(reason="needs --extended")
    for item in items:
        if "extended" in item.keywords:
            item.add_marker(skip)


CRITERIA: dict[int, tuple[str, str]] = {}


def record(number: int, name: str, passed: bool) -> None:
    line = f"criterion {number} ({name}): {'PASS' if passed else 'FAIL'}"
    CRITERIA[number] = (name, "PASS" if passed else "FAIL")
    print(line)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        name, verdict = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number} ({name}): {verdict}")
