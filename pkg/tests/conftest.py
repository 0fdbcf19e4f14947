import pytest

# filled by tests/test_acceptance.py: (criterion number, passed, detail)
ACCEPTANCE = []


@pytest.fixture
def acceptance():
    def record(number, passed, detail=""):
        line = f"ACCEPTANCE {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        print(line)
        ACCEPTANCE.append((number, passed, line))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, _, line in sorted(ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(line)
