import pytest

# filled by test_acceptance.py: criterion number -> (passed, seconds, title)
ACCEPTANCE = {}


@pytest.fixture
def acceptance_record():
    return ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, secs, title = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {secs:7.2f}s  {title}")
