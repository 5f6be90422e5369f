import pytest

_ACCEPTANCE: dict[str, list[str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when != "call" or "test_acceptance" not in str(item.fspath):
        return
    doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
    _ACCEPTANCE.setdefault(doc, []).append(report.outcome)


def _criterion_number(doc: str) -> int:
    try:
        return int(doc.split(":")[0].split()[-1])
    except (ValueError, IndexError):
        return 0


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for doc in sorted(_ACCEPTANCE, key=_criterion_number):
        outcomes = _ACCEPTANCE[doc]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"[{status}] {doc}")
