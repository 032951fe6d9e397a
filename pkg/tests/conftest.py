"""Shared plumbing for the acceptance gate: criteria register their verdict
here and the summary block is echoed at the end of the run."""

_CRITERIA: dict[int, tuple[str, str]] = {}


def record_criterion(number: int, passed: bool, label: str) -> None:
    _CRITERIA[number] = ("PASS" if passed else "FAIL", label)
    print(f"[criterion {number:02d}] {'PASS' if passed else 'FAIL'} - {label}")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for n in sorted(_CRITERIA):
        status, label = _CRITERIA[n]
        terminalreporter.write_line(f"[criterion {n:02d}] {status} - {label}")
