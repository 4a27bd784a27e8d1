import pytest
from hypothesis import settings

settings.register_profile("thorough", max_examples=2000, deadline=None)
settings.register_profile("default", deadline=None)
settings.load_profile("default")

_criteria: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record an acceptance criterion; the verdict is printed in the summary."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        prev_ok, prev_detail = _criteria.get(label, (True, ""))
        _criteria[label] = (prev_ok and bool(ok), detail or prev_detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0][2:])):
        ok, detail = _criteria[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
