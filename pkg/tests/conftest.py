import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repro",
    max_examples=60,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")

_ACCEPTANCE: dict[int, list[tuple[str, bool]]] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, label: str, ok: bool) -> None:
        _ACCEPTANCE.setdefault(number, []).append((label, ok))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        items = _ACCEPTANCE[number]
        failed = [label for label, ok in items if not ok]
        status = "PASS" if not failed else "FAIL"
        detail = f"{len(items) - len(failed)}/{len(items)} checks"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        terminalreporter.write_line(f"criterion {number}: {status} ({detail})")
