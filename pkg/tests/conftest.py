from __future__ import annotations

from hypothesis import HealthCheck, settings

from helpers import ACCEPTANCE

settings.register_profile(
    "exact",
    deadline=None,
    max_examples=40,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("exact")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, elapsed, budget = ACCEPTANCE[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number} {verdict}: {title} ({elapsed:.2f}s of {budget:.0f}s)")
