from __future__ import annotations


def pytest_runtest_logreport(report):
    """One visible PASS/FAIL/SKIP line per acceptance criterion."""
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    if report.passed:
        status = "PASS"
    elif report.skipped:
        status = "SKIP"
    else:
        status = "FAIL"
    name = report.nodeid.split("::")[-1]
    print(f"\n[ACCEPTANCE {status}] {name}", flush=True)
