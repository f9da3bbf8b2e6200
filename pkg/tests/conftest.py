"""Shared pytest wiring: one PASS/FAIL line per acceptance criterion."""


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    reporter = terminalreporter
    rows = []
    for outcome in ("passed", "failed", "error"):
        for report in reporter.stats.get(outcome, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance" in nodeid and "test_criterion" in nodeid:
                rows.append((nodeid.split("::")[-1], outcome))
    if not rows:
        return
    reporter.write_sep("=", "acceptance criteria")
    for name, outcome in sorted(rows):
        mark = "PASS" if outcome == "passed" else "FAIL"
        reporter.write_line(f"{mark}  {name}")
