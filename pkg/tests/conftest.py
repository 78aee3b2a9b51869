from collections import OrderedDict

# criterion number -> list of (check name, passed, detail)
ACCEPTANCE_RESULTS: "OrderedDict[int, list]" = OrderedDict()


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        checks = ACCEPTANCE_RESULTS[number]
        verdict = "PASS" if all(ok for _, ok, _ in checks) else "FAIL"
        detail = "; ".join(f"{name}: {'ok' if ok else 'FAILED'} ({info})" for name, ok, info in checks)
        terminalreporter.write_line(f"criterion {number:2d}: {verdict} -- {detail}")
