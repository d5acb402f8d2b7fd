import sys


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(results, key=lambda s: int(s.split()[0][2:])):
        terminalreporter.write_line(line)
