import sys


def pytest_terminal_summary(terminalreporter):
    # re-print the acceptance verdict lines; normal capture would
    # otherwise swallow them for passing checks
    for name in ("test_acceptance", "tests.test_acceptance"):
        mod = sys.modules.get(name)
        if mod is not None and getattr(mod, "VERDICTS", None):
            terminalreporter.section("acceptance verdicts")
            for line in mod.VERDICTS:
                terminalreporter.write_line(line)
            break
