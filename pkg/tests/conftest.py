import _acceptance_log as log


def pytest_terminal_summary(terminalreporter):
    if not log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(log.RESULTS):
        terminalreporter.write_line(log.RESULTS[number])
