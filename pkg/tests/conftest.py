import functools

ACCEPTANCE: list[str] = []


def criterion(number, summary):
    """Record one PASS/FAIL line per acceptance criterion and print it."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException as exc:
                line = f"FAIL criterion {number}: {summary} ({type(exc).__name__}: {exc})"
                ACCEPTANCE.append(line)
                print(line)
                raise
            line = f"PASS criterion {number}: {summary}"
            ACCEPTANCE.append(line)
            print(line)

        return run

    return wrap


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
