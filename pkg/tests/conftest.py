def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
    missing = [n for n in range(1, 10) if n not in RESULTS]
    for n in missing:
        terminalreporter.write_line(f"criterion {n}: not run")
