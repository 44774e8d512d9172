import pytest


def pytest_configure(config):
    config.acceptance_results = {}


@pytest.fixture
def record(request):
    """record(n, ok, detail): log one acceptance criterion and echo it."""
    results = request.config.acceptance_results

    def _record(n: int, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
        results[n] = line
        print(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "acceptance_results", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
