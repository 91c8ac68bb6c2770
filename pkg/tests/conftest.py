import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Run one acceptance criterion and record a PASS/FAIL line for the summary."""

    def run(number, title, body):
        try:
            ok, detail = body()
        except Exception as exc:
            _ACCEPTANCE[number] = f"FAIL  criterion {number}: {title} ({type(exc).__name__}: {exc})"
            raise
        _ACCEPTANCE[number] = f"{'PASS' if ok else 'FAIL'}  criterion {number}: {title} ({detail})"
        print(_ACCEPTANCE[number])
        assert ok, _ACCEPTANCE[number]

    return run


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[number])
