import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tamecheck import corpus  # noqa: E402
from tamecheck.report import analyze  # noqa: E402

CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record a pass/fail line for an acceptance criterion.

    Usage: ``with criterion(3, "description") as note: ...``; ``note`` appends
    detail text.  The line is recorded as FAIL if the block raises.
    """
    class _Recorder:
        def __call__(self, number: int, title: str):
            self.number, self.title, self.details = number, title, []
            return self

        def __enter__(self):
            return self.details.append

        def __exit__(self, exc_type, exc, tb):
            detail = "; ".join(self.details)
            if exc_type is not None:
                detail = f"{detail}; {exc_type.__name__}: {exc}" if detail else f"{exc_type.__name__}: {exc}"
            line = f"{self.title}" + (f" ({detail})" if detail else "")
            CRITERIA[self.number] = (exc_type is None, line)
            print(f"CRITERION {self.number}: {'PASS' if exc_type is None else 'FAIL'} {line}")
            return False

    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        ok, line = CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {line}")


@pytest.fixture(scope="session")
def corpus_reports():
    """One analysis per built-in example, shared across the session."""
    return {name: analyze(corpus.load(name)) for name in corpus.names()}
