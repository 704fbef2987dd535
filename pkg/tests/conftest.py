import pytest

from cantortopo.closed import SafetyAutomaton
from cantortopo.spec_format import bundled_model
from cantortopo.words import all_words


@pytest.fixture(scope="session")
def model():
    return bundled_model()


def words_of(f: SafetyAutomaton, k: int) -> set[str]:
    """Prefix set computed by walking the automaton letter by letter."""
    return {w for w in all_words(k) if f.has_prefix(w)}


ACCEPTANCE_LINES: dict[int, str] = {}


def record(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
