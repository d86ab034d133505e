import pytest

from succession.freq import FrequencyVector

_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def verdict(request):
    """Record one acceptance line; also printed immediately for ``-s`` runs."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    def record(label, passed, detail=""):
        status = {True: "PASS", False: "FAIL", None: "SKIP"}[passed]
        line = f"{label}: {status}" + (f" ({detail})" if detail else "")
        lines.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def fv210():
    """k=3 with counts (2, 1, 0): the workhorse example."""
    return FrequencyVector.from_counts(3, [2, 1, 0])
