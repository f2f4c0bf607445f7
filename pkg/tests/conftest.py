import itertools

import pytest

from freqcorrect import _fallback, kernels

ALL_RANKINGS_3 = list(itertools.permutations(range(3)))

_acceptance_lines: list[str] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; shown in the terminal summary."""

    def record(number: int, text: str, ok: bool):
        _acceptance_lines.append(f"[criterion {number}] {'PASS' if ok else 'FAIL'}  {text}")
        assert ok, text

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


BACKENDS = [_fallback]
if kernels.BACKEND == "cython":
    from freqcorrect import _kernels

    BACKENDS.append(_kernels)


@pytest.fixture(scope="module", params=BACKENDS, ids=lambda mod: mod.__name__.rsplit(".", 1)[-1])
def backend(request):
    return request.param
