import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vedicmul import _pycore, backend  # noqa: E402


def _cores():
    cores = [pytest.param(_pycore, id="python")]
    if backend.compiled_available():
        from vedicmul import _core
        cores.append(pytest.param(_core, id="cython"))
    return cores


@pytest.fixture(params=_cores())
def core(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(20240607)


def rand_bits(rng, max_bits):
    return rng.getrandbits(rng.randint(0, max_bits))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
