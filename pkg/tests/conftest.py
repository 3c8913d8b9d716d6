import numpy as np
import pytest

from memoryless.core import Alphabet, Permutation


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_perm(alphabet, rng):
    return Permutation(alphabet, rng.permutation(alphabet.size))


def swap(alphabet):
    return Permutation.from_function(alphabet, lambda s: (s[1], s[0]) + tuple(s[2:]))


GF2_2 = Alphabet(2, 2)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
