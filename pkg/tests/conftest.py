import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from zmwreath.spectral_group import CentralFunction, builtin_model  # noqa: E402


@pytest.fixture
def z2():
    return builtin_model("z2")


@pytest.fixture
def s3():
    return builtin_model("s3")


@pytest.fixture
def z2_z(z2):
    return CentralFunction.from_class_values(z2, [3, 1])


@pytest.fixture
def s3_z(s3):
    return CentralFunction.from_class_values(s3, [6, 2, 0])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
