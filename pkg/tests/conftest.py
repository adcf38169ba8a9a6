import sys

import pytest

from guardopt.numerology import NumerologyConfig


def pytest_terminal_summary(terminalreporter):
    # echo the acceptance-criteria verdicts even though stdout is captured
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None) if mod else None
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def cfg():
    return NumerologyConfig()


@pytest.fixture(scope="session")
def small_cfg():
    # cheap grid for waveform-level tests
    return NumerologyConfig(n_fft=128, n_occupied=48, subcarrier_spacing=15e3, t_cp_ch=8)
