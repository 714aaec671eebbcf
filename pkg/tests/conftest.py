from fractions import Fraction

import pytest
from hypothesis import settings

from superfock.scalars import AlphaParam

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

ALPHAS = ("-1/2", "-2", "-7/3", "1/2", "5/2")


@pytest.fixture(params=ALPHAS)
def alpha(request):
    return AlphaParam.parse(request.param)


@pytest.fixture
def a_neg2():
    return AlphaParam(Fraction(-2))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    if mod and mod.SUMMARY:
        terminalreporter.section("acceptance criteria")
        for n in sorted(mod.SUMMARY):
            terminalreporter.write_line(mod.SUMMARY[n])
