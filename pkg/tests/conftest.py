import functools
import sys

import pytest

from hopfkit.double import build_double
from hopfkit.groups import make_group
from hopfkit.hopf import group_algebra
from hopfkit.reptheory import wedderburn

ACCEPTANCE_GROUPS = ("C2", "C3", "C5", "C2xC2", "S3", "D4", "Q8")


@functools.lru_cache(maxsize=None)
def double_of(name: str):
    return build_double(group_algebra(make_group(name)))


@functools.lru_cache(maxsize=None)
def double_table(name: str):
    return wedderburn(double_of(name).D)


@pytest.fixture(params=ACCEPTANCE_GROUPS)
def group_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
