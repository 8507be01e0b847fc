import os
import sys
import warnings

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from omegapa.pcp_gadgets import LeadingZeroWarning, PcpInstance  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def make_p1():
    return PcpInstance(("a",), 2, {"a": "1"}, {"a": "1"})


def make_p2():
    # all-zero images: theta is identically 0
    return PcpInstance(("a",), 2, {"a": "0"}, {"a": "00"})


def make_p2prime():
    return PcpInstance(("a",), 2, {"a": "1"}, {"a": "11"})


def make_classic():
    return PcpInstance(("a", "b", "c"), 2,
                       {"a": "1", "b": "10111", "c": "10"},
                       {"a": "111", "b": "10", "c": "0"})


def make_two_letter():
    # phi1(w) is never as long as phi2(w), so no solution exists
    return PcpInstance(("a", "b"), 2, {"a": "1", "b": "10"}, {"a": "11", "b": "101"})


@pytest.fixture
def p1():
    return make_p1()


@pytest.fixture
def p2():
    return make_p2()


@pytest.fixture
def p2prime():
    return make_p2prime()


@pytest.fixture
def classic():
    return make_classic()


@pytest.fixture(autouse=True)
def _quiet_leading_zero():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LeadingZeroWarning)
        yield
