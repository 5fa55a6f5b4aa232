import math
import pickle

import pytest

from src.calculus.quadrature import CumulativeIntegral
from src.errors import QuadratureError


def test_running_integral_of_cosine():
    integral = CumulativeIntegral(math.cos)
    for y in (-1.3, -0.25, 0.0, 0.6, 2.1):
        assert integral(y) == pytest.approx(math.sin(y), abs=1e-12)
    assert integral.derivative(0.4) == math.cos(0.4)


def test_zero_and_constant_integrands():
    assert CumulativeIntegral(lambda t: 0.0)(1.7) == 0.0
    assert CumulativeIntegral(lambda t: 0.5)(-0.8) == pytest.approx(-0.4, abs=1e-15)
    assert CumulativeIntegral(math.exp)(0.0) == 0.0


def test_whole_segments_are_cached():
    calls = []

    def integrand(t):
        calls.append(t)
        return t * t

    integral = CumulativeIntegral(integrand, segment=0.25)
    first = integral(1.1)
    cached = len(integral._segments)
    assert cached == 4
    calls.clear()
    assert integral(1.1) == first
    again = len(calls)
    integral(0.9)
    assert len(integral._segments) == cached
    assert first == pytest.approx(1.1 ** 3 / 3, abs=1e-12)
    assert again > 0


def test_pickles_without_lock():
    integral = CumulativeIntegral(math.cos)
    integral(1.0)
    clone = pickle.loads(pickle.dumps(integral))
    assert clone(1.0) == integral(1.0)
    assert clone._segments == integral._segments


def test_non_convergence_reports_subinterval():
    integral = CumulativeIntegral(lambda t: math.sin(400.0 * t), tolerance=1e-14, limit=1)
    with pytest.raises(QuadratureError) as info:
        integral(0.2)
    assert info.value.lower == 0.0
    assert info.value.upper == 0.2


def test_invalid_settings():
    with pytest.raises(ValueError):
        CumulativeIntegral(math.cos, tolerance=0.0)
    with pytest.raises(ValueError):
        CumulativeIntegral(math.cos, segment=-1.0)
