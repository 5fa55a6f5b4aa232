import math
from dataclasses import replace

import numpy as np
import pytest

from src.algebra.ambient_space import AmbientSpace
from src.errors import FrameDegeneracyError
from src.geometry.immersion import FunctionImmersion
from src.geometry.surface_calculus import (
    connection_forms_at,
    frame_at,
    frame_compatibility_residuals,
    full_frame_at,
    mean_curvature_at,
    second_fundamental_form_at,
    shape_operator,
)
from tests.conftest import SAMPLE_POINTS

FLAT = AmbientSpace.flat_c21()


def shaped(immersion, at, scheme):
    return second_fundamental_form_at(immersion, frame_at(immersion, at, scheme), at, scheme)


def test_plane_frame(plane, scheme):
    frame = frame_at(plane, (0.2, -0.3), scheme)
    assert np.array_equal(frame.e1, [1, 1])
    assert np.array_equal(frame.e2, [0.5, -0.5])
    assert frame.alpha == 0.0
    assert np.allclose(frame.e3, [1j, 1j]) and np.allclose(frame.e4, [0.5j, -0.5j])
    frame = shaped(plane, (0.2, -0.3), scheme)
    assert np.max(np.abs(frame.h3)) < 1e-9 and np.max(np.abs(frame.h4)) < 1e-9
    assert np.max(np.abs(mean_curvature_at(frame))) < 1e-9


def test_degenerate_chart_is_rejected(scheme):
    # (x, y) itself: <psi_x, psi_x> = -1 for the form b_{1,2}
    psi = FunctionImmersion(FLAT, lambda x, y: (x, y))
    with pytest.raises(FrameDegeneracyError) as info:
        frame_at(psi, (0.0, 0.0), scheme)
    assert info.value.product == "<e1,e1>"


def test_slant_angle(slant_surface, scheme):
    for at in SAMPLE_POINTS:
        frame = frame_at(slant_surface, at, scheme)
        assert abs(frame.alpha - 0.7) < 1e-8
        assert frame.cosh_alpha >= 1.0


def test_lift_frame(cp21_lift, ch21_lift, scheme):
    for lift in (cp21_lift, ch21_lift):
        for at in SAMPLE_POINTS:
            frame = shaped(lift, at, scheme)
            assert abs(frame.alpha) < 1e-8
            assert abs(frame.beta) < 1e-6 and abs(frame.mu) < 1e-6
            assert frame.position_coeff["xy"] == pytest.approx(lift.ambient.c, abs=1e-6)
    frame = shaped(cp21_lift, (0.1, 0.2), scheme)
    assert frame.gamma * frame.lambda_ == pytest.approx(-1.0, abs=1e-5)
    frame = shaped(ch21_lift, (0.1, 0.2), scheme)
    assert frame.gamma * frame.lambda_ == pytest.approx(1.0, abs=1e-5)


def test_c21_surface_is_minimal(c21_surface, scheme):
    for at in SAMPLE_POINTS:
        frame = shaped(c21_surface, at, scheme)
        assert np.max(np.abs(mean_curvature_at(frame))) < 1e-7
        assert abs(frame.alpha - 0.3 * math.sin(at[1])) < 1e-8
    frame = shaped(c21_surface, (0.0, 0.0), scheme)
    assert frame.lambda_ == pytest.approx(1.85, abs=1e-8)
    assert frame.mu == pytest.approx(0.3, abs=1e-8)
    assert frame.beta == 0.0 and frame.gamma == 0.0


def test_non_minimal_surface_is_detected(scheme):
    psi = FunctionImmersion(FLAT, lambda x, y: (x + y / 2 + 1j * x * y, x - y / 2))
    frame = shaped(psi, (0.0, 0.0), scheme)
    assert np.max(np.abs(mean_curvature_at(frame))) > 1e-3
    assert frame.h3[0, 1] == pytest.approx(0.5, abs=1e-6)
    assert frame.h4[0, 1] == pytest.approx(1.0, abs=1e-6)


def test_connection_forms(c21_surface, cp21_lift, scheme):
    for at in SAMPLE_POINTS:
        omega1, omega2, phi1, phi2 = connection_forms_at(c21_surface, at, scheme)
        alpha = 0.3 * math.sin(at[1])
        alpha_y = 0.3 * math.cos(at[1])
        assert abs(omega1) < 1e-7 and abs(omega2) < 1e-7
        assert abs(phi1) < 1e-6
        assert phi2 == pytest.approx(-alpha_y * math.tanh(alpha), abs=1e-6)

        omega1, omega2, phi1, phi2 = connection_forms_at(cp21_lift, at, scheme)
        assert max(abs(omega1), abs(omega2)) < 1e-7
        assert max(abs(phi1), abs(phi2)) < 1e-8


def test_shape_operator_duality(c21_surface, scheme):
    frame = full_frame_at(c21_surface, (0.3, 0.5), scheme)
    residuals = frame_compatibility_residuals(frame, 0.0, 0.3 * math.cos(0.5))
    assert residuals["shape_duality_e3"] < 1e-8
    assert residuals["shape_duality_e4"] < 1e-8
    assert residuals["angle_derivative_y"] < 1e-6
    assert residuals["connection_coth_y"] < 1e-5
    a3 = shape_operator(frame, 3)
    assert a3.shape == (2, 2)


def test_lagrangian_compatibility(cp21_lift, scheme):
    frame = full_frame_at(cp21_lift, (0.4, -0.1), scheme)
    residuals = frame_compatibility_residuals(frame, 0.0, 0.0)
    assert residuals["connection_difference_x"] < 1e-8
    assert residuals["connection_difference_y"] < 1e-8
    assert residuals["connection_coth_x"] is None
    assert residuals["connection_coth_y"] is None


def test_angle_fault_is_detected(plane, scheme):
    frame = full_frame_at(plane, (0.0, 0.0), scheme)
    h3 = frame.h3.copy()
    h3[0, 0] += 1e-3
    residuals = frame_compatibility_residuals(replace(frame, h3=h3), 0.0, 0.0)
    assert residuals["angle_derivative_x"] == pytest.approx(1e-3, rel=1e-6)
