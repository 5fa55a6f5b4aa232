import math

import numpy as np
import pytest

from src.algebra.ambient_space import membership_residual
from src.algebra.indefinite_algebra import real_inner
from src.errors import ExpressionSyntaxError, ParameterError
from src.families.surface_families import (
    FAMILY_CATALOG,
    FamilyParams,
    build_c21_slant_surface,
    build_c21_surface,
    build_ch21_lift,
    build_cp21_lift,
    build_family,
    lift_ode_residuals,
)
from src.geometry.surface_calculus import frame_at, second_fundamental_form_at
from tests.conftest import SAMPLE_POINTS

GRID_1D = np.linspace(-1.0, 1.0, 5)


def grid_points():
    return [(float(x), float(y)) for y in GRID_1D for x in GRID_1D]


def test_plane(plane):
    assert np.array_equal(plane.evaluate(0.5, 0.25), [0.625, 0.375])
    assert plane.label == "geodesic_plane"


def test_c21_surface_with_zero_data_is_the_plane(plane):
    surface = build_c21_surface("0", "0")
    for x, y in grid_points():
        assert np.max(np.abs(surface.evaluate(x, y) - plane.evaluate(x, y))) < 1e-12


def test_c21_surface_at_origin(c21_surface):
    assert np.array_equal(c21_surface.evaluate(0.0, 0.0), [0, 0])
    assert c21_surface.params == {"alpha": "0.3*sin(y)", "f": "y^2", "quadrature_tolerance": 1e-10}


def test_c21_tangents_match_positions(c21_surface):
    h = 1e-5
    for x, y in SAMPLE_POINTS:
        psi_x, psi_y = c21_surface.tangents(x, y)
        numeric_y = (c21_surface.evaluate(x, y + h) - c21_surface.evaluate(x, y - h)) / (2 * h)
        assert np.max(np.abs(psi_x - [1, 1])) == 0.0
        assert np.max(np.abs(psi_y - numeric_y)) < 1e-6


def test_zero_angle_matches_slant_formula():
    general = build_c21_surface("0", "sin(y)")
    slant = build_c21_slant_surface(0.0, "sin(y)")
    for x, y in grid_points():
        assert np.max(np.abs(general.evaluate(x, y) - slant.evaluate(x, y))) < 1e-12


def test_constant_angle_quadrature_matches_closed_form():
    general = build_c21_surface("0.7", "sin(y)")
    slant = build_c21_slant_surface(0.7, "sin(y)")
    for x, y in grid_points():
        assert np.max(np.abs(general.evaluate(x, y) - slant.evaluate(x, y))) < 1e-10


def test_slant_plane_specialization(plane):
    slant = build_c21_slant_surface(0.0, "0")
    for x, y in SAMPLE_POINTS:
        assert np.max(np.abs(slant.evaluate(x, y) - plane.evaluate(x, y))) < 1e-14


def test_cp21_lift_position(cp21_lift):
    position = cp21_lift.evaluate(0.0, 0.0)
    assert np.allclose(position, [math.sqrt(2 / 3), 1 / math.sqrt(3), 0], rtol=0, atol=1e-15)
    for x, y in grid_points():
        assert abs(membership_residual(cp21_lift.ambient, cp21_lift.evaluate(x, y))) < 1e-12


def test_ch21_lift_position(ch21_lift):
    assert ch21_lift.ambient.form.negative_slots == (0, 1)
    for x, y in grid_points():
        assert abs(membership_residual(ch21_lift.ambient, ch21_lift.evaluate(x, y))) < 1e-12


def test_lift_tangents_span_a_null_chart(cp21_lift, ch21_lift):
    for lift in (cp21_lift, ch21_lift):
        form = lift.ambient.form
        for x, y in grid_points():
            psi_x, psi_y = lift.tangents(x, y)
            assert abs(real_inner(form, psi_x, psi_x)) < 1e-8
            assert abs(real_inner(form, psi_y, psi_y)) < 1e-8
            assert abs(real_inner(form, psi_x, psi_y) + 1.0) < 1e-8


def test_lift_ode(cp21_lift, ch21_lift, scheme):
    for lift in (cp21_lift, ch21_lift, build_cp21_lift(0.8), build_ch21_lift(1.25)):
        for at in SAMPLE_POINTS:
            assert max(lift_ode_residuals(lift, at, scheme).values()) < 1e-6


@pytest.mark.parametrize("a", [0.8, 1.0, 1.25])
def test_cp21_scaling(a, scheme):
    lift = build_cp21_lift(a)
    for at in [(0.0, 0.0), (0.5, -0.3)]:
        frame = second_fundamental_form_at(lift, frame_at(lift, at, scheme), at, scheme)
        assert frame.lambda_ == pytest.approx(-a ** 3, abs=1e-4)
        assert frame.gamma == pytest.approx(1 / a ** 3, abs=1e-4)
        assert abs(frame.sinh_alpha) < 1e-8


def test_zero_a_is_rejected():
    with pytest.raises(ParameterError, match="a must be nonzero"):
        build_cp21_lift(0.0)
    with pytest.raises(ParameterError, match="a must be nonzero"):
        build_ch21_lift(0)
    with pytest.raises(ParameterError):
        build_cp21_lift(float("inf"))


def test_build_family_dispatch():
    assert build_family(FamilyParams("geodesic_plane")).label == "geodesic_plane"
    assert build_family(FamilyParams("thm61", a=1.0)).label == "thm61(a=1.0)"
    assert build_family(FamilyParams("thm71", a=2.0)).ambient.c == -1.0
    slant = build_family(FamilyParams("cor51", theta=0.7, f="sin(y)"))
    assert slant.expected_alpha(0.0, 0.0) == 0.7
    with pytest.raises(ParameterError, match="thm51 needs"):
        build_family(FamilyParams("thm51", f="y"))
    with pytest.raises(ParameterError, match="unknown family"):
        build_family(FamilyParams("thm99"))
    with pytest.raises(ParameterError, match="theta"):
        build_family(FamilyParams("cor51", f="y"))
    with pytest.raises(ExpressionSyntaxError):
        build_family(FamilyParams("thm51", alpha="sin(", f="y"))


def test_family_params_as_dict():
    params = FamilyParams("thm51", alpha="0.3*sin(y)", f="y^2")
    assert params.as_dict() == {"alpha": "0.3*sin(y)", "f": "y^2", "quadrature_tolerance": 1e-10}
    assert FamilyParams("thm61", a=1.0).as_dict() == {"a": 1.0}
    assert FamilyParams("geodesic_plane").as_dict() == {}


def test_catalog():
    assert set(FAMILY_CATALOG) == {"geodesic_plane", "thm51", "cor51", "thm61", "thm71"}
    assert FAMILY_CATALOG["thm51"].params == ("alpha", "f")
    assert "Theorem 7.1" in FAMILY_CATALOG["thm71"].realizes
