import cmath
import math

import numpy as np
import pytest

from src.algebra.ambient_space import AmbientSpace
from src.calculus.finite_difference import FdScheme, derivative, partial, richardson
from src.errors import ConfigError, StencilEvaluationError
from src.families.surface_families import build_c21_surface, build_cp21_lift
from src.geometry.immersion import FunctionImmersion

FLAT = AmbientSpace.flat_c21()


def affine(x, y):
    return (x, x - y)


def affine_tangents(x, y):
    return (1, 1), (0, -1)


def wavy(x, y):
    return (cmath.exp(x + 1j * y), math.sin(x * y))


def wavy_exact(which, x, y):
    ez = cmath.exp(x + 1j * y)
    s, c = math.sin(x * y), math.cos(x * y)
    table = {
        "x": (ez, y * c),
        "y": (1j * ez, x * c),
        "xx": (ez, -y * y * s),
        "yy": (-ez, -x * x * s),
        "xy": (1j * ez, c - x * y * s),
    }
    return np.array(table[which], dtype=complex)


def test_scheme_validation():
    scheme = FdScheme()
    assert scheme.base_step == 1e-3 and scheme.richardson_levels == 2
    assert scheme.field_step == pytest.approx(1e-2)
    for bad in ({"base_step": 0.0}, {"base_step": float("nan")}, {"richardson_levels": 0},
                {"richardson_levels": 5}, {"field_levels": 1.5}, {"field_step_factor": 0.5}):
        with pytest.raises(ConfigError):
            FdScheme(**bad)


def test_refined_scheme():
    refined = FdScheme().refined()
    assert refined.base_step == 5e-4
    assert refined.richardson_levels == 3
    assert FdScheme(richardson_levels=4).refined().richardson_levels == 4


def test_richardson_removes_quadratic_error():
    assert richardson(lambda h: 1.0 + h * h, 0.1, 1) == pytest.approx(1.0, abs=1e-15)
    assert richardson(lambda h: 2.0 + h ** 2 + h ** 4, 0.1, 2) == pytest.approx(2.0, abs=1e-14)


def test_affine_map_partials():
    psi = FunctionImmersion(FLAT, affine)
    scheme = FdScheme()
    assert np.allclose(partial(psi, "x", (0.0, 0.0), scheme), [1, 1], rtol=0, atol=1e-12)
    assert np.allclose(partial(psi, "y", (0.0, 0.0), scheme), [0, -1], rtol=0, atol=1e-12)
    for which in ("xx", "xy", "yx", "yy"):
        assert np.max(np.abs(partial(psi, which, (0.0, 0.0), scheme))) == 0.0

    with_tangents = FunctionImmersion(FLAT, affine, tangent_func=affine_tangents)
    assert with_tangents.has_tangents and not psi.has_tangents
    for which in ("xx", "xy", "yx", "yy"):
        assert np.max(np.abs(partial(with_tangents, which, (0.3, 0.7), scheme))) == 0.0


def test_c21_plane_mixed_partial_vanishes():
    surface = build_c21_surface("0", "0")
    assert np.max(np.abs(partial(surface, "xy", (0.4, -0.2), FdScheme()))) < 1e-9


def test_lift_mixed_partial_equals_position():
    lift = build_cp21_lift(1.0)
    scheme = FdScheme()
    position = lift.evaluate(0.0, 0.0)
    assert np.max(np.abs(partial(lift, "xy", (0.0, 0.0), scheme) - position)) < 1e-6

    # the same through stencils of the map itself
    plain = FunctionImmersion(lift.ambient, lift.evaluate)
    assert np.max(np.abs(partial(plain, "xy", (0.0, 0.0), scheme) - position)) < 1e-6


def test_mixed_partials_commute():
    lift = build_cp21_lift(1.25)
    scheme = FdScheme()
    for at in [(0.0, 0.0), (0.6, -0.4), (-0.9, 0.8)]:
        xy = partial(lift, "xy", at, scheme)
        yx = partial(lift, "yx", at, scheme)
        assert np.max(np.abs(xy - yx)) < 1e-9


def test_richardson_levels_never_increase_error():
    psi = FunctionImmersion(FLAT, wavy)
    at = (0.3, 0.2)
    for which in ("x", "y", "xx", "xy", "yy"):
        exact = wavy_exact(which, *at)
        errors = [
            np.linalg.norm(partial(psi, which, at, FdScheme(base_step=0.5, richardson_levels=k)) - exact)
            for k in (1, 2, 3)
        ]
        assert errors[1] <= errors[0], which
        assert errors[2] <= errors[1], which


def test_scalar_field_derivative():
    value = derivative(lambda x, y: math.sin(x) * math.exp(y), (0.2, 0.1), "xy", 1e-2, 1)
    assert float(value) == pytest.approx(math.cos(0.2) * math.exp(0.1), abs=1e-8)


def test_failed_evaluation_names_the_point():
    def fragile(x, y):
        if x > 0.5:
            raise ValueError("outside chart")
        return (x, y)

    psi = FunctionImmersion(FLAT, fragile)
    with pytest.raises(StencilEvaluationError) as info:
        partial(psi, "x", (0.5, 0.0), FdScheme())
    assert info.value.at[0] > 0.5
    assert "outside chart" in str(info.value)


def test_unknown_partial():
    with pytest.raises(ValueError):
        partial(FunctionImmersion(FLAT, affine), "xz", (0.0, 0.0), FdScheme())
