"""
Central finite differences with Richardson extrapolation.

Works on any map (x, y) -> scalar or numpy array, so the same stencils
serve immersions (complex vectors) and extracted scalar fields.
"""
from dataclasses import dataclass, replace

import numpy as np

from config.settings import DEFAULT_SCHEME, MAX_RICHARDSON_LEVELS
from src.errors import ConfigError, StencilEvaluationError, WorkbenchError

FIRST_ORDER = ("x", "y")
SECOND_ORDER = ("xx", "xy", "yx", "yy")


@dataclass(frozen=True)
class FdScheme:
    """Step and extrapolation depth for immersion and field derivatives"""

    base_step: float = DEFAULT_SCHEME['base_step']
    richardson_levels: int = DEFAULT_SCHEME['richardson_levels']
    field_step_factor: float = DEFAULT_SCHEME['field_step_factor']
    field_levels: int = DEFAULT_SCHEME['field_levels']

    def __post_init__(self):
        if not (np.isfinite(self.base_step) and self.base_step > 0):
            raise ConfigError(f"base_step must be positive, got {self.base_step!r}")
        for name in ("richardson_levels", "field_levels"):
            levels = getattr(self, name)
            if int(levels) != levels or not 1 <= levels <= MAX_RICHARDSON_LEVELS:
                raise ConfigError(
                    f"{name} must be an integer in [1, {MAX_RICHARDSON_LEVELS}], got {levels!r}"
                )
        if not self.field_step_factor >= 1:
            raise ConfigError("field_step_factor must be at least 1")

    @property
    def field_step(self):
        return self.base_step * self.field_step_factor

    def refined(self):
        """Half the step with one more Richardson level"""
        return replace(
            self,
            base_step=self.base_step / 2,
            richardson_levels=min(self.richardson_levels + 1, MAX_RICHARDSON_LEVELS),
        )

    def as_dict(self):
        return {
            'base_step': self.base_step,
            'richardson_levels': self.richardson_levels,
            'field_step_factor': self.field_step_factor,
            'field_levels': self.field_levels,
        }


def richardson(estimate, h, levels):
    """Extrapolate estimate(h/2^k), k = 0..levels, for an error series in even powers of h"""
    row = [np.asarray(estimate(h / 2 ** k)) for k in range(levels + 1)]
    for m in range(1, levels + 1):
        factor = 4.0 ** m
        row = [(factor * row[k] - row[k - 1]) / (factor - 1.0) for k in range(1, len(row))]
    return row[-1]


def _guarded(fn):
    def call(x, y):
        try:
            return np.asarray(fn(x, y))
        except StencilEvaluationError:
            raise
        except (WorkbenchError, ArithmeticError, ValueError) as e:
            raise StencilEvaluationError((x, y), e) from e
    return call


def _stencil(f, x, y, which):
    if which == "x":
        return lambda h: (f(x + h, y) - f(x - h, y)) / (2 * h)
    if which == "y":
        return lambda h: (f(x, y + h) - f(x, y - h)) / (2 * h)
    if which == "xx":
        return lambda h: (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / (h * h)
    if which == "yy":
        return lambda h: (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / (h * h)
    if which in ("xy", "yx"):
        return lambda h: (
            f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)
        ) / (4 * h * h)
    raise ValueError(f"unknown partial {which!r}")


def derivative(fn, at, which, step, levels):
    """Richardson-extrapolated central difference of fn at `at`"""
    x, y = at
    return richardson(_stencil(_guarded(fn), x, y, which), step, levels)


def partial(immersion, which, at, scheme):
    """
    psi_x, psi_y, psi_xx, psi_xy, psi_yx or psi_yy of an immersion.

    With analytic tangents, first partials are exact and second partials
    differentiate the tangents once (psi_xy = d/dy psi_x, psi_yx = d/dx psi_y).
    Otherwise second-order stencils of the map itself are used.
    """
    if which not in FIRST_ORDER + SECOND_ORDER:
        raise ValueError(f"unknown partial {which!r}")
    x, y = at
    step, levels = scheme.base_step, scheme.richardson_levels

    if immersion.has_tangents:
        if which in FIRST_ORDER:
            return immersion.tangents(x, y)[FIRST_ORDER.index(which)]
        tangent = 0 if which[0] == "x" else 1

        def fn(u, v):
            return immersion.tangents(u, v)[tangent]

        return derivative(fn, at, which[1], step, levels)

    return derivative(immersion.evaluate, at, which, step, levels)
