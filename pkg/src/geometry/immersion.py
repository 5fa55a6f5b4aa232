"""
Immersion model: an evaluatable map (x, y) -> C^n with its ambient geometry.
"""
from src.algebra.indefinite_algebra import as_vector


class Immersion:
    """Base class for surfaces in flat C^2_1 or in a Hopf-lift total space"""

    def __init__(self, ambient, label, params=None, domain=None):
        self.ambient = ambient
        self.label = label
        self.params = dict(params or {})
        self.domain = domain

    def __repr__(self):
        return f"{type(self).__name__}({self.label!r})"

    def evaluate(self, x, y):
        raise NotImplementedError

    def tangents(self, x, y):
        """(psi_x, psi_y) in closed form, or None when not available"""
        return None

    @property
    def has_tangents(self):
        return type(self).tangents is not Immersion.tangents

    def expected_alpha(self, x, y):
        """Wirtinger angle the construction prescribes, or None"""
        return None

    def extra_residuals(self, at, scheme):
        """Family-specific residuals (e.g. lift ODE systems) keyed by name"""
        return {}


class FunctionImmersion(Immersion):
    """Immersion from plain callables; handy for hand-built test surfaces"""

    def __init__(self, ambient, func, label="custom", tangent_func=None, params=None, domain=None):
        super().__init__(ambient, label, params, domain)
        self.func = func
        self.tangent_func = tangent_func

    def evaluate(self, x, y):
        return as_vector(self.func(x, y))

    def tangents(self, x, y):
        if self.tangent_func is None:
            return None
        psi_x, psi_y = self.tangent_func(x, y)
        return as_vector(psi_x), as_vector(psi_y)

    @property
    def has_tangents(self):
        return self.tangent_func is not None
