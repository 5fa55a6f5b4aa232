"""
Constructors for the classified minimal flat Lorentzian surfaces.

  geodesic_plane  totally geodesic Lorentzian plane in C^2_1
  thm51           minimal flat surfaces in C^2_1 from two functions alpha(y), f(y)
  cor51           the constant-angle (theta-slant) members in closed form
  thm61           Lagrangian surface in CP^2_1(4), as a horizontal lift into S^5_2(1)
  thm71           Lagrangian surface in CH^2_1(-4), as a horizontal lift into H^5_2(-1)

Every family provides closed-form tangents so second partials need only one
difference quotient.
"""
import math
from dataclasses import dataclass

import numpy as np

from config.settings import QUADRATURE
from src.algebra.ambient_space import AmbientSpace
from src.calculus.expressions import UserFunction
from src.calculus.finite_difference import partial
from src.calculus.quadrature import CumulativeIntegral
from src.errors import ParameterError
from src.geometry.immersion import Immersion

SQRT3 = math.sqrt(3.0)
K_AMP = math.sqrt(2.0 / 3.0)
M_AMP = 1.0 / SQRT3


@dataclass(frozen=True)
class FamilyInfo:
    family: str
    params: tuple
    realizes: str
    ambient: str


FAMILY_CATALOG = {
    "geodesic_plane": FamilyInfo(
        "geodesic_plane", (), "Theorem 5.1 (converse clause): totally geodesic Lorentzian plane", "C^2_1"
    ),
    "thm51": FamilyInfo(
        "thm51", ("alpha", "f"), "Theorem 5.1: minimal flat Lorentzian surfaces", "C^2_1"
    ),
    "cor51": FamilyInfo(
        "cor51", ("theta", "f"), "Corollary 5.1: minimal flat theta-slant surfaces", "C^2_1"
    ),
    "thm61": FamilyInfo(
        "thm61", ("a",), "Theorem 6.1: minimal flat Lagrangian surfaces", "CP^2_1(4)"
    ),
    "thm71": FamilyInfo(
        "thm71", ("a",), "Theorem 7.1: minimal flat Lagrangian surfaces", "CH^2_1(-4)"
    ),
}


@dataclass(frozen=True)
class FamilyParams:
    """Free data of a family; expressions are kept as source text"""

    family: str
    alpha: str = None
    f: str = None
    theta: float = None
    a: float = None
    quadrature_tolerance: float = QUADRATURE['tolerance']

    def as_dict(self):
        required = FAMILY_CATALOG[self.family].params
        out = {name: getattr(self, name) for name in required}
        if self.family == "thm51":
            out["quadrature_tolerance"] = self.quadrature_tolerance
        return out


# ==============================================================
# C^2_1 FAMILIES
# ==============================================================

class _AngleIntegrand:
    """Integrands of the C^2_1 family: cosh^2(alpha)/2, f' sinh(alpha), sinh(alpha)"""

    def __init__(self, kind, alpha, f=None):
        self.kind = kind
        self.alpha = alpha
        self.f = f

    def __call__(self, t):
        s = math.sinh(self.alpha(t))
        if self.kind == "half_cosh2":
            return 0.5 * (1.0 + s * s)
        if self.kind == "f_sinh":
            return self.f.derivative(t) * s
        return s


def _c21_tangents(cosh2_half, f_prime, sinh_a):
    # psi_x = (1, 1); psi_y from d/dy of the running integrals
    first = cosh2_half - f_prime * sinh_a + 1j * f_prime
    psi_y = np.array([first, first - 1.0 - 1j * sinh_a])
    return np.array([1.0 + 0j, 1.0 + 0j]), psi_y


class C21Surface(Immersion):
    """psi = (x + i f + K - G, x - y + i f + K - G - i S) with running integrals K, G, S"""

    def __init__(self, alpha, f, tolerance=QUADRATURE['tolerance'], domain=None):
        super().__init__(
            AmbientSpace.flat_c21(),
            f"thm51(alpha={alpha.source}, f={f.source})",
            {"alpha": alpha.source, "f": f.source, "quadrature_tolerance": tolerance},
            domain,
        )
        self.alpha = alpha
        self.f = f
        self.K = CumulativeIntegral(_AngleIntegrand("half_cosh2", alpha), tolerance)
        self.G = CumulativeIntegral(_AngleIntegrand("f_sinh", alpha, f), tolerance)
        self.S = CumulativeIntegral(_AngleIntegrand("sinh", alpha), tolerance)

    def evaluate(self, x, y):
        common = x + 1j * self.f(y) + self.K(y) - self.G(y)
        return np.array([common, common - y - 1j * self.S(y)])

    def tangents(self, x, y):
        s = math.sinh(self.alpha(y))
        return _c21_tangents(0.5 * (1.0 + s * s), self.f.derivative(y), s)

    def expected_alpha(self, x, y):
        return self.alpha(y)


class C21SlantSurface(Immersion):
    """Constant Wirtinger angle theta: the running integrals become linear in y"""

    def __init__(self, theta, f, domain=None):
        super().__init__(
            AmbientSpace.flat_c21(),
            f"cor51(theta={theta!r}, f={f.source})",
            {"theta": theta, "f": f.source},
            domain,
        )
        self.theta = theta
        self.f = f
        self.sinh_theta = math.sinh(theta)
        self.cosh2_half = 0.5 * math.cosh(theta) ** 2

    def evaluate(self, x, y):
        first = x + y * self.cosh2_half + (1j - self.sinh_theta) * self.f(y)
        return np.array([first, first - y - 1j * y * self.sinh_theta])

    def tangents(self, x, y):
        return _c21_tangents(self.cosh2_half, self.f.derivative(y), self.sinh_theta)

    def expected_alpha(self, x, y):
        return self.theta


class GeodesicPlane(Immersion):
    """psi = (x + y/2, x - y/2)"""

    def __init__(self, domain=None):
        super().__init__(AmbientSpace.flat_c21(), "geodesic_plane", {}, domain)

    def evaluate(self, x, y):
        return np.array([x + 0.5 * y + 0j, x - 0.5 * y + 0j])

    def tangents(self, x, y):
        return np.array([1.0 + 0j, 1.0 + 0j]), np.array([0.5 + 0j, -0.5 + 0j])

    def expected_alpha(self, x, y):
        return 0.0


# ==============================================================
# HOPF LIFTS
# ==============================================================

class HorizontalLift(Immersion):
    """
    Horizontal lift (k e^{i p} cosh u, m e^{i r}, k e^{i p} sinh u) with phases
    p, r and hyperbolic argument u linear in x, y.

    Subclasses set the linear coefficients; the lift satisfies
    L_xx = (i/a^3) L_y, L_xy = c L and L_yy = -c i a^3 L_x.
    """

    family = None
    p_coeff = (0.0, 0.0)
    u_coeff = (0.0, 0.0)
    r_coeff = (0.0, 0.0)

    def __init__(self, ambient, a, domain=None):
        super().__init__(ambient, f"{self.family}(a={a!r})", {"a": a}, domain)
        self.a = a

    def _phases(self, x, y):
        p = self.p_coeff[0] * x + self.p_coeff[1] * y
        u = self.u_coeff[0] * x + self.u_coeff[1] * y
        r = self.r_coeff[0] * x + self.r_coeff[1] * y
        return p, u, r

    def evaluate(self, x, y):
        p, u, r = self._phases(x, y)
        ep = np.exp(1j * p)
        return np.array([K_AMP * ep * math.cosh(u), M_AMP * np.exp(1j * r), K_AMP * ep * math.sinh(u)])

    def tangents(self, x, y):
        p, u, r = self._phases(x, y)
        ep, er = np.exp(1j * p), np.exp(1j * r)
        ch, sh = math.cosh(u), math.sinh(u)
        out = []
        for j in (0, 1):
            dp, du, dr = self.p_coeff[j], self.u_coeff[j], self.r_coeff[j]
            out.append(np.array([
                K_AMP * ep * (1j * dp * ch + du * sh),
                M_AMP * er * (1j * dr),
                K_AMP * ep * (1j * dp * sh + du * ch),
            ]))
        return tuple(out)

    def expected_alpha(self, x, y):
        return 0.0

    def ode_coefficients(self):
        """(k_xx, k_xy, k_yy) in L_xx = k_xx L_y, L_xy = k_xy L, L_yy = k_yy L_x"""
        a3 = self.a ** 3
        c = self.ambient.c
        return 1j / a3, c, -c * 1j * a3

    def extra_residuals(self, at, scheme):
        return lift_ode_residuals(self, at, scheme)


class CP21Lift(HorizontalLift):
    """Lift into S^5_2(1) in C^3_1, timelike slot on the third component"""

    family = "thm61"

    def __init__(self, a, domain=None):
        _check_a(a)
        super().__init__(AmbientSpace.cp21_lift(1.0, negative_slots=(2,)), a, domain)
        self.p_coeff = (1.0 / (2 * a), -a / 2)
        self.u_coeff = (SQRT3 / (2 * a), SQRT3 * a / 2)
        self.r_coeff = (-1.0 / a, a)


class CH21Lift(HorizontalLift):
    """Lift into H^5_2(-1) in C^3_2, timelike slots on the first two components"""

    family = "thm71"

    def __init__(self, a, domain=None):
        _check_a(a)
        super().__init__(AmbientSpace.ch21_lift(-1.0, negative_slots=(0, 1)), a, domain)
        self.p_coeff = (-1.0 / (2 * a), -a / 2)
        self.u_coeff = (SQRT3 / (2 * a), -SQRT3 * a / 2)
        self.r_coeff = (1.0 / a, a)


def _check_a(a):
    if a is None:
        raise ParameterError("a is required")
    if not math.isfinite(a):
        raise ParameterError("a must be finite")
    if a == 0:
        raise ParameterError("a must be nonzero")


def lift_ode_residuals(lift, at, scheme):
    """Componentwise maxima of the lift's second-order linear system"""
    x, y = at
    k_xx, k_xy, k_yy = lift.ode_coefficients()
    position = lift.evaluate(x, y)
    psi_x, psi_y = lift.tangents(x, y)
    psi_xx = partial(lift, "xx", at, scheme)
    psi_xy = partial(lift, "xy", at, scheme)
    psi_yy = partial(lift, "yy", at, scheme)
    return {
        "lift_ode_xx": float(np.max(np.abs(psi_xx - k_xx * psi_y))),
        "lift_ode_xy": float(np.max(np.abs(psi_xy - k_xy * position))),
        "lift_ode_yy": float(np.max(np.abs(psi_yy - k_yy * psi_x))),
    }


# ==============================================================
# BUILDERS
# ==============================================================

def build_geodesic_plane(domain=None):
    return GeodesicPlane(domain)


def build_c21_surface(alpha_expr, f_expr, domain=None, tolerance=QUADRATURE['tolerance']):
    """Minimal flat surface in C^2_1 from source text (or UserFunction) alpha(y), f(y)"""
    return C21Surface(_function(alpha_expr), _function(f_expr), tolerance, domain)


def build_c21_slant_surface(theta, f_expr, domain=None):
    """Minimal flat theta-slant surface in C^2_1"""
    if theta is None or not math.isfinite(theta):
        raise ParameterError("theta must be a finite number")
    return C21SlantSurface(float(theta), _function(f_expr), domain)


def build_cp21_lift(a, domain=None):
    return CP21Lift(a, domain)


def build_ch21_lift(a, domain=None):
    return CH21Lift(a, domain)


def _function(expr):
    if expr is None:
        raise ParameterError("expression is required")
    return expr if isinstance(expr, UserFunction) else UserFunction(expr)


def build_family(params, domain=None):
    """Dispatch on params.family"""
    family = params.family
    if family not in FAMILY_CATALOG:
        raise ParameterError(f"unknown family '{family}' (choose from {', '.join(FAMILY_CATALOG)})")
    if family == "geodesic_plane":
        return build_geodesic_plane(domain)
    if family == "thm51":
        if params.alpha is None or params.f is None:
            raise ParameterError("thm51 needs --alpha and --f")
        return build_c21_surface(params.alpha, params.f, domain, params.quadrature_tolerance)
    if family == "cor51":
        if params.f is None:
            raise ParameterError("cor51 needs --f")
        return build_c21_slant_surface(params.theta, params.f, domain)
    if family == "thm61":
        return build_cp21_lift(params.a, domain)
    return build_ch21_lift(params.a, domain)
