"""
Pointwise geometry of a Lorentzian surface in flat coordinates.

Given an immersion psi with pseudo-orthonormal coordinate tangents
(<psi_x,psi_x> = <psi_y,psi_y> = 0, <psi_x,psi_y> = -1) this module builds the
adapted frame e1..e4, the Wirtinger angle, the second fundamental form
h = h3 e3 + h4 e4 and the connection forms omega (tangent) and Phi (normal).

Pairing conventions for the null frames: for v = a e1 + b e2 + p e3 + q e4,
a = -<v,e2>, b = -<v,e1>, p = -<v,e4>, q = -<v,e3>.
"""
import math
from dataclasses import dataclass, field, replace

import numpy as np

from config.settings import FRAME_VALIDITY_TOLERANCE, LAGRANGIAN_THRESHOLD
from src.algebra.indefinite_algebra import j_apply, real_inner
from src.calculus.finite_difference import SECOND_ORDER, derivative, partial
from src.errors import ConsistencyError, FrameDegeneracyError


@dataclass(frozen=True, eq=False)
class FramePoint:
    """All frame data at one point; later stages fill the optional parts"""

    at: tuple
    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray
    e4: np.ndarray
    alpha: float
    form: object = None
    position: np.ndarray = None
    second: dict = None
    h3: np.ndarray = None
    h4: np.ndarray = None
    h3_yx: float = None
    h4_yx: float = None
    tangent_coeff: dict = field(default_factory=dict)
    position_coeff: dict = field(default_factory=dict)
    vertical_coeff: dict = field(default_factory=dict)
    omega1: float = None
    omega2: float = None
    phi1: float = None
    phi2: float = None

    @property
    def sinh_alpha(self):
        return math.sinh(self.alpha)

    @property
    def cosh_alpha(self):
        return math.cosh(self.alpha)

    # Minimal-case coefficients: h(e1,e1) = beta e3 + gamma e4,
    # h(e2,e2) = lambda e3 + mu e4
    @property
    def beta(self):
        return self.h3[0, 0]

    @property
    def gamma(self):
        return self.h4[0, 0]

    @property
    def lambda_(self):
        return self.h3[1, 1]

    @property
    def mu(self):
        return self.h4[1, 1]

    def h(self, j, k):
        """h(e_j, e_k) as a vector, j and k in {0, 1}"""
        return self.h3[j, k] * self.e3 + self.h4[j, k] * self.e4


def _horizontal(form, position, v):
    """Remove the components of v along the position vector and the fiber iL"""
    fiber = j_apply(position)
    norm = real_inner(form, position, position)
    v = v - (real_inner(form, v, position) / norm) * position
    return v - (real_inner(form, v, fiber) / norm) * fiber


def frame_at(immersion, at, scheme):
    """Pseudo-orthonormal tangents, Wirtinger angle and adapted normal frame"""
    space = immersion.ambient
    form = space.form
    x, y = at
    e1 = np.asarray(partial(immersion, "x", at, scheme))
    e2 = np.asarray(partial(immersion, "y", at, scheme))
    position = None
    if space.is_lift:
        position = np.asarray(immersion.evaluate(x, y))
        e1 = _horizontal(form, position, e1)
        e2 = _horizontal(form, position, e2)

    for product, value, expected in (
        ("<e1,e1>", real_inner(form, e1, e1), 0.0),
        ("<e2,e2>", real_inner(form, e2, e2), 0.0),
        ("<e1,e2>", real_inner(form, e1, e2), -1.0),
    ):
        if not abs(value - expected) <= FRAME_VALIDITY_TOLERANCE:
            raise FrameDegeneracyError(product, value, expected, at)

    sinh_alpha = -real_inner(form, j_apply(e1), e2)
    alpha = math.asinh(sinh_alpha)
    sech = 1.0 / math.cosh(alpha)
    e3 = sech * (j_apply(e1) - sinh_alpha * e1)
    e4 = sech * (j_apply(e2) + sinh_alpha * e2)
    return FramePoint(at=(x, y), e1=e1, e2=e2, e3=e3, e4=e4, alpha=alpha, form=form, position=position)


def _decompose(form, frame, vector):
    """Coefficients of vector in the basis e1, e2, e3, e4 (plus L, iL for lifts)"""
    p = q = None
    if frame.position is not None:
        fiber = j_apply(frame.position)
        norm = real_inner(form, frame.position, frame.position)
        p = real_inner(form, vector, frame.position) / norm
        q = real_inner(form, vector, fiber) / norm
        vector = vector - p * frame.position - q * fiber
    a = -real_inner(form, vector, frame.e2)
    b = -real_inner(form, vector, frame.e1)
    c3 = -real_inner(form, vector, frame.e4)
    c4 = -real_inner(form, vector, frame.e3)
    return (a, b), c3, c4, p, q


def second_fundamental_form_at(immersion, frame, at, scheme):
    """Split the second partials into tangential, normal and (for lifts) L, iL parts"""
    form = immersion.ambient.form
    pairing = real_inner(form, frame.e3, frame.e4)
    if not abs(pairing + 1.0) <= FRAME_VALIDITY_TOLERANCE:
        raise ConsistencyError(f"normal pairing <e3,e4> = {pairing!r} at {at}")

    second = {which: np.asarray(partial(immersion, which, at, scheme)) for which in SECOND_ORDER}
    tangent_coeff, position_coeff, vertical_coeff = {}, {}, {}
    n3, n4 = {}, {}
    for which, vector in second.items():
        tangent_coeff[which], n3[which], n4[which], p, q = _decompose(form, frame, vector)
        if p is not None:
            position_coeff[which] = p
            vertical_coeff[which] = q

    h3 = np.array([[n3["xx"], n3["xy"]], [n3["xy"], n3["yy"]]])
    h4 = np.array([[n4["xx"], n4["xy"]], [n4["xy"], n4["yy"]]])
    return replace(
        frame,
        second=second,
        h3=h3,
        h4=h4,
        h3_yx=n3["yx"],
        h4_yx=n4["yx"],
        tangent_coeff=tangent_coeff,
        position_coeff=position_coeff,
        vertical_coeff=vertical_coeff,
    )


def mean_curvature_at(frame):
    """H = (1/2) trace h = -h(e1, e2) for the metric -dx dy - dy dx"""
    return -frame.h(0, 1)


def normal_frame_derivative(immersion, at, scheme, axis):
    """d e3 / d axis by differences of the e3 field at the field step"""

    def e3_field(u, v):
        return frame_at(immersion, (u, v), scheme).e3

    return derivative(e3_field, at, axis, scheme.field_step, scheme.field_levels)


def connection_forms_at(immersion, at, scheme, frame=None):
    """(omega1, omega2, phi1, phi2) with omega_j = -<d_j e1, e2>, Phi_j = -<D_j e3, e4>"""
    form = immersion.ambient.form
    if frame is None:
        frame = frame_at(immersion, at, scheme)
    if frame.second is not None:
        psi_xx, psi_xy = frame.second["xx"], frame.second["xy"]
    else:
        psi_xx = partial(immersion, "xx", at, scheme)
        psi_xy = partial(immersion, "xy", at, scheme)
    omega1 = -real_inner(form, psi_xx, frame.e2)
    omega2 = -real_inner(form, psi_xy, frame.e2)
    phi1 = -real_inner(form, normal_frame_derivative(immersion, at, scheme, "x"), frame.e4)
    phi2 = -real_inner(form, normal_frame_derivative(immersion, at, scheme, "y"), frame.e4)
    return omega1, omega2, phi1, phi2


def full_frame_at(immersion, at, scheme):
    """frame_at + second_fundamental_form_at + connection_forms_at"""
    frame = frame_at(immersion, at, scheme)
    frame = second_fundamental_form_at(immersion, frame, at, scheme)
    omega1, omega2, phi1, phi2 = connection_forms_at(immersion, at, scheme, frame)
    return replace(frame, omega1=omega1, omega2=omega2, phi1=phi1, phi2=phi2)


def shape_operator(frame, normal):
    """2x2 matrix M with A_normal e_j = M[0,j] e1 + M[1,j] e2 (normal index 3 or 4)"""
    # <h(e_j,e_k), e3> = -h4_jk and <h(e_j,e_k), e4> = -h3_jk
    h = frame.h4 if normal == 3 else frame.h3
    return np.array([[h[0, 1], h[1, 1]], [h[0, 0], h[1, 0]]])


def _pair_tangent(matrix, j, k):
    """<A e_j, e_k> from the shape-operator matrix"""
    # <a e1 + b e2, e1> = -b and <a e1 + b e2, e2> = -a
    return -matrix[1 - k, j]


def frame_compatibility_residuals(frame, alpha_x, alpha_y, threshold=LAGRANGIAN_THRESHOLD):
    """
    Residuals relating the angle, shape operators and connection forms.

    Returns a dict of absolute residuals. The coth-based pair is None
    (skipped) within `threshold` of the Lagrangian locus |sinh alpha| = 0.
    """
    residuals = {}
    alpha_d = (alpha_x, alpha_y)
    omega = (frame.omega1, frame.omega2)
    phi = (frame.phi1, frame.phi2)
    tanh_alpha = math.tanh(frame.alpha)
    raw = {(0, 0): "xx", (0, 1): "xy", (1, 0): "yx", (1, 1): "yy"}

    form = frame.form
    if frame.second is not None:
        for normal, vector in ((3, frame.e3), (4, frame.e4)):
            matrix = shape_operator(frame, normal)
            worst = 0.0
            for (j, k), which in raw.items():
                paired = real_inner(form, frame.second[which], vector)
                worst = max(worst, abs(_pair_tangent(matrix, j, k) - paired))
            residuals[f"shape_duality_e{normal}"] = worst

    h3, h4 = frame.h3, frame.h4
    residuals["angle_derivative_x"] = abs(alpha_x - (h4[0, 1] - h3[0, 0]))
    residuals["angle_derivative_y"] = abs(alpha_y - (h4[1, 1] - h3[0, 1]))

    for j, axis in enumerate("xy"):
        expected = (h3[0, j] + h4[j, 1]) * tanh_alpha
        residuals[f"connection_difference_{axis}"] = abs(omega[j] - phi[j] - expected)

    for j, axis in enumerate("xy"):
        name = f"connection_coth_{axis}"
        if abs(frame.sinh_alpha) > threshold:
            predicted = (omega[j] - phi[j]) / tanh_alpha - 2.0 * h3[0, j]
            residuals[name] = abs(alpha_d[j] - predicted)
        else:
            residuals[name] = None
    return residuals
