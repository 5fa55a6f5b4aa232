"""
Structure verification for minimal flat Lorentzian surfaces.

Pointwise residuals of the Gauss, Codazzi and Ricci equations and of the
sinh-Gordon type PDE for the Wirtinger angle, plus grid-level reports.
Coefficient fields (alpha, beta, gamma, lambda, mu, Phi) are differentiated
by central differences at the scheme's field step.
"""
import math
from dataclasses import replace
from functools import partial as bind

import numpy as np

from config.settings import (
    DEPENDENCY_FACTOR,
    DISCRETIZATION_FLOOR,
    MINIMALITY_GATE,
    WORKERS,
)
from src.algebra.ambient_space import curvature, horizontality_residual, membership_residual
from src.algebra.indefinite_algebra import j_apply, real_inner
from src.analysis.report import ResidualEntry, ResidualReport, aggregate, sweep
from src.calculus.finite_difference import derivative, partial
from src.errors import FrameDegeneracyError
from src.geometry.surface_calculus import (
    frame_at,
    frame_compatibility_residuals,
    second_fundamental_form_at,
    shape_operator,
)


class PointAnalyzer:
    """Handles frame extraction around one surface, caching stencil frames"""

    def __init__(self, immersion, scheme, perturb=None):
        self.immersion = immersion
        self.scheme = scheme
        self.perturb = perturb
        self.space = immersion.ambient
        self.form = immersion.ambient.form
        self._frames = {}
        self._shapes = {}
        self._e3_derivatives = {}
        self._phis = {}

    # ==============================================================
    # CACHED FIELDS
    # ==============================================================

    def _disturb(self, name, x, y, value):
        if self.perturb is None:
            return value
        return self.perturb(name, x, y, value)

    def frame(self, x, y):
        key = (x, y)
        if key not in self._frames:
            self._frames[key] = frame_at(self.immersion, key, self.scheme)
        return self._frames[key]

    def shape(self, x, y):
        """Frame with the second fundamental form, faults applied"""
        key = (x, y)
        if key not in self._shapes:
            frame = second_fundamental_form_at(self.immersion, self.frame(x, y), key, self.scheme)
            if self.perturb is not None:
                h3, h4 = frame.h3.copy(), frame.h4.copy()
                h3[0, 0] = self._disturb("beta", x, y, h3[0, 0])
                h4[0, 0] = self._disturb("gamma", x, y, h4[0, 0])
                h3[1, 1] = self._disturb("lambda", x, y, h3[1, 1])
                h4[1, 1] = self._disturb("mu", x, y, h4[1, 1])
                h3[0, 1] = h3[1, 0] = self._disturb("h3_12", x, y, h3[0, 1])
                h4[0, 1] = h4[1, 0] = self._disturb("h4_12", x, y, h4[0, 1])
                frame = replace(frame, h3=h3, h4=h4)
            self._shapes[key] = frame
        return self._shapes[key]

    def alpha(self, x, y):
        return self._disturb("alpha", x, y, self.frame(x, y).alpha)

    def coefficient(self, name):
        getters = {
            "beta": lambda f: f.beta,
            "gamma": lambda f: f.gamma,
            "lambda": lambda f: f.lambda_,
            "mu": lambda f: f.mu,
        }
        get = getters[name]
        return lambda x, y: get(self.shape(x, y))

    def e3_derivative(self, x, y, axis):
        key = (x, y, axis)
        if key not in self._e3_derivatives:
            self._e3_derivatives[key] = self.field_derivative(
                lambda u, v: self.frame(u, v).e3, (x, y), axis
            )
        return self._e3_derivatives[key]

    def phi(self, x, y):
        """(Phi1, Phi2) = -<d_j e3, e4>"""
        key = (x, y)
        if key not in self._phis:
            e4 = self.frame(x, y).e4
            self._phis[key] = tuple(
                -real_inner(self.form, self.e3_derivative(x, y, axis), e4) for axis in "xy"
            )
        return self._phis[key]

    def normal_connection(self, x, y, axis):
        """Normal part of d_axis e3 expanded in e3, e4"""
        frame = self.frame(x, y)
        d = self.e3_derivative(x, y, axis)
        return (
            -real_inner(self.form, d, frame.e4) * frame.e3
            - real_inner(self.form, d, frame.e3) * frame.e4
        )

    def inner(self, u, v):
        return real_inner(self.form, u, v)

    def field_derivative(self, fn, at, which):
        return derivative(fn, at, which, self.scheme.field_step, self.scheme.field_levels)

    def alpha_derivatives(self, at):
        """(alpha_x, alpha_y, alpha_xy)"""
        return tuple(float(self.field_derivative(self.alpha, at, w)) for w in ("x", "y", "xy"))

    # ==============================================================
    # RESIDUALS
    # ==============================================================

    def gauss(self, at):
        """|gamma lambda - alpha_x alpha_y - c(3 sinh^2 alpha - 1)|"""
        frame = self.shape(*at)
        ax, ay, _ = self.alpha_derivatives(at)
        s = math.sinh(self.alpha(*at))
        c = self.space.c
        return abs(frame.gamma * frame.lambda_ - ax * ay - c * (3 * s * s - 1))

    def gauss_general(self, at):
        """<R(e1,e2)e2,e1> + <h11,h22> - <h12,h12> with the ambient curvature tensor"""
        frame = self.shape(*at)
        g = self.inner
        ambient = g(curvature(self.space.c, frame.e1, frame.e2, frame.e2, self.form), frame.e1)
        h11, h12, h22 = frame.h(0, 0), frame.h(0, 1), frame.h(1, 1)
        return abs(ambient + g(h11, h22) - g(h12, h12))

    def codazzi(self, at):
        x, y = at
        frame = self.shape(x, y)
        phi1, phi2 = self.phi(x, y)
        s = math.sinh(self.alpha(x, y))
        ch = math.cosh(self.alpha(x, y))
        twist = 3 * self.space.c * s * ch
        beta_y = self.field_derivative(self.coefficient("beta"), at, "y")
        gamma_y = self.field_derivative(self.coefficient("gamma"), at, "y")
        lambda_x = self.field_derivative(self.coefficient("lambda"), at, "x")
        mu_x = self.field_derivative(self.coefficient("mu"), at, "x")
        return {
            "codazzi_beta": abs(beta_y + frame.beta * phi2 + twist),
            "codazzi_gamma": abs(gamma_y - frame.gamma * phi2),
            "codazzi_lambda": abs(lambda_x + frame.lambda_ * phi1),
            "codazzi_mu": abs(mu_x - frame.mu * phi1 - twist),
        }

    def commutator(self, at):
        """<[A_e3, A_e4] e1, e2> from the extracted shape operators"""
        frame = self.shape(*at)
        a3, a4 = shape_operator(frame, 3), shape_operator(frame, 4)
        bracket = a3 @ a4 - a4 @ a3
        return -bracket[0, 0]

    def ricci(self, at):
        x, y = at
        frame = self.shape(x, y)
        ax, ay, _ = self.alpha_derivatives(at)
        s = math.sinh(self.alpha(x, y))
        c = self.space.c

        phi_path = float(
            self.field_derivative(lambda u, v: self.phi(u, v)[0], at, "y")
            - self.field_derivative(lambda u, v: self.phi(u, v)[1], at, "x")
        )
        curl = (
            self.field_derivative(lambda u, v: self.normal_connection(u, v, "y"), at, "x")
            - self.field_derivative(lambda u, v: self.normal_connection(u, v, "x"), at, "y")
        )
        direct_path = real_inner(self.form, curl, frame.e4)

        ambient = real_inner(self.form, curvature(c, frame.e1, frame.e2, frame.e3, self.form), frame.e4)
        closed_form = c * (3 * s * s + 1)
        return {
            "ricci": abs(phi_path - closed_form - (frame.gamma * frame.lambda_ + ax * ay)),
            "ricci_direct": abs(direct_path - ambient - self.commutator(at)),
            "ricci_consistency": abs(direct_path - phi_path),
            "ricci_ambient": abs(ambient - closed_form),
        }

    def pde(self, at):
        """|alpha_xy - alpha_x alpha_y tanh(alpha) - 3c sinh(alpha) cosh(alpha)|"""
        ax, ay, axy = self.alpha_derivatives(at)
        a = self.alpha(*at)
        return abs(axy - ax * ay * math.tanh(a) - 3 * self.space.c * math.sinh(a) * math.cosh(a))

    def coefficient_identities(self, at):
        """beta = -alpha_x and mu = alpha_y"""
        frame = self.shape(*at)
        ax, ay, _ = self.alpha_derivatives(at)
        return {
            "coefficient_beta": abs(frame.beta + ax),
            "coefficient_mu": abs(frame.mu - ay),
        }

    def c21_relation(self, at):
        frame = self.shape(*at)
        return abs(frame.gamma * frame.lambda_ + frame.beta * frame.mu)

    def frame_residuals(self, at):
        """Metric, normal frame, J identities, angle and minimality at one point"""
        x, y = at
        frame = self.shape(x, y)
        g = self.inner
        e1, e2, e3, e4 = frame.e1, frame.e2, frame.e3, frame.e4
        s, ch = frame.sinh_alpha, frame.cosh_alpha
        je1, je2, je3, je4 = (j_apply(v) for v in (e1, e2, e3, e4))

        out = {
            "metric_xx": abs(g(e1, e1)),
            "metric_yy": abs(g(e2, e2)),
            "metric_xy": abs(g(e1, e2) + 1.0),
            "normal_frame_33": abs(g(e3, e3)),
            "normal_frame_44": abs(g(e4, e4)),
            "normal_frame_34": abs(g(e3, e4) + 1.0),
            "normal_frame_perp": max(abs(g(t, n)) for t in (e1, e2) for n in (e3, e4)),
            # Je1 = sinh(a) e1 + cosh(a) e3, Je2 = -sinh(a) e2 + cosh(a) e4
            "frame_identity_e1": max(
                abs(-g(je1, e2) - s), abs(g(je1, e1)), abs(-g(je1, e4) - ch), abs(g(je1, e3))
            ),
            "frame_identity_e2": max(
                abs(-g(je2, e1) + s), abs(g(je2, e2)), abs(-g(je2, e3) - ch), abs(g(je2, e4))
            ),
            # Je3 = -cosh(a) e1 - sinh(a) e3, Je4 = -cosh(a) e2 + sinh(a) e4
            "frame_identity_e3": max(
                abs(-g(je3, e2) + ch), abs(g(je3, e1)), abs(-g(je3, e4) + s), abs(g(je3, e3))
            ),
            "frame_identity_e4": max(
                abs(-g(je4, e1) + ch), abs(g(je4, e2)), abs(-g(je4, e3) - s), abs(g(je4, e4))
            ),
        }
        expected = self.immersion.expected_alpha(x, y)
        out["wirtinger"] = None if expected is None else abs(self.alpha(x, y) - expected)
        out["minimality"] = max(abs(frame.h3[0, 1]), abs(frame.h4[0, 1]))
        out["h_symmetry"] = max(abs(frame.h3[0, 1] - frame.h3_yx), abs(frame.h4[0, 1] - frame.h4_yx))
        return out

    def connection_residuals(self, at):
        """omega = 0 in flat charts, and the angle / connection compatibility set"""
        x, y = at
        frame = self.shape(x, y)
        omega1 = -real_inner(self.form, frame.second["xx"], frame.e2)
        omega2 = -real_inner(self.form, frame.second["xy"], frame.e2)
        phi1, phi2 = self.phi(x, y)
        ax, ay, _ = self.alpha_derivatives(at)
        enriched = replace(frame, omega1=omega1, omega2=omega2, phi1=phi1, phi2=phi2)
        out = {"omega_x": abs(omega1), "omega_y": abs(omega2)}
        out.update(frame_compatibility_residuals(enriched, ax, ay))
        return out

    def lift_residuals(self, at):
        x, y = at
        position = self.frame(x, y).position
        psi_x = partial(self.immersion, "x", at, self.scheme)
        psi_y = partial(self.immersion, "y", at, self.scheme)
        return {
            "membership": abs(membership_residual(self.space, position)),
            "horizontality_x": abs(horizontality_residual(self.space, position, psi_x)),
            "horizontality_y": abs(horizontality_residual(self.space, position, psi_y)),
        }


# ==============================================================
# POINT OPERATIONS
# ==============================================================

def gauss_residual(immersion, at, scheme, perturb=None):
    return PointAnalyzer(immersion, scheme, perturb).gauss(at)


def codazzi_residuals(immersion, at, scheme, perturb=None):
    return PointAnalyzer(immersion, scheme, perturb).codazzi(at)


def ricci_residual(immersion, at, scheme, perturb=None):
    """Ricci residual through the Phi derivatives"""
    return PointAnalyzer(immersion, scheme, perturb).ricci(at)["ricci"]


def ricci_residuals(immersion, at, scheme, perturb=None):
    """Both Ricci paths, their consistency and the ambient curvature cross-check"""
    return PointAnalyzer(immersion, scheme, perturb).ricci(at)


def pde_residual(immersion, at, scheme, perturb=None):
    return PointAnalyzer(immersion, scheme, perturb).pde(at)


def c21_gauss_relation(immersion, at, scheme, perturb=None):
    """|gamma lambda + beta mu| for surfaces in flat C^2_1"""
    return PointAnalyzer(immersion, scheme, perturb).c21_relation(at)


def point_residuals(immersion, scheme, at, perturb=None):
    """Every applicable residual at one point; None marks a skipped check"""
    analyzer = PointAnalyzer(immersion, scheme, perturb)
    out = analyzer.frame_residuals(at)
    out.update(analyzer.connection_residuals(at))
    out.update(analyzer.coefficient_identities(at))
    out["gauss"] = analyzer.gauss(at)
    out["gauss_general"] = analyzer.gauss_general(at)
    out.update(analyzer.codazzi(at))
    out.update(analyzer.ricci(at))
    out["pde_alpha"] = analyzer.pde(at)
    out["c21_gauss_relation"] = None if immersion.ambient.is_lift else analyzer.c21_relation(at)
    if immersion.ambient.is_lift:
        out.update(analyzer.lift_residuals(at))
    out.update(immersion.extra_residuals(at, scheme))
    return out


def _gate_residuals(immersion, scheme, at):
    try:
        frame = second_fundamental_form_at(
            immersion, frame_at(immersion, at, scheme), at, scheme
        )
    except FrameDegeneracyError:
        return {"frame_valid": math.inf, "minimality": math.inf}
    return {
        "frame_valid": 0.0,
        "minimality": max(abs(frame.h3[0, 1]), abs(frame.h4[0, 1])),
    }


def _dependency_point(immersion, scheme, at):
    analyzer = PointAnalyzer(immersion, scheme)
    out = {"pde_alpha": analyzer.pde(at), "gauss": analyzer.gauss(at)}
    out.update(analyzer.codazzi(at))
    out["ricci"] = analyzer.ricci(at)["ricci"]
    return out


# ==============================================================
# GRID OPERATIONS
# ==============================================================

def dependency_entry(entries):
    """Ricci max against factor * (gauss + codazzi + pde) + floor"""
    by_name = {e.name: e for e in entries}
    if "ricci" not in by_name:
        return None
    codazzi = max((e.max for e in entries if e.name.startswith("codazzi_")), default=0.0)
    gauss = by_name["gauss"].max if "gauss" in by_name else 0.0
    pde = by_name["pde_alpha"].max if "pde_alpha" in by_name else 0.0
    ricci = by_name["ricci"]
    return ResidualEntry(
        name="ricci_dependency",
        max=ricci.max,
        mean=ricci.mean,
        worst_point=ricci.worst_point,
        tolerance=DEPENDENCY_FACTOR * (gauss + codazzi + pde) + DISCRETIZATION_FLOOR,
    )


def _report(immersion, grid, entries, applicable=True):
    return ResidualReport(
        family=immersion.label,
        params=dict(immersion.params),
        grid=grid.text(),
        scheme=grid.scheme.as_dict(),
        entries=entries,
        applicable=applicable,
    )


def minimal_flat_gate(immersion, grid, workers=1):
    """Frame validity and minimality at every grid point; returns (ok, entries)"""
    points = grid.points()
    rows = sweep(bind(_gate_residuals, immersion, grid.scheme), points, workers)
    gate_tolerances = {"frame_valid": 0.0, "minimality": MINIMALITY_GATE}
    entries = aggregate(points, rows, gate_tolerances)
    return all(e.passed for e in entries), entries


def ricci_dependency_check(immersion, grid, tolerances=None, workers=1):
    """
    Corroborate that the Ricci equation follows from Gauss, Codazzi and the
    angle PDE: the Ricci residual must stay within DEPENDENCY_FACTOR times their
    sum plus DISCRETIZATION_FLOOR. Surfaces failing the minimal-flat gate get a
    report marked not applicable.
    """
    grid.check_domain(getattr(immersion, "domain", None))
    ok, gate_entries = minimal_flat_gate(immersion, grid, workers)
    if not ok:
        return _report(immersion, grid, gate_entries, applicable=False)
    points = grid.points()
    rows = sweep(bind(_dependency_point, immersion, grid.scheme), points, workers)
    entries = aggregate(points, rows, tolerances)
    entries.append(dependency_entry(entries))
    return _report(immersion, grid, entries)


def verify_family(immersion, grid, tolerances=None, workers=None):
    """Full residual sweep; appends the Ricci dependency indicator for minimal surfaces"""
    workers = WORKERS if workers is None else workers
    grid.check_domain(getattr(immersion, "domain", None))
    points = grid.points()
    rows = sweep(bind(point_residuals, immersion, grid.scheme), points, workers)
    entries = aggregate(points, rows, tolerances)
    minimal = next((e for e in entries if e.name == "minimality"), None)
    if minimal is not None and minimal.max <= MINIMALITY_GATE:
        entries.append(dependency_entry(entries))
    return _report(immersion, grid, entries)


def sample_rows(immersion, scheme, at):
    """Position, angle, second fundamental form and |H| indicator at one point"""
    x, y = at
    frame = second_fundamental_form_at(immersion, frame_at(immersion, at, scheme), at, scheme)
    position = np.asarray(immersion.evaluate(x, y))
    row = {"x": x, "y": y}
    for k, z in enumerate(position, start=1):
        row[f"z{k}_re"] = float(z.real)
        row[f"z{k}_im"] = float(z.imag)
    row["alpha"] = frame.alpha
    for name, h in (("h3", frame.h3), ("h4", frame.h4)):
        row[f"{name}_11"] = float(h[0, 0])
        row[f"{name}_12"] = float(h[0, 1])
        row[f"{name}_22"] = float(h[1, 1])
    row["H_norm_indicator"] = max(abs(frame.h3[0, 1]), abs(frame.h4[0, 1]))
    return row
