"""
Acceptance run for the Lorentzian Surface Workbench
Sweeps every shipped family on the default grid and checks the documented bounds
"""
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

# Add project root to path
project_root = Path(__file__).parent
sys.path.append(str(project_root))

from config.settings import DEFAULT_GRID, WORKERS
from src.algebra.ambient_space import AmbientSpace, curvature
from src.algebra.indefinite_algebra import hermitian_form, j_apply, real_inner
from src.analysis.report import GridSpec
from src.analysis.structure_verifier import codazzi_residuals, point_residuals, verify_family
from src.calculus.expressions import eval_dual, parse_expr
from src.calculus.finite_difference import FdScheme
from src.families.surface_families import (
    build_c21_slant_surface,
    build_c21_surface,
    build_ch21_lift,
    build_cp21_lift,
)
from src.geometry.surface_calculus import (
    frame_at,
    frame_compatibility_residuals,
    full_frame_at,
    second_fundamental_form_at,
)

GRID = GridSpec.parse(DEFAULT_GRID, FdScheme())
REPORTS = {}
SAFE_FUNCTIONS = ["sin", "cos", "atan", "tanh", "asinh", "exp", "sinh", "cosh"]


def report_for(key, build):
    if key not in REPORTS:
        REPORTS[key] = verify_family(build(), GRID, workers=WORKERS)
    return REPORTS[key]


def check_bounds(report, bounds):
    """bounds: list of (label, residual names, limit)"""
    ok = True
    for label, names, limit in bounds:
        worst = max(report.entry(name).max for name in names)
        mark = "✅" if worst < limit else "❌"
        print(f"{mark} {label}: max {worst:.3e} (< {limit:.0e})")
        ok = ok and worst < limit
    return ok


def grid_max(fn):
    return max(fn(x, y) for x, y in GRID.points())


def test_c21_family():
    """Minimal flat C^2_1 surface with alpha = 0.3 sin(y), f = y^2"""
    print("🧮 C^2_1 family (alpha=0.3*sin(y), f=y^2)...")
    print("-" * 40)
    report = report_for("thm51", lambda: build_c21_surface("0.3*sin(y)", "y^2"))
    return check_bounds(report, [
        ("metric", ["metric_xx", "metric_yy", "metric_xy"], 1e-8),
        ("mean curvature", ["minimality"], 1e-7),
        ("Wirtinger angle", ["wirtinger"], 1e-7),
        ("angle PDE", ["pde_alpha"], 1e-6),
        ("Codazzi", ["codazzi_beta", "codazzi_gamma", "codazzi_lambda", "codazzi_mu"], 1e-5),
        ("Gauss", ["gauss"], 1e-6),
    ]) and report.passed


def test_slant_family():
    """Constant slant angle and the theta = 0 specialization"""
    print("\n📐 Slant family (theta=0.7, f=sin(y))...")
    print("-" * 40)
    scheme = GRID.scheme
    slant = build_c21_slant_surface(0.7, "sin(y)")
    angle = grid_max(lambda x, y: abs(frame_at(slant, (x, y), scheme).alpha - 0.7))
    print(f"{'✅' if angle < 1e-8 else '❌'} |alpha - 0.7|: max {angle:.3e}")

    general = build_c21_surface("0", "sin(y)")
    flat_slant = build_c21_slant_surface(0.0, "sin(y)")
    gap = grid_max(lambda x, y: float(np.max(np.abs(general.evaluate(x, y) - flat_slant.evaluate(x, y)))))
    print(f"{'✅' if gap < 1e-10 else '❌'} theta=0 vs alpha=0 surface: max {gap:.3e}")
    return angle < 1e-8 and gap < 1e-10


def lift_bounds(gauss_label):
    return [
        ("membership", ["membership"], 1e-12),
        ("horizontality", ["horizontality_x", "horizontality_y"], 1e-8),
        ("metric", ["metric_xx", "metric_yy", "metric_xy"], 1e-8),
        ("minimality", ["minimality"], 1e-7),
        ("lift ODE", ["lift_ode_xx", "lift_ode_xy", "lift_ode_yy"], 1e-6),
        ("Lagrangian", ["wirtinger"], 1e-8),
        (gauss_label, ["gauss"], 1e-5),
    ]


def test_cp21_lift():
    """Lagrangian lift into S^5_2(1)"""
    print("\n🌐 CP^2_1 lift (a=1)...")
    print("-" * 40)
    report = report_for("thm61", lambda: build_cp21_lift(1.0))
    ok = check_bounds(report, lift_bounds("|gamma lambda + 1|")) and report.passed

    for a in (0.8, 1.25):
        lift = build_cp21_lift(a)
        frame = second_fundamental_form_at(lift, frame_at(lift, (0.0, 0.0), GRID.scheme), (0.0, 0.0), GRID.scheme)
        gap = abs(frame.lambda_ + a ** 3)
        print(f"{'✅' if gap < 1e-4 else '❌'} a={a}: |lambda + a^3| = {gap:.3e}")
        ok = ok and gap < 1e-4
    return ok


def test_ch21_lift():
    """Lagrangian lift into H^5_2(-1)"""
    print("\n🌐 CH^2_1 lift (a=1)...")
    print("-" * 40)
    report = report_for("thm71", lambda: build_ch21_lift(1.0))
    return check_bounds(report, lift_bounds("|gamma lambda - 1|")) and report.passed


def test_ricci_dependency():
    """Ricci residual dominated by Gauss + Codazzi + PDE"""
    print("\n🔗 Ricci dependency...")
    print("-" * 40)
    ok = True
    for key in ("thm51", "thm61", "thm71"):
        if key not in REPORTS:
            print(f"❌ {key}: no report")
            ok = False
            continue
        entry = REPORTS[key].entry("ricci_dependency")
        mark = "✅" if entry.passed else "❌"
        print(f"{mark} {key}: ricci {entry.max:.3e} <= bound {entry.tolerance:.3e}")
        ok = ok and entry.passed
    return ok


def test_oracles():
    """Dual numbers vs differences, quadrature vs closed form"""
    print("\n🧪 Derivative and quadrature oracles...")
    print("-" * 40)
    rng = np.random.default_rng(7)
    h = 1e-6
    worst = 0.0
    for _ in range(50):
        f1, f2, f3 = rng.choice(SAFE_FUNCTIONS, 3)
        op = rng.choice(["+", "-", "*", "/"])
        right = f"(2 + cos({f3}(y)))" if op == "/" else f"{f3}(y)"
        ast = parse_expr(f"{f1}({f2}(0.5*y)) {op} {right}")
        y = float(rng.uniform(-1.5, 1.5))
        deriv = eval_dual(ast, y)[1]
        numeric = (eval_dual(ast, y + h)[0] - eval_dual(ast, y - h)[0]) / (2 * h)
        worst = max(worst, abs(deriv - numeric) / max(1.0, abs(deriv)))
    print(f"{'✅' if worst < 1e-6 else '❌'} 50 random expressions: relative gap {worst:.3e}")

    general = build_c21_surface("0.7", "sin(y)")
    slant = build_c21_slant_surface(0.7, "sin(y)")
    gap = grid_max(lambda x, y: float(np.max(np.abs(general.evaluate(x, y) - slant.evaluate(x, y)))))
    print(f"{'✅' if gap < 1e-10 else '❌'} quadrature vs closed form: max {gap:.3e}")
    return worst < 1e-6 and gap < 1e-10


def test_kernel_properties():
    """Curvature tensor and Hermitian form identities"""
    print("\n🧷 Kernel properties (100 draws)...")
    print("-" * 40)
    rng = np.random.default_rng(11)
    form = AmbientSpace.ch21_lift().form
    worst = {"antisymmetry": 0.0, "Bianchi": 0.0, "J-invariance": 0.0, "sesquilinearity": 0.0}
    for _ in range(100):
        X, Y, Z, W = (rng.uniform(-1, 1, 3) + 1j * rng.uniform(-1, 1, 3) for _ in range(4))
        c = rng.uniform(-2, 2)
        a = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        R = curvature(c, X, Y, Z, form)
        worst["antisymmetry"] = max(worst["antisymmetry"], np.max(np.abs(R + curvature(c, Y, X, Z, form))))
        bianchi = R + curvature(c, Y, Z, X, form) + curvature(c, Z, X, Y, form)
        worst["Bianchi"] = max(worst["Bianchi"], np.max(np.abs(bianchi)))
        worst["J-invariance"] = max(
            worst["J-invariance"], abs(real_inner(form, j_apply(X), j_apply(W)) - real_inner(form, X, W))
        )
        sesqui = hermitian_form(form, a * X, W + Y) - np.conj(a) * (hermitian_form(form, X, W) + hermitian_form(form, X, Y))
        worst["sesquilinearity"] = max(worst["sesquilinearity"], abs(sesqui))
    for name, value in worst.items():
        print(f"{'✅' if value < 1e-12 else '❌'} {name}: max {value:.3e}")
    return all(value < 1e-12 for value in worst.values())


def test_fault_sensitivity():
    """Injected 1e-3 faults are detected"""
    print("\n🚨 Fault sensitivity...")
    print("-" * 40)
    scheme = GRID.scheme

    def scale_gamma(name, x, y, value):
        return value * (1 + 1e-3 * y) if name == "gamma" else value

    def bend(name, x, y, value):
        return value + 1e-3 if name == "h3_12" else value

    codazzi = codazzi_residuals(build_cp21_lift(1.0), (0.2, 0.3), scheme, perturb=scale_gamma)["codazzi_gamma"]
    minimality = point_residuals(build_c21_surface("0.3*sin(y)", "y^2"), scheme, (0.2, 0.1), perturb=bend)["minimality"]

    frame = full_frame_at(build_c21_slant_surface(0.0, "0"), (0.0, 0.0), scheme)
    h3 = frame.h3.copy()
    h3[0, 0] += 1e-3
    angle = frame_compatibility_residuals(replace(frame, h3=h3), 0.0, 0.0)["angle_derivative_x"]

    ok = True
    for label, value in (("gamma field", codazzi), ("h3 entry", angle), ("minimality", minimality)):
        mark = "✅" if value > 1e-4 else "❌"
        print(f"{mark} {label}: residual {value:.3e}")
        ok = ok and value > 1e-4
    return ok


def run_all_tests():
    """Run all acceptance checks"""
    print("🧪 RUNNING ACCEPTANCE CHECKS")
    print(f"Grid {GRID.text()}, {WORKERS} worker(s)")
    print("=" * 50)

    tests = [
        ("C^2_1 family", test_c21_family),
        ("Slant family", test_slant_family),
        ("CP^2_1 lift", test_cp21_lift),
        ("CH^2_1 lift", test_ch21_lift),
        ("Ricci dependency", test_ricci_dependency),
        ("Oracles", test_oracles),
        ("Kernel properties", test_kernel_properties),
        ("Fault sensitivity", test_fault_sensitivity),
    ]

    passed_tests = 0
    total_tests = len(tests)

    for test_name, test_function in tests:
        try:
            if test_function():
                passed_tests += 1
            else:
                print(f"\n⚠️  {test_name} check failed!")
        except Exception as e:
            print(f"\n❌ {test_name} check error: {e}")

    print("\n" + "=" * 50)
    print("🏁 ACCEPTANCE SUMMARY")
    print("=" * 50)

    if passed_tests == total_tests:
        print(f"🎉 ALL CHECKS PASSED! ({passed_tests}/{total_tests})")
    else:
        print(f"⚠️  CHECKS PASSED: {passed_tests}/{total_tests}")

    return passed_tests == total_tests


if __name__ == "__main__":
    success = run_all_tests()
    exit(0 if success else 1)
