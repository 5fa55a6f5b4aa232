"""
Command-line front end for the Lorentzian Surface Workbench

    python -m src.cli.main families
    python -m src.cli.main verify --family thm61 --a 1.0
    python -m src.cli.main verify --family thm51 --alpha "0.3*sin(y)" --f "y^2"
    python -m src.cli.main sample --family geodesic_plane --grid=-1:1:3,-1:1:3

Exit codes: 0 pass, 1 verification failed, 2 usage error, 3 build/runtime error.
"""
import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from functools import partial as bind
from pathlib import Path

import pandas as pd

# Add project root to path
project_root = Path(__file__).parent.parent.parent
sys.path.append(str(project_root))

from config.settings import (
    DEFAULT_GRID,
    DEFAULT_SCHEME,
    QUADRATURE,
    REPORT_FORMAT,
    REPORTS_DIR,
    SAMPLES_DIR,
    TOLERANCES,
    WORKERS,
)
from src.analysis.report import GridSpec, sweep
from src.analysis.structure_verifier import sample_rows, verify_family
from src.calculus.finite_difference import FdScheme
from src.errors import (
    ConfigError,
    ExpressionSyntaxError,
    ParameterError,
    WorkbenchError,
)
from src.families.surface_families import FAMILY_CATALOG, FamilyParams, build_family

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3

USAGE_ERRORS = (ConfigError, ParameterError, ExpressionSyntaxError)


@dataclass
class RunConfig:
    """Everything one CLI invocation needs"""

    command: str
    params: FamilyParams = None
    grid: GridSpec = None
    tolerances: dict = field(default_factory=lambda: dict(TOLERANCES))
    output: Path = None
    workers: int = 1


def status(message):
    print(message, file=sys.stderr)


# ==============================================================
# ARGUMENTS
# ==============================================================

def _add_family_arguments(parser):
    parser.add_argument("--family", required=True, choices=sorted(FAMILY_CATALOG),
                        help="Surface family id (see the 'families' command)")
    parser.add_argument("--alpha", help="Wirtinger angle alpha(y) for thm51, e.g. \"0.3*sin(y)\"")
    parser.add_argument("--f", dest="f", help="Function f(y) for thm51/cor51, e.g. \"y^2\"")
    parser.add_argument("--theta", type=float, help="Constant slant angle for cor51")
    parser.add_argument("--a", type=float, help="Nonzero real parameter for thm61/thm71")
    parser.add_argument("--grid", default=DEFAULT_GRID,
                        help="xmin:xmax:nx,ymin:ymax:ny (use --grid=... for negative bounds)")
    parser.add_argument("--base-step", type=float, default=DEFAULT_SCHEME['base_step'])
    parser.add_argument("--richardson-levels", type=int, default=DEFAULT_SCHEME['richardson_levels'])
    parser.add_argument("--field-step-factor", type=float, default=DEFAULT_SCHEME['field_step_factor'])
    parser.add_argument("--field-levels", type=int, default=DEFAULT_SCHEME['field_levels'])
    parser.add_argument("--quad-tol", type=float, default=QUADRATURE['tolerance'],
                        help="Absolute quadrature tolerance for thm51")
    parser.add_argument("--workers", type=int, default=None,
                        help="Worker processes for grid sweeps (default: LORENTZ_WORKERS or CPU count)")
    parser.add_argument("--output", "-o", type=Path, default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="lorentz-workbench",
        description="Build minimal flat Lorentzian surfaces and verify their structure equations",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="Run the residual sweep and write a JSON report")
    _add_family_arguments(verify)
    verify.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                        help="Override a residual tolerance (repeatable)")

    sample = commands.add_parser("sample", help="Write frame data on the grid as CSV")
    _add_family_arguments(sample)

    commands.add_parser("families", help="List the available surface families")
    return parser


def _tolerances(overrides):
    tolerances = dict(TOLERANCES)
    for item in overrides:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise ConfigError(f"tolerance override must be NAME=VALUE, got {item!r}")
        try:
            tol = float(value)
        except ValueError:
            raise ConfigError(f"tolerance for {name} is not a number: {value!r}") from None
        if not (math.isfinite(tol) and tol > 0):
            raise ConfigError(f"tolerance for {name} must be positive, got {value!r}")
        tolerances[name] = tol
    return tolerances


def config_from_args(args):
    """Validate parsed arguments into a RunConfig"""
    if args.command == "families":
        return RunConfig(command="families")

    if args.quad_tol is not None and not args.quad_tol > 0:
        raise ConfigError("quadrature tolerance must be positive")
    scheme = FdScheme(
        base_step=args.base_step,
        richardson_levels=args.richardson_levels,
        field_step_factor=args.field_step_factor,
        field_levels=args.field_levels,
    )
    params = FamilyParams(
        family=args.family,
        alpha=args.alpha,
        f=args.f,
        theta=args.theta,
        a=args.a,
        quadrature_tolerance=args.quad_tol,
    )
    workers = WORKERS if args.workers is None else args.workers
    if workers < 1:
        raise ConfigError("workers must be at least 1")

    if args.command == "verify":
        output = args.output or REPORTS_DIR / f"{args.family}_report.json"
        tolerances = _tolerances(args.tol)
    else:
        output = args.output or SAMPLES_DIR / f"{args.family}_sample.csv"
        tolerances = dict(TOLERANCES)

    return RunConfig(
        command=args.command,
        params=params,
        grid=GridSpec.parse(args.grid, scheme),
        tolerances=tolerances,
        output=Path(output),
        workers=workers,
    )


# ==============================================================
# COMMANDS
# ==============================================================

def _json_safe(value):
    """Non-finite floats become strings; everything else passes through"""
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def report_json(report):
    return json.dumps(
        _json_safe(report.to_dict()), indent=REPORT_FORMAT['json_indent'], allow_nan=False
    ) + "\n"


def run_verify(config):
    """Build the family, sweep every residual and write the JSON report"""
    immersion = build_family(config.params)
    status(f"🔍 Verifying {immersion.label} on grid {config.grid.text()}")
    report = verify_family(immersion, config.grid, config.tolerances, config.workers)
    report.params = _json_safe(config.params.as_dict())
    report.family = config.params.family

    config.output.parent.mkdir(parents=True, exist_ok=True)
    config.output.write_text(report_json(report), encoding="utf-8")
    status(f"📁 Report written to {config.output}")
    return report


def run_sample(config):
    """Write x, y, position, alpha, h3, h4 and the |H| indicator per grid point"""
    immersion = build_family(config.params)
    config.grid.check_domain(immersion.domain)
    status(f"📊 Sampling {immersion.label} on grid {config.grid.text()}")
    points = config.grid.points()
    rows = sweep(bind(sample_rows, immersion, config.grid.scheme), points, config.workers)
    frame = pd.DataFrame(rows)

    config.output.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(config.output, index=False, float_format=REPORT_FORMAT['float_format'])
    status(f"📁 {len(frame)} rows written to {config.output}")
    return config.output


def run_families():
    """Family ids, required parameters and the result each realizes"""
    lines = []
    for info in FAMILY_CATALOG.values():
        params = ", ".join(info.params) if info.params else "(none)"
        lines.append(f"{info.family:<16} params: {params:<12} ambient: {info.ambient:<11} {info.realizes}")
    return "\n".join(lines)


def _print_summary(report):
    status("=" * 40)
    for entry in report.entries:
        mark = "✅" if entry.passed else "❌"
        status(f"{mark} {entry.name:<26} max={entry.max:.3e} tol={entry.tolerance:.1e}")
    status("=" * 40)
    if report.passed:
        status("🎉 All residuals within tolerance")
    else:
        status(f"⚠️  {len(report.failures())} residual(s) above tolerance")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        config = config_from_args(args)
        if config.command == "families":
            print(run_families())
            return EXIT_PASS
        if config.command == "sample":
            run_sample(config)
            return EXIT_PASS
        report = run_verify(config)
    except USAGE_ERRORS as e:
        status(f"❌ {e}")
        return EXIT_USAGE
    except (WorkbenchError, ArithmeticError, ValueError) as e:
        status(f"❌ {type(e).__name__}: {e}")
        return EXIT_RUNTIME

    _print_summary(report)
    return EXIT_PASS if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
