"""
Configuration settings for the Lorentzian Surface Workbench
"""
import os
from pathlib import Path

from dotenv import load_dotenv

# Project root directory
PROJECT_ROOT = Path(__file__).parent.parent

# Pick up LORENTZ_WORKERS and friends from a local .env if present
load_dotenv(PROJECT_ROOT / ".env")

# Output directories
OUTPUT_DIR = PROJECT_ROOT / "output"
REPORTS_DIR = OUTPUT_DIR / "reports"
SAMPLES_DIR = OUTPUT_DIR / "samples"

# Sampling grid: "xmin:xmax:nx,ymin:ymax:ny"
DEFAULT_GRID = "-1:1:21,-1:1:21"

# Finite-difference scheme
DEFAULT_SCHEME = {
    'base_step': 1e-3,
    'richardson_levels': 2,
    'field_step_factor': 10,
    'field_levels': 1,
}
MAX_RICHARDSON_LEVELS = 4

# Frame extraction gates
FRAME_VALIDITY_TOLERANCE = 1e-4
MINIMALITY_GATE = 1e-4
LAGRANGIAN_THRESHOLD = 1e-6

# Cumulative quadrature for the C^2_1 family integrals
QUADRATURE = {
    'tolerance': 1e-10,
    'segment': 0.25,
    'limit': 200,
}

# Ricci dependency indicator: ricci <= factor * (gauss + codazzi + pde) + floor
DEPENDENCY_FACTOR = 10.0
DISCRETIZATION_FLOOR = 1e-6

# Maximum accepted value per residual name. Names ending in "_*" cover a
# whole group (e.g. codazzi_beta, codazzi_gamma, ...).
TOLERANCES = {
    'metric_*': 1e-8,
    'normal_frame_*': 1e-7,
    'frame_identity_*': 1e-7,
    'wirtinger': 1e-8,
    'minimality': 1e-7,
    'h_symmetry': 1e-8,
    'shape_duality_*': 1e-8,
    'angle_derivative_*': 1e-6,
    'connection_difference_*': 1e-6,
    'connection_coth_*': 1e-5,
    'omega_*': 1e-7,
    'coefficient_beta': 1e-6,
    'coefficient_mu': 1e-6,
    'gauss': 1e-6,
    'gauss_general': 1e-6,
    'codazzi_*': 1e-5,
    'ricci': 1e-5,
    'ricci_direct': 1e-5,
    'ricci_consistency': 1e-5,
    'ricci_ambient': 1e-7,
    'pde_alpha': 1e-6,
    'c21_gauss_relation': 1e-7,
    'membership': 1e-12,
    'horizontality_*': 1e-8,
    'lift_ode_*': 1e-6,
}

# Report output; JSON and CSV both write floats as their shortest round-trip repr
REPORT_FORMAT = {
    'json_indent': 2,
    'float_format': float.__repr__,
}


def worker_count():
    """Number of processes used for grid sweeps"""
    raw = os.getenv("LORENTZ_WORKERS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


WORKERS = worker_count()


# Create directories if they don't exist
def create_directories():
    """Create output directories if they don't exist"""
    directories = [OUTPUT_DIR, REPORTS_DIR, SAMPLES_DIR]
    for directory in directories:
        directory.mkdir(parents=True, exist_ok=True)

if __name__ == "__main__":
    create_directories()
    print("Output directories created successfully!")
