"""
Sampling grids, residual aggregation and report objects.
"""
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import pandas as pd

from config.settings import DEFAULT_GRID, TOLERANCES
from src.calculus.finite_difference import FdScheme
from src.errors import ConfigError

UNICODE_MINUS = "−"


@dataclass(frozen=True)
class Axis:
    lower: float
    upper: float
    count: int

    def values(self):
        return np.linspace(self.lower, self.upper, self.count)

    def text(self):
        return f"{self.lower!r}:{self.upper!r}:{self.count}"


@dataclass(frozen=True)
class Domain:
    """Rectangle a family is restricted to; None bounds mean unbounded"""

    xmin: float = None
    xmax: float = None
    ymin: float = None
    ymax: float = None

    def contains(self, xmin, xmax, ymin, ymax):
        checks = (
            (self.xmin, xmin, lambda bound, v: v >= bound),
            (self.xmax, xmax, lambda bound, v: v <= bound),
            (self.ymin, ymin, lambda bound, v: v >= bound),
            (self.ymax, ymax, lambda bound, v: v <= bound),
        )
        return all(bound is None or ok(bound, v) for bound, v, ok in checks)


def _parse_axis(text, label):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid {label}-axis must be min:max:count, got {text!r}")
    try:
        lower, upper = float(parts[0]), float(parts[1])
    except ValueError:
        raise ConfigError(f"grid {label}-axis bounds are not numbers: {text!r}") from None
    try:
        count = int(parts[2])
    except ValueError:
        raise ConfigError(f"grid {label}-axis count is not an integer: {text!r}") from None
    if not (math.isfinite(lower) and math.isfinite(upper)):
        raise ConfigError(f"grid {label}-axis bounds must be finite")
    if count < 2:
        raise ConfigError(f"grid {label}-axis count must be at least 2, got {count}")
    if not lower < upper:
        raise ConfigError(f"grid {label}-axis needs min < max, got {text!r}")
    return Axis(lower, upper, count)


@dataclass(frozen=True)
class GridSpec:
    """Rectangular sampling grid plus the difference scheme used on it"""

    x: Axis
    y: Axis
    scheme: FdScheme = field(default_factory=FdScheme)

    @classmethod
    def parse(cls, text=DEFAULT_GRID, scheme=None):
        """Parse "xmin:xmax:nx,ymin:ymax:ny" (the Unicode minus sign is accepted)"""
        text = text.replace(UNICODE_MINUS, "-").replace(" ", "")
        axes = text.split(",")
        if len(axes) != 2:
            raise ConfigError(f"grid must be 'xmin:xmax:nx,ymin:ymax:ny', got {text!r}")
        return cls(
            _parse_axis(axes[0], "x"),
            _parse_axis(axes[1], "y"),
            scheme if scheme is not None else FdScheme(),
        )

    def text(self):
        return f"{self.x.text()},{self.y.text()}"

    def points(self):
        """Row-major: outer loop over y, inner loop over x"""
        return [(float(x), float(y)) for y in self.y.values() for x in self.x.values()]

    def footprint_margin(self):
        """How far stencils reach beyond the grid rectangle"""
        reach = self.scheme.base_step + self.scheme.field_step
        return 2.0 * reach

    def check_domain(self, domain):
        if domain is None:
            return
        m = self.footprint_margin()
        if not domain.contains(self.x.lower - m, self.x.upper + m,
                               self.y.lower - m, self.y.upper + m):
            raise ConfigError(f"grid {self.text()} plus stencil margin leaves the domain {domain}")


def tolerance_for(name, tolerances=None):
    """Exact name first, then the longest matching 'prefix_*' group"""
    tolerances = TOLERANCES if tolerances is None else tolerances
    if name in tolerances:
        return tolerances[name]
    best = None
    for key in tolerances:
        if key.endswith("*") and name.startswith(key[:-1]):
            if best is None or len(key) > len(best):
                best = key
    if best is None:
        raise ConfigError(f"no tolerance configured for residual '{name}'")
    return tolerances[best]


@dataclass(frozen=True)
class ResidualEntry:
    name: str
    max: float
    mean: float
    worst_point: tuple
    tolerance: float

    @property
    def passed(self):
        return self.max <= self.tolerance

    def to_dict(self):
        return {
            'name': self.name,
            'max': self.max,
            'mean': self.mean,
            'worst_point': [self.worst_point[0], self.worst_point[1]],
        }


@dataclass
class ResidualReport:
    """Named residual statistics over a grid with pass/fail against tolerances"""

    family: str
    params: dict
    grid: str
    scheme: dict
    entries: list
    applicable: bool = True

    @property
    def tolerances(self):
        return {entry.name: entry.tolerance for entry in self.entries}

    @property
    def passed(self):
        return self.applicable and all(entry.passed for entry in self.entries)

    def entry(self, name):
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(name)

    def names(self):
        return [entry.name for entry in self.entries]

    def failures(self):
        return [entry for entry in self.entries if not entry.passed]

    def to_dict(self):
        return {
            'family': self.family,
            'params': self.params,
            'grid': self.grid,
            'scheme': self.scheme,
            'entries': [entry.to_dict() for entry in self.entries],
            'tolerances': self.tolerances,
            'applicable': self.applicable,
            'pass': self.passed,
        }

    def to_frame(self):
        """Entries as a DataFrame (one row per residual)"""
        return pd.DataFrame(
            [
                {
                    'name': e.name,
                    'max': e.max,
                    'mean': e.mean,
                    'worst_x': e.worst_point[0],
                    'worst_y': e.worst_point[1],
                    'tolerance': e.tolerance,
                    'pass': e.passed,
                }
                for e in self.entries
            ]
        )


def sweep(point_fn, points, workers=1):
    """Evaluate point_fn over points, preserving their order"""
    if workers <= 1 or len(points) < 2:
        return [point_fn(p) for p in points]
    chunksize = max(1, len(points) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(point_fn, points, chunksize=chunksize))


def _clean(value):
    # None marks a skipped residual; a computed NaN is a failure
    if value is None:
        return np.nan
    value = float(value)
    return math.inf if math.isnan(value) else value


def aggregate(points, rows, tolerances=None):
    """Collapse per-point residual dicts into ResidualEntry objects"""
    frame = pd.DataFrame([{k: _clean(v) for k, v in row.items()} for row in rows])
    coords = pd.DataFrame(points, columns=['x', 'y'])
    entries = []
    for name in frame.columns:
        column = frame[name].dropna()
        if column.empty:
            continue
        worst = column.idxmax()
        top = float(column.max())
        entries.append(
            ResidualEntry(
                name=name,
                max=top,
                mean=min(float(column.mean()), top),
                worst_point=(float(coords.at[worst, 'x']), float(coords.at[worst, 'y'])),
                tolerance=float(tolerance_for(name, tolerances)),
            )
        )
    return entries
