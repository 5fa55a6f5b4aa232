"""
Running integrals y -> int_0^y g(t) dt by adaptive Gauss-Kronrod quadrature.

The axis is cut at fixed breakpoints k*segment; whole segments are integrated
once and cached, so sweeping a grid costs one partial segment per point.
"""
import math
import threading

from scipy import integrate

from config.settings import QUADRATURE
from src.errors import QuadratureError


class CumulativeIntegral:
    """int_0^y integrand(t) dt with cached breakpoint segments"""

    def __init__(self, integrand, tolerance=None, segment=None, limit=None):
        self.integrand = integrand
        self.tolerance = QUADRATURE['tolerance'] if tolerance is None else tolerance
        self.segment = QUADRATURE['segment'] if segment is None else segment
        self.limit = QUADRATURE['limit'] if limit is None else limit
        if not self.tolerance > 0:
            raise ValueError("quadrature tolerance must be positive")
        if not self.segment > 0:
            raise ValueError("quadrature segment must be positive")
        self._segments = {}
        self._lock = threading.Lock()

    def __getstate__(self):
        state = self.__dict__.copy()
        del state['_lock']
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.Lock()

    def _quad(self, lower, upper):
        result = integrate.quad(
            self.integrand,
            lower,
            upper,
            epsabs=self.tolerance,
            epsrel=0.0,
            limit=self.limit,
            full_output=1,
        )
        if len(result) > 3:
            raise QuadratureError(lower, upper, result[3])
        value, abserr = result[0], result[1]
        if not math.isfinite(value) or abserr > self.tolerance:
            raise QuadratureError(lower, upper, f"error estimate {abserr!r}")
        return value

    def _whole_segment(self, sign, k):
        key = (sign, k)
        with self._lock:
            cached = self._segments.get(key)
        if cached is not None:
            return cached
        value = self._quad(sign * k * self.segment, sign * (k + 1) * self.segment)
        with self._lock:
            self._segments.setdefault(key, value)
        return value

    def __call__(self, y):
        if y == 0:
            return 0.0
        sign = 1 if y > 0 else -1
        whole = int(math.floor(abs(y) / self.segment))
        total = math.fsum(self._whole_segment(sign, k) for k in range(whole))
        start = sign * whole * self.segment
        if start != y:
            total += self._quad(start, y)
        return total

    def derivative(self, y):
        """d/dy int_0^y g = g(y)"""
        return self.integrand(y)
