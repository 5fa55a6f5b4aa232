"""
Forward-mode dual numbers for real functions of one variable.
"""
import math

from src.errors import ExpressionEvaluationError


class Dual:
    """value + deriv * eps with eps^2 = 0"""

    __slots__ = ("value", "deriv")

    def __init__(self, value, deriv=0.0):
        self.value = float(value)
        self.deriv = float(deriv)

    @staticmethod
    def variable(value):
        return Dual(value, 1.0)

    @staticmethod
    def lift(other):
        return other if isinstance(other, Dual) else Dual(other)

    def __repr__(self):
        return f"Dual({self.value!r}, {self.deriv!r})"

    def __iter__(self):
        yield self.value
        yield self.deriv

    def __neg__(self):
        return Dual(-self.value, -self.deriv)

    def __add__(self, other):
        other = Dual.lift(other)
        return Dual(self.value + other.value, self.deriv + other.deriv)

    __radd__ = __add__

    def __sub__(self, other):
        other = Dual.lift(other)
        return Dual(self.value - other.value, self.deriv - other.deriv)

    def __rsub__(self, other):
        return Dual.lift(other) - self

    def __mul__(self, other):
        other = Dual.lift(other)
        return Dual(
            self.value * other.value,
            self.deriv * other.value + self.value * other.deriv,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Dual.lift(other)
        if other.value == 0.0:
            raise ExpressionEvaluationError("division by zero")
        q = self.value / other.value
        return Dual(q, (self.deriv - q * other.deriv) / other.value)

    def __rtruediv__(self, other):
        return Dual.lift(other) / self

    def __pow__(self, other):
        other = Dual.lift(other)
        exponent = other.value
        if other.deriv == 0.0 and float(exponent).is_integer():
            n = int(exponent)
            if n == 0:
                return Dual(1.0)
            if self.value == 0.0 and n < 0:
                raise ExpressionEvaluationError("zero to a negative power")
            value = self.value ** n
            return Dual(value, n * self.value ** (n - 1) * self.deriv)
        if self.value <= 0.0:
            raise ExpressionEvaluationError(
                f"non-integer power of non-positive base {self.value!r}"
            )
        value = self.value ** exponent
        log_base = math.log(self.value)
        return Dual(
            value,
            value * (other.deriv * log_base + exponent * self.deriv / self.value),
        )


def _unary(fn, dfn, domain=None, message=None):
    def apply(x):
        x = Dual.lift(x)
        if domain is not None and not domain(x.value):
            raise ExpressionEvaluationError(message.format(x.value))
        try:
            return Dual(fn(x.value), dfn(x.value) * x.deriv)
        except (OverflowError, ValueError) as e:
            raise ExpressionEvaluationError(str(e)) from e
    return apply


sin = _unary(math.sin, math.cos)
cos = _unary(math.cos, lambda v: -math.sin(v))
sinh = _unary(math.sinh, math.cosh)
cosh = _unary(math.cosh, math.sinh)
tanh = _unary(math.tanh, lambda v: 1.0 - math.tanh(v) ** 2)
exp = _unary(math.exp, math.exp)
log = _unary(math.log, lambda v: 1.0 / v, lambda v: v > 0.0, "log of non-positive value {!r}")
sqrt = _unary(math.sqrt, lambda v: 0.5 / math.sqrt(v), lambda v: v > 0.0,
              "sqrt needs a positive argument, got {!r}")
asinh = _unary(math.asinh, lambda v: 1.0 / math.sqrt(1.0 + v * v))
atan = _unary(math.atan, lambda v: 1.0 / (1.0 + v * v))

FUNCTIONS = {
    "sin": sin,
    "cos": cos,
    "sinh": sinh,
    "cosh": cosh,
    "tanh": tanh,
    "exp": exp,
    "log": log,
    "sqrt": sqrt,
    "asinh": asinh,
    "atan": atan,
}
