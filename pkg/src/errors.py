"""
Exception hierarchy for the Lorentzian Surface Workbench
"""


class WorkbenchError(Exception):
    """Base class for all workbench errors"""

    def __reduce__(self):
        # Pickle through the constructor arguments
        return (type(self), getattr(self, "_init_args", self.args), self.__dict__)


class DimensionMismatchError(WorkbenchError):
    """Vectors and form disagree on the ambient dimension"""

    def __init__(self, expected, got):
        super().__init__(f"dimension mismatch: expected {expected}, got {got}")
        self._init_args = (expected, got)
        self.expected = expected
        self.got = got


class NoMembershipConstraintError(WorkbenchError):
    """Raised when a lift-only check is asked of the flat ambient"""

    def __init__(self, kind):
        super().__init__(f"no membership constraint for {kind}")
        self._init_args = (kind,)
        self.kind = kind


class ExpressionSyntaxError(WorkbenchError):
    """Malformed expression, unknown identifier or wrong arity"""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self._init_args = (message, offset)
        self.message = message
        self.offset = offset


class ExpressionEvaluationError(WorkbenchError):
    """Domain violation while evaluating an expression"""

    def __init__(self, message, node=None):
        super().__init__(message)
        self._init_args = (message, node)
        self.node = node


class StencilEvaluationError(WorkbenchError):
    """An immersion could not be evaluated at a stencil point"""

    def __init__(self, at, cause):
        super().__init__(f"evaluation failed at (x={at[0]!r}, y={at[1]!r}): {cause}")
        self._init_args = (at, cause)
        self.at = at
        self.cause = cause


class FrameDegeneracyError(WorkbenchError):
    """The tangent pair is not pseudo-orthonormal within the validity tolerance"""

    def __init__(self, product, value, expected, at):
        super().__init__(
            f"frame degenerate at {at}: {product} = {value!r}, expected {expected!r}"
        )
        self._init_args = (product, value, expected, at)
        self.product = product
        self.value = value
        self.at = at


class ConsistencyError(WorkbenchError):
    """Internal consistency failure (should not happen for a valid frame)"""


class QuadratureError(WorkbenchError):
    """Adaptive quadrature did not converge on a subinterval"""

    def __init__(self, lower, upper, detail=""):
        message = f"quadrature did not converge on [{lower!r}, {upper!r}]"
        if detail:
            message += f": {detail}"
        self._init_args = (lower, upper, detail)
        super().__init__(message)
        self.lower = lower
        self.upper = upper


class ParameterError(WorkbenchError):
    """Invalid family parameter"""


class ConfigError(WorkbenchError):
    """Invalid run configuration (grid, scheme, tolerances)"""
