"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SeriesOverflowError(OverflowError):
    """A series shell (or a Pochhammer value) exceeds the double range."""


class SeriesNotConvergedError(RuntimeError):
    """A scalar-returning wrapper hit the shell budget before convergence."""


class SingularTransformError(ValueError):
    """The closed-form Laplace transform is evaluated at a zero of its bracket."""


class TalbotDivergenceError(RuntimeError):
    """Node doubling moved the Talbot quadrature by more than the tolerance."""


class QuadratureError(RuntimeError):
    """Node doubling moved a Gauss-Jacobi quadrature by more than the tolerance."""


class ParameterMismatchError(ValueError):
    """Two parameter sets that must share indices do not."""


class SingularStepError(RuntimeError):
    """The leading coefficient of the implicit time step vanishes."""
