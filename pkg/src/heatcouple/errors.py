"""Exception types shared across the solver stack."""


class ConfigError(ValueError):
    """A simulation configuration violates one of its invariants."""


class DomainError(ValueError):
    """A temperature left the domain of the diffusivity law (T <= 0 with
    a non-integer exponent)."""


class SolverFailure(RuntimeError):
    """Base class for numerical failures raised while advancing a solution."""


class SingularSystemError(SolverFailure):
    """Tridiagonal elimination hit a pivot too small to divide by."""


class BreakdownError(SolverFailure):
    """An internal BiCGSTAB scalar denominator vanished."""


class ConvergenceError(SolverFailure):
    """An iteration (Newton, fixed-point, or Krylov) exhausted its budget."""

    def __init__(self, message: str, iterations: int | None = None):
        super().__init__(message)
        self.iterations = iterations
