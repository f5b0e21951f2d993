"""Exception types raised across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where a quantity is defined."""


class ConvergenceError(ArithmeticError):
    """A numerical procedure failed to reach its certified accuracy.

    The attained residual is kept on the instance so that callers (and the
    command-line front end) can report it.
    """

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual
