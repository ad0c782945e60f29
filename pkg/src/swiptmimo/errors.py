"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Malformed numerical input (non-finite entries, negative budgets, ...)."""


class UnsupportedConfigError(ValueError):
    """Configuration outside the regime the closed-form machinery covers."""


class NumericalError(RuntimeError):
    """A linear-algebra step failed unexpectedly (singular system, ...)."""


class PreconditionError(ValueError):
    """A special-case formula was evaluated outside its validity regime."""


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its iteration budget.

    Carries the last iterate so callers can inspect how close it got.
    """

    def __init__(self, message, p=None, p_bs=None, rate=None, residual=None,
                 iterations=None):
        super().__init__(message)
        self.p = p
        self.p_bs = p_bs
        self.rate = rate
        self.residual = residual
        self.iterations = iterations


class ConfigError(ValueError):
    """Config-file parse or validation failure, with field/line context."""

    def __init__(self, message, field=None, line=None):
        parts = []
        if field is not None:
            parts.append(f"field '{field}'")
        if line is not None:
            parts.append(f"line {line}")
        suffix = f" ({', '.join(parts)})" if parts else ""
        super().__init__(message + suffix)
        self.field = field
        self.line = line
