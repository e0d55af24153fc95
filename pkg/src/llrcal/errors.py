"""Exception hierarchy shared by the library and the command line tool."""


class LlrcalError(Exception):
    """Base class for all errors raised by llrcal."""


class DomainError(LlrcalError, ValueError):
    """An argument lies outside the domain of the operation."""


class ScoreFileError(LlrcalError, ValueError):
    """A score or calibration file could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyClassError(DomainError):
    """One of the two trial classes has no scores."""


class InsufficientDataError(DomainError):
    pass


class DegenerateModelError(DomainError):
    """Density queries on the mu=0 model, whose LLR is identically zero."""


class FitError(LlrcalError):
    """Base class for calibration fitting failures."""


class DegenerateVarianceError(FitError):
    pass


class InvertedDetectorError(FitError):
    """Target scores are not larger than non-target scores on average."""


class SeparableDataError(FitError):
    """Targets and non-targets are perfectly separated; logistic regression diverges."""


class ConvergenceError(FitError):
    def __init__(self, message, a=None, b=None, grad_norm=None):
        super().__init__(message)
        self.a = a
        self.b = b
        self.grad_norm = grad_norm


class InconsistentCalibrationError(FitError):
    def __init__(self, message, residuals):
        super().__init__(message)
        self.residuals = residuals


class QuadratureError(LlrcalError, ArithmeticError):
    """Adaptive quadrature did not reach the requested tolerance."""

    def __init__(self, message, estimate, error):
        super().__init__(f"{message} (estimate={estimate!r}, error={error!r})")
        self.estimate = estimate
        self.error = error
