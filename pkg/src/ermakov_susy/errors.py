"""Exception hierarchy.

Two families matter to callers (and to the CLI exit codes):

* :class:`ParameterError` -- the inputs violate a precondition (exit code 2).
* :class:`NumericalError` -- a computation could not reach its tolerance
  (exit code 3).
"""


class ErmakovSusyError(Exception):
    """Base class for all package errors."""


class ParameterError(ErmakovSusyError, ValueError):
    """Inputs violate a documented precondition."""


class NumericalError(ErmakovSusyError, ArithmeticError):
    """A numerical procedure failed to meet its tolerance."""


class ZeroCrossing(NumericalError):
    """A function that must be zero-free vanishes at ``location``."""

    def __init__(self, location, message=None):
        self.location = float(location)
        super().__init__(message or f"function vanishes near x = {self.location:.17g}")


class NonRealLambda0(ParameterError):
    pass


class NotRealQuadraticForm(ParameterError):
    def __init__(self, location, imag):
        self.location = float(location)
        self.imag = float(imag)
        super().__init__(
            f"a v^2 + b v z + c z^2 is not real: Im = {self.imag:.3e} at x = {self.location:.17g}"
        )


class NotPositive(ParameterError):
    def __init__(self, location, value):
        self.location = float(location)
        self.value = float(value)
        super().__init__(
            f"quadratic form touches zero at x = {self.location:.17g} (value {self.value:.3e})"
        )


class LambdaMismatch(ParameterError):
    pass


class ZeroLambdaBranch(ParameterError):
    """lambda = 0 gives a real superpotential; use the conventional path."""


class ExcludedBranch(ParameterError):
    """lambda0 < 0: purely imaginary lambda, not part of the construction."""


class EnergyBelowFactorization(ParameterError):
    pass


class LambdaOutOfRange(ParameterError):
    pass


class ZeroCrossingRisk(ParameterError):
    pass


class OrderTooLarge(ParameterError):
    pass


class AsymmetricDomain(ParameterError):
    pass


class QuadratureFailure(NumericalError):
    def __init__(self, message, error_estimate=float("nan")):
        self.error_estimate = float(error_estimate)
        super().__init__(f"{message} (error estimate {self.error_estimate:.3e})")


class SeriesNonConvergence(NumericalError):
    pass


class NonFinitePotential(NumericalError):
    def __init__(self, index, x):
        self.index = int(index)
        self.x = float(x)
        super().__init__(f"potential is not finite at grid index {self.index} (x = {self.x:.17g})")


class EigenNoConvergence(NumericalError):
    pass
