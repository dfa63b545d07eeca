"""Exception and warning types raised by exparc."""


class ExparcError(Exception):
    """Base class for all exparc errors."""


class StateSchemaError(ExparcError, ValueError):
    """Input state or request does not satisfy its schema or invariants."""


class DomainError(ExparcError, ValueError):
    """A mathematical operation was requested outside its domain."""


class NotHermitianError(DomainError):
    pass


class NegativeSpectrumError(DomainError):
    pass


class SingularSupportError(DomainError):
    """An operation needed a strictly positive spectrum but hit a zero eigenvalue."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class FaithfulnessError(DomainError):
    """The reference state is not faithful (singular density or zero probability)."""


class DegenerateArcError(DomainError):
    pass


class DivergentDerivativeError(DomainError):
    """A one-sided derivative at an arc endpoint is infinite."""


class NotInvertibleError(DomainError):
    pass


class NotExtendableError(DomainError):
    pass


class InfiniteDivergenceError(DomainError):
    pass


class GeneratorUndefinedError(DomainError):
    pass


class ConeMembershipError(DomainError):
    """A vector was required to lie in a cone but does not."""


class EigenConvergenceError(ExparcError, ArithmeticError):
    pass


class ArcDiscontinuityWarning(UserWarning):
    """The arc is evaluated at t=0 while the target has zeros on the reference support."""
