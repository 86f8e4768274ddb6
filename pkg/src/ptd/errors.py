"""Exception hierarchy shared by the closed-form and oracle modules."""


class PTDError(Exception):
    """Base class for all errors raised by ptd."""


class DomainError(PTDError, ValueError):
    """An argument lies outside the domain of the function."""


class NoBoundStateError(PTDError):
    """The requested label does not correspond to a normalizable state.

    ``bracket`` is the value of ``sqrt(1 + 4 delta) - k - 4 n_r`` (twice the
    decay exponent); it is ``<= 0`` whenever this is raised.
    """

    def __init__(self, message, bracket):
        super().__init__(message)
        self.bracket = bracket


class DivergentNormError(PTDError):
    """The normalization (or expectation) integral does not converge."""


class InapplicableError(PTDError):
    """A formula is used outside the range where it is defined."""


class UnsupportedShapeError(PTDError):
    """The Nikiforov-Uvarov engine cannot handle this sigma polynomial."""


class InconsistentParameterError(PTDError):
    """The radicand is not a perfect square for the supplied t."""


class EigenvalueNotFoundError(PTDError):
    """The well does not support the requested number of bound states."""

    def __init__(self, message, max_nodes):
        super().__init__(message)
        self.max_nodes = max_nodes


class ToleranceNotMetError(PTDError):
    """Adaptive quadrature gave up before reaching the requested tolerance."""

    def __init__(self, message, estimate):
        super().__init__(message)
        self.estimate = estimate
