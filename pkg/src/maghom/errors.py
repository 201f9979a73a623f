"""Exception hierarchy shared by all maghom modules."""


class MaghomError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MaghomError):
    """Malformed input text (edge list, graph6 line, certificate file)."""


class ValidationError(MaghomError):
    """Structurally valid input that violates a required precondition."""


class BudgetExceeded(MaghomError):
    """A configured resource cap was hit before the computation finished."""


class CertificateError(MaghomError):
    """A supplied certificate is not valid for the graph it claims to cover."""


class InternalCheckError(MaghomError):
    """Two independent computations of the same quantity disagree."""
