"""Exception hierarchy shared by every fusionkit module."""


class FusionKitError(Exception):
    """Base class for all errors raised by fusionkit."""


class ParseError(FusionKitError):
    """Malformed scalar string or bundle file."""


class DivisionByZero(FusionKitError, ZeroDivisionError):
    pass


class NotReal(FusionKitError):
    pass


class ZeroArgument(FusionKitError):
    pass


class RingMismatch(FusionKitError):
    pass


class ValidationError(FusionKitError):
    """A ring or bundle failed the axioms required by a downstream computation."""


class NotCommutative(FusionKitError):
    pass


class SemisimplicityFailure(FusionKitError):
    pass


class NonIntegerDimension(FusionKitError):
    pass


class InjectivityFailure(FusionKitError):
    pass


class UnmatchedRow(FusionKitError):
    pass


class ConsistencyFailure(FusionKitError):
    pass


class NotPhiFixed(FusionKitError):
    pass


class GaugeFailure(FusionKitError):
    pass


class NonIntegralEntry(FusionKitError):
    pass


class DegenerateEigenproblem(FusionKitError):
    pass
