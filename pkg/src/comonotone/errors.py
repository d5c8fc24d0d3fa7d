"""Exception hierarchy shared by all modules."""


class ComonotoneError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedOrder(ComonotoneError):
    pass


class EmptyRange(ComonotoneError):
    pass


class LengthMismatch(ComonotoneError):
    pass


class DegenerateKnots(ComonotoneError):
    pass


class PatternViolation(ComonotoneError):
    pass


class BadR(ComonotoneError):
    pass


class ZeroPolynomial(ComonotoneError):
    pass


class TooFewCells(ComonotoneError):
    pass


class NotMonotone(ComonotoneError):
    pass


class HypothesisViolation(ComonotoneError):
    pass


class RegimeUnsupported(ComonotoneError):
    pass


class Infeasible(ComonotoneError):
    pass


class Unbounded(ComonotoneError):
    pass


class IterationLimit(ComonotoneError):
    pass


class BadRegime(ComonotoneError):
    pass


class NTooSmall(ComonotoneError):
    pass


class DeltaNotFound(ComonotoneError):
    pass


class InsufficientData(ComonotoneError):
    pass


class CertificationFailed(ComonotoneError):
    pass
