"""Exception hierarchy shared by all modules."""


class CoopIFCError(ValueError):
    """Base class for all domain errors raised by this package."""


class NegativePower(CoopIFCError):
    pass


class NonFinite(CoopIFCError):
    pass


class NotWeakInterference(CoopIFCError):
    """A cross gain exceeds 1 in magnitude where a weak channel is required.

    ``gains`` lists the offending gain names (``"a"`` and/or ``"b"``).
    """

    def __init__(self, message, gains=()):
        super().__init__(message)
        self.gains = tuple(gains)


class NotStrongInterference(CoopIFCError):
    pass


class NotPSD(CoopIFCError):
    pass


class ZeroNoise(CoopIFCError):
    pass


class EmptyInput(CoopIFCError):
    pass


class Unbounded(CoopIFCError):
    pass


class SingularCovariance(CoopIFCError):
    pass


class InsufficientSamples(CoopIFCError):
    pass
