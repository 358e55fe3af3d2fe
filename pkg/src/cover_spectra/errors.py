"""Exception hierarchy shared by every module of the package."""


class CoverSpectraError(Exception):
    """Base class for all errors raised by this package."""


class InputError(CoverSpectraError, ValueError):
    """Malformed input: bad graph file, bad theta, unknown vertex and so on."""


class CapExceeded(CoverSpectraError):
    """An exponential routine was asked to run above its configured cap."""


# exact arithmetic
class DivideByZero(CoverSpectraError, ZeroDivisionError):
    pass


class NotDivisible(CoverSpectraError, ArithmeticError):
    pass


class ZeroPolynomial(CoverSpectraError, ValueError):
    pass


class DegreeTooLarge(CapExceeded):
    pass


class EndpointIsRoot(CoverSpectraError, ValueError):
    pass


# graphs
class UnknownVertex(InputError, KeyError):
    pass


class SameVertex(InputError):
    pass


class GraphTooLarge(CapExceeded):
    pass


class NonVanishingImaginaryPart(CoverSpectraError, ArithmeticError):
    """The determinant of a Hermitian matrix came out non-real: an internal bug."""


class MissingCycleWeight(InputError, KeyError):
    pass


class FiniteValueUnavailable(CoverSpectraError):
    pass


class PoleAtSample(CoverSpectraError, ZeroDivisionError):
    pass


# structure
class NotInsideCriticalComponent(InputError):
    pass


class FrontierTooLarge(CapExceeded):
    pass


class InvalidCertificate(CoverSpectraError, ValueError):
    pass


class NotAPath(InputError):
    pass


class PreconditionViolated(CoverSpectraError, ValueError):
    pass


class ExhaustedWithoutWitness(CoverSpectraError, RuntimeError):
    """A search whose success is guaranteed by a theorem came back empty.

    This always indicates a bug in the implementation, never a property of
    the input.
    """


class NotCritical(PreconditionViolated):
    pass


class IsATree(PreconditionViolated):
    pass


class Disconnected(PreconditionViolated):
    pass


class AomotoSubsetExists(PreconditionViolated):
    pass


class NotFactorCritical(PreconditionViolated):
    pass


class NotAdjacent(PreconditionViolated):
    pass


# covers / generators
class CoverTooLarge(CapExceeded):
    pass


class BallTooLarge(CapExceeded):
    pass


class RejectionBudgetExceeded(CoverSpectraError, RuntimeError):
    pass


class InvariantViolated(CoverSpectraError, AssertionError):
    """An identity that must hold for every input failed: an internal bug."""
