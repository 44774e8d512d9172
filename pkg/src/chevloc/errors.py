"""Exception hierarchy shared by all modules."""


class ChevlocError(Exception):
    """Base class for every error raised by the package."""


class RankTooSmall(ChevlocError):
    pass


class ProportionalRoots(ChevlocError):
    pass


class NotPrime(ChevlocError):
    pass


class NoIrreducible(ChevlocError):
    pass


class NonUnitInverse(ChevlocError):
    pass


class RingMismatch(ChevlocError):
    pass


class SignInconsistency(ChevlocError):
    pass


class NonIntegralEntry(ChevlocError):
    pass


class GroupTooLarge(ChevlocError):
    pass


class WidthCapExceeded(ChevlocError):
    pass


class NotInBigCell(ChevlocError):
    pass


class DecompositionFailed(ChevlocError):
    pass


class NonUnitTorusParameter(NonUnitInverse):
    pass


class NotASubgroup(ChevlocError):
    pass


class NotFound(ChevlocError):
    pass


class InclusionViolated(ChevlocError):
    pass


class MismatchWithRootSubgroup(ChevlocError):
    pass


class NoA2Subsystem(ChevlocError):
    pass


class IsomorphismFailure(ChevlocError):
    pass


class ParseError(ChevlocError, ValueError):
    pass
