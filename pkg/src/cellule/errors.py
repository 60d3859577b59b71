"""Exception hierarchy shared by every module."""


class CelluleError(Exception):
    """Base class for all library errors."""


class InvalidWeights(CelluleError):
    pass


class UnsupportedType(CelluleError):
    pass


class UnknownGenerator(CelluleError):
    pass


class InfiniteParabolic(CelluleError):
    pass


class BallTooLarge(CelluleError):
    pass


class PreconditionViolated(CelluleError):
    pass


class RadiusTooSmall(CelluleError):
    pass


class NotAntisymmetric(CelluleError):
    pass


class ContextInvalid(CelluleError):
    pass


class OracleDisagreement(CelluleError):
    pass


class StabilizationUnknown(CelluleError):
    pass


class StabilizationWarning(UserWarning):
    pass


class AmbiguousAssignment(CelluleError):
    pass


class NoAssignment(CelluleError):
    pass


class RankUnsupported(CelluleError):
    pass


class BasisMismatch(CelluleError):
    pass
