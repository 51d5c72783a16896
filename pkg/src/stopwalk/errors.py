"""Exception hierarchy. Every error carries a stable name used in CLI error JSON."""


class StopwalkError(ValueError):
    """Base class for all validation/computation errors raised by stopwalk."""

    @property
    def code(self) -> str:
        return type(self).__name__


class HorizonExceeded(StopwalkError):
    pass


class OriginNotAccessible(StopwalkError):
    pass


class DegenerateCategoryCount(StopwalkError):
    pass


class EmptyRegion(StopwalkError):
    pass


class DimensionMismatch(StopwalkError):
    pass


class MixedOrder(StopwalkError):
    pass


class EmptyGenerators(StopwalkError):
    pass


class NotOnBoundary(StopwalkError):
    pass


class NotBoundary(StopwalkError):
    pass


class UnknownPoint(StopwalkError):
    pass


class ZeroOrder(StopwalkError):
    pass


class OrderTooSmall(StopwalkError):
    pass


class NotClosedAtHorizon(StopwalkError):
    pass


class EmptyInput(StopwalkError):
    pass


class TooManyNonAbsorbed(StopwalkError):
    pass


class InvalidModel(StopwalkError):
    pass


class InvalidDesign(StopwalkError):
    pass


class NotDecisionStage(StopwalkError):
    pass


class NotStopState(StopwalkError):
    pass
