"""Exception hierarchy shared by every module."""


class WorkbenchError(Exception):
    """Base class for all errors raised by the package."""


class ModelMismatch(WorkbenchError):
    pass


class KindMismatch(WorkbenchError):
    pass


class UnsupportedModel(WorkbenchError):
    pass


class NotOrthogonal(WorkbenchError):
    """Raised when a partial sum is requested for overlapping summands."""


class NotContained(WorkbenchError):
    pass


class NotJointlyDecidable(WorkbenchError):
    pass


class BadGranularity(WorkbenchError):
    pass


class BadGranularityVector(WorkbenchError):
    pass


class BadDecomposition(WorkbenchError):
    pass


class GranularityMismatch(WorkbenchError):
    pass


class InvalidState(WorkbenchError):
    pass


class ZeroProbabilityCondition(WorkbenchError):
    pass


class OrthogonalPrior(WorkbenchError):
    pass


class WeightOutOfRange(WorkbenchError):
    pass


class ZeroState(WorkbenchError):
    pass


class RankDeficient(WorkbenchError):
    pass


class DegenerateDenominator(WorkbenchError):
    pass


class BadParameter(WorkbenchError):
    pass


class BadNesting(WorkbenchError):
    pass


class RegimeViolation(WorkbenchError):
    pass
