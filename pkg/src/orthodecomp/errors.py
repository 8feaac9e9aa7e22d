"""Exception hierarchy shared by every module."""


class OrthoError(ValueError):
    """Base class for invalid input."""


class ValidationError(OrthoError):
    """A decomposition, layering or arrangement fails its axioms."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class CapExceeded(OrthoError):
    """An exact computation or materialization was refused for size."""


class EmptyIntersection(OrthoError):
    pass


class CornerContained(OrthoError):
    pass


class NotNesting(OrthoError):
    pass


class OracleViolation(OrthoError):
    """A child oracle returned a shape that misses one of its parents."""


class Exhausted(OrthoError):
    """A child oracle delivered fewer shapes than the procedure needs."""
