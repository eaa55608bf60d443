"""Exception taxonomy shared by every revmark module.

The CLI prints the class name of whatever it catches, so names are part of
the user-facing contract.
"""


class RevmarkError(Exception):
    """Base class for all library errors."""


class MalformedFile(RevmarkError):
    pass


class IoFailure(RevmarkError):
    pass


class DimensionMismatch(RevmarkError):
    pass


class OddLength(RevmarkError):
    pass


class LengthMismatch(RevmarkError):
    pass


class OddDimensions(RevmarkError):
    pass


class ThresholdOutOfRange(RevmarkError):
    pass


class AmbiguousShiftDirection(RevmarkError):
    pass


class EmptyLogo(RevmarkError):
    pass


class GridMismatch(RevmarkError):
    pass


class CentreUnderflow(RevmarkError):
    pass


class CoordinateOverflow(RevmarkError):
    pass


class MalformedOverhead(RevmarkError):
    pass


class InsufficientCapacity(RevmarkError):
    """Payload does not fit into the +/-1 bins of the difference images."""

    def __init__(self, capacity: int, required: int):
        self.capacity = capacity
        self.required = required
        super().__init__(f"capacity {capacity} bits, payload needs {required} bits")


class OverflowUnrecoverable(RevmarkError):
    pass


class ImageTooSmall(RevmarkError):
    pass


class InvalidConfig(RevmarkError):
    pass


class NotAuthentic(RevmarkError):
    pass
