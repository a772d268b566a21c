from __future__ import annotations


class SpecOrderError(Exception):
    """Base class for all library errors."""


class SpaceError(SpecOrderError, ValueError):
    pass


class UnknownPointError(SpaceError):
    def __init__(self, point: str):
        super().__init__(f"unknown point {point!r}")
        self.point = point


class NotASpecializationError(SpaceError):
    def __init__(self, x: str, y: str):
        super().__init__(f"{x!r} -> {y!r} is not a specialization")
        self.pair = (x, y)


class MapError(SpecOrderError, ValueError):
    pass


class NotMonotoneError(SpecOrderError):
    """Raised when an operation needs a specialization-preserving map."""

    def __init__(self, pair: tuple[str, str]):
        super().__init__(
            f"map is not specialization-preserving: {pair[0]} -> {pair[1]} is not preserved"
        )
        self.pair = pair


class SizeLimitError(SpecOrderError):
    pass


class GenerationError(SpecOrderError):
    pass


class InconsistencyError(SpecOrderError, AssertionError):
    """Two independent computations of the same fact disagree."""
