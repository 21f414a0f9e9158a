"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapacityError(ValueError):
    """A bound reaches or exceeds the supported 2^62 ceiling."""


class MergeError(ValueError):
    """Two partial results cover overlapping ranges."""


class IntegrityError(ValueError):
    """A checkpoint file is truncated, corrupt, or of an unknown schema."""
