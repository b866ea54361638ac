"""Exception types shared across the package."""

__all__ = [
    "TubecatError",
    "SchemaError",
    "ConsistencyError",
    "ShapeError",
    "EmptySpace",
    "ToleranceError",
    "NotInCommutant",
    "DegenerateSpectrum",
]


class TubecatError(Exception):
    """Base class for all package errors."""


class SchemaError(TubecatError):
    """Malformed category file: wrong types, missing keys, unknown labels."""


class ConsistencyError(TubecatError):
    """Well-formed data that violates a structural axiom (associativity,
    duality, pentagon, dimension identities)."""


class ShapeError(TubecatError):
    """Morphism source/target words do not line up for the requested
    operation."""


class EmptySpace(TubecatError):
    """Requested a basis of a zero-dimensional hom space."""


class ToleranceError(TubecatError):
    """A verified identity failed its numerical tolerance."""


class NotInCommutant(TubecatError):
    """Endomorphism handed to the inverse tube map does not commute with the
    half-braiding within tolerance."""


class DegenerateSpectrum(TubecatError):
    """Random central element failed to separate the blocks; retry with a new
    seed."""
