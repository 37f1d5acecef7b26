"""Exception types shared across the package.

Every error carries a short machine-readable ``kind`` string that the CLI
emits in its JSON error payloads.
"""

from __future__ import annotations


class WitnessKitError(Exception):
    """Base class for all domain errors raised by this package."""

    kind = "error"


class ParseError(WitnessKitError):
    """Malformed JSON input or a payload violating a schema."""

    kind = "parse"


class DimensionMismatch(WitnessKitError):
    """Shapes or dimensions that cannot be reconciled."""

    kind = "dimension-mismatch"


class SingularJacobian(WitnessKitError):
    """A Newton linear solve failed because the Jacobian is singular."""

    kind = "singular-jacobian"


class SingularMatrix(WitnessKitError):
    """An exact linear solve met a rank-deficient matrix."""

    kind = "singular-matrix"


class StartPointError(WitnessKitError):
    """A path start point does not satisfy the start system."""

    kind = "start-point"


class TrackingFailure(WitnessKitError):
    """One or more continuation paths could not be completed."""

    kind = "tracking-failure"


class Inconclusive(WitnessKitError):
    """A membership test landed in the ambiguous distance band."""

    kind = "inconclusive"


class UnsupportedProduct(WitnessKitError):
    """A cycle product outside the stored structure constants."""

    kind = "unsupported-product"


class SingularQuadric(WitnessKitError):
    """A quadric hypersurface whose matrix is (numerically) degenerate."""

    kind = "singular-quadric"


class DegenerateFlag(WitnessKitError):
    """A flag that fails the genericity checks of an operation."""

    kind = "degenerate-flag"


class GenericityWarning(UserWarning):
    """Non-fatal signal that a random instance looks non-generic."""
