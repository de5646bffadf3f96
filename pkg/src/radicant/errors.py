"""Shared exception types.

The CLI maps these onto exit codes: usage problems exit 1, mathematical
degeneracies exit 2, verification failures exit 3.
"""


class RadicantError(Exception):
    """Base class for all library errors."""


class ContextMismatch(RadicantError):
    """Two field elements from different field contexts were mixed."""


class DegenerateParams(RadicantError):
    """Tate parameters with vanishing discriminant (or b = 0)."""


class NoRootError(RadicantError):
    """The requested radical does not exist in the field."""


class DegenerateStep(RadicantError):
    """A radical step hit a pole of the rational expression."""

    def __init__(self, message, alpha=None):
        super().__init__(message)
        self.alpha = alpha


class SupportCollision(RadicantError):
    """A function was evaluated at a point of its divisor's support."""


class TorsionUnavailable(RadicantError):
    """Required torsion points are not rational within the extension bound."""


class EnumerationBound(RadicantError):
    """A field or matrix group is too large for exhaustive enumeration."""
