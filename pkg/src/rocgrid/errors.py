"""Exception types shared across the package."""

from __future__ import annotations

__all__ = ["RocgridError", "DomainError", "GuardError", "ContourError"]


class RocgridError(Exception):
    """Base class for all package errors."""

    code = "error"


class DomainError(RocgridError):
    """Invalid input: out-of-domain argument, unknown identifier, bad shape."""

    code = "invalid_parameter"


class GuardError(RocgridError):
    """Request is structurally valid but exceeds a resource guard."""

    code = "resource_guard"


class ContourError(DomainError):
    """Metric has no contour form for the requested configuration."""

    code = "no_contour"
