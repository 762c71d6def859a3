"""Exception types shared across the package."""


class DctError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(DctError, ValueError):
    """Operands have incompatible shapes or live over different fields."""


class NotAdmissible(DctError, ValueError):
    """The relation ideal does not contain all paths of the claimed length.

    Carries a witness path (as a tuple of arrow names) when one exists.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InvalidModule(DctError, ValueError):
    """Arrow matrices violate a relation or have wrong shapes."""


class InvalidMorphism(DctError, ValueError):
    """Vertex components fail to intertwine the arrow actions."""


class InvalidSubmodule(DctError, ValueError):
    """A subspace is not closed under the required action."""


class CapExceeded(DctError, RuntimeError):
    """An exhaustive scan would exceed the configured budget."""


class VerificationFailed(DctError, RuntimeError):
    """A mandatory post-hoc check on a constructed object failed.

    Raised instead of returning an unproven result; the message carries
    the finding.
    """


class WorkspaceError(DctError, ValueError):
    """A workspace file failed validation."""
