__all__ = [
    'LatticeSpannerError',
    'PreconditionError',
    'InvalidPatchError',
    'InvalidSpecError',
    'UnknownPatternError',
    'InconclusiveError',
    'BudgetExceededError',
    'OpenLeafError',
    'DataDriftError',
    'CertificateError',
    'CertificateFormatError',
    'CertificateVersionError',
]


# === Base Exceptions ===


class LatticeSpannerError(Exception):
    """Base class for every error raised by this library."""


class PreconditionError(LatticeSpannerError, ValueError):
    """An operation was called outside its domain (negative operand, wrong pair type, ...)."""


# === Input Exceptions ===


class InvalidPatchError(LatticeSpannerError):
    """A starting edge set is not plane or has a vertex of degree above three."""


class InvalidSpecError(LatticeSpannerError):
    """A periodic spanner description cannot be parsed or is structurally invalid."""

    line: int | None

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnknownPatternError(LatticeSpannerError, KeyError):
    """A forbidden-pattern identifier is not one of the built-in patterns."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ''


# === Proof Search Exceptions ===


class InconclusiveError(LatticeSpannerError):
    """The search stopped without a refutation. This is never evidence that a graph exists."""

    nodes: int

    def __init__(self, message: str, nodes: int = 0):
        super().__init__(message)
        self.nodes = nodes


class BudgetExceededError(InconclusiveError):
    """The node budget ran out before every leaf became terminal."""


class OpenLeafError(InconclusiveError):
    """A node has no contradiction, no deduction and no pair left to branch on."""


class DataDriftError(LatticeSpannerError):
    """Stored path classes disagree with a fresh enumeration."""


# === Certificate Exceptions ===


class CertificateError(LatticeSpannerError):
    """Base class for certificate handling failures."""


class CertificateFormatError(CertificateError):
    """A certificate document could not be decoded."""


class CertificateVersionError(CertificateError):
    """A certificate was written in an unsupported format version."""
