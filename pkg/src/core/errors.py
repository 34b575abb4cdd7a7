"""Exception hierarchy for barcode computations."""

from typing import Any, Optional


class BarcodeError(Exception):
    """Base class for all library errors."""


class InputError(BarcodeError, ValueError):
    """Malformed input: unknown labels, dimension mismatch, bad parameters."""


class FormatError(InputError):
    """File parse error with location."""

    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line
        location = path or "<input>"
        if line is not None:
            location = f"{location}:{line}"
        super().__init__(f"{location}: {message}")


class PreconditionError(BarcodeError, ValueError):
    """A hypothesis of an operation does not hold.

    Attributes:
        hypothesis: Name of the violated hypothesis
        witness: Data exhibiting the violation (labels, combinations, values)
    """

    def __init__(self, hypothesis: str, message: str, witness: Any = None):
        self.hypothesis = hypothesis
        self.witness = witness
        super().__init__(f"{hypothesis}: {message}")


class DomainError(BarcodeError, ValueError):
    """Argument outside the domain of an operation."""


class CapabilityError(BarcodeError, RuntimeError):
    """Request beyond what the finite/exhaustive algorithms support."""
