"""Error types shared across the package.

The CLI maps these onto exit codes: ``InputError`` is 2 and ``GuardExceeded`` is 3.
A failed law check is not an exception; it shows up as a failing report.
"""

from __future__ import annotations


class BasisError(Exception):
    """Base class for every error raised by this package."""


class InputError(BasisError, ValueError):
    """Malformed input: bad scalar text, shape mismatch, unknown label."""


class ScalarError(InputError):
    """Arithmetic that leaves the scalar domain (division by zero, domain mismatch)."""


class CycleError(InputError):
    """An order relation whose reflexive-transitive closure is not antisymmetric."""

    def __init__(self, message: str, witness: tuple):
        super().__init__(message)
        self.witness = witness


class NotABasisError(BasisError):
    """A candidate basis is rejected; ``witness`` says why."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(BasisError):
    """A check was asked of an object that does not meet its hypothesis."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class GuardExceeded(BasisError):
    """Refusal: an exhaustive enumeration would exceed its size guard."""

    def __init__(self, what: str, size: int, guard: int):
        super().__init__(f"{what}: size {size} exceeds guard {guard}")
        self.what = what
        self.size = size
        self.guard = guard
