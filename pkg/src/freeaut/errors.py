"""Exceptions raised by freeaut.

Library code raises these; `freeaut.main` turns them into exit codes.
"""
from __future__ import annotations


class FreeAutError(Exception):
    """Base class for every error raised by this package."""


class InputError(FreeAutError, ValueError):
    """Malformed input: bad token, index out of range, rank too small."""


class BasisMismatchError(InputError):
    """Two objects defined over different bases were combined."""


class InvalidBasisChangeError(FreeAutError):
    """A basis change whose witness does not undo it."""


class NotAttractingError(FreeAutError):
    """A ray seed is not strictly extended by its automorphism."""


class InconclusiveError(FreeAutError):
    """A finite check could not decide the question at the requested depth."""


class UnsupportedRepresentativeError(FreeAutError):
    """The rose is not a train track representative (non-positive images)."""


class NotPrimitiveError(FreeAutError):
    """A Perron-Frobenius computation was asked for a non-primitive matrix."""


class ResourceBudgetError(FreeAutError):
    """An image table would exceed the configured letter budget."""


class UncertifiedInventoryError(FreeAutError):
    """An index was requested from an inventory that was never certified."""
