"""Exception types shared across the package."""

from __future__ import annotations


class QesBosonError(Exception):
    """Base class for package errors."""


class NonConservingHamiltonian(QesBosonError):
    """The Hamiltonian does not commute with the declared charge."""


class BlockClosureViolation(QesBosonError):
    """A block basis was not invariant under the operator (internal error)."""


class NumericalFailure(QesBosonError):
    """An eigensolve residual exceeded the configured tolerance."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class ZeroVector(QesBosonError):
    """A nonzero vector was required."""


class UnsupportedTermShape(QesBosonError):
    """A term mixes raising and lowering in the slaved mode; use the
    matrix-element route instead."""


class BandStructureUnsupported(QesBosonError):
    """The reduced matrix has no scalar three-term-style recurrence; fall
    back to the characteristic polynomial of the reduced block."""


class DegreeOutsidePhysicalSector(QesBosonError):
    """An eigenvector coefficient refers to a degree outside the block."""


class ParseError(QesBosonError):
    """Model file syntax error."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class InvalidOrder(QesBosonError):
    """Harmonic-generation order must be a positive integer."""


class ConventionMismatch(QesBosonError):
    """The gauge conjugation identity failed under every sign/normalization
    convention tried; carries the best residual achieved per convention."""

    def __init__(self, message: str, residuals: dict):
        super().__init__(message)
        self.residuals = residuals


class GridTooCoarse(QesBosonError):
    """Finite-difference eigenvalues did not converge under grid refinement."""

    def __init__(self, message: str, disagreement: float):
        super().__init__(message)
        self.disagreement = disagreement
