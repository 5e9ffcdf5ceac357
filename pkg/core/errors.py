"""
Exceptions raised by the slicing toolkit
"""
from typing import Any, Optional


class SlicerError(Exception):
    """Base class for every error raised by the toolkit"""


class DimensionError(SlicerError, ValueError):
    """Shapes or orders of the arguments do not match"""


class DomainError(SlicerError, ValueError):
    """An argument lies outside the domain of the operation"""


class SingularMatrixError(SlicerError, ArithmeticError):
    """A linear system has no unique solution"""


class NonPrimitiveFunctionalError(SlicerError, ValueError):
    """The slicing functional does not attain gcd 1 on the lattice"""


class UnsupportedDepthError(SlicerError, NotImplementedError):
    """Slicing depth k > 1 was requested"""


class DegenerateDimensionError(SlicerError, ValueError):
    """Slicing needs a polytope of dimension at least 2"""


class PreconditionError(SlicerError, ValueError):
    """A polytope does not meet the slicing preconditions

    The offending object (vertex, edge) is kept in ``witness``.
    """

    def __init__(self, message: str, witness: Optional[Any] = None):
        super().__init__(message)
        self.witness = witness


class UsageError(SlicerError):
    """Invalid command-line request"""
