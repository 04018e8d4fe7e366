"""Exception hierarchy.

Analysis failures derive from :class:`AnalysisError`; malformed input
(bad sizes, unparsable model files, bad region strings) derives from
:class:`InputError`. The CLI maps the two families to exit codes 1 and 2.
"""

from __future__ import annotations


class StsError(Exception):
    """Base class for every error raised by this package."""


class InputError(StsError):
    """Malformed user input."""


class DimensionError(InputError, ValueError):
    """Operands disagree on qubit count or lattice dimension."""


class TemplateError(InputError, ValueError):
    """A generator template is invalid for the lattice it is placed on."""


class ModelFileError(InputError):
    """A model definition file could not be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class AnalysisError(StsError):
    """An analysis precondition failed."""


class NotStabilizerError(AnalysisError):
    """Two generators anticommute."""

    def __init__(self, first: int, second: int) -> None:
        self.pair = (first, second)
        super().__init__(
            f"not a stabilizer Hamiltonian: generators {first} and {second} anticommute"
        )


class InconsistentSignsError(AnalysisError):
    """The generated group contains -I (or a non-Hermitian element)."""


class PreconditionError(AnalysisError):
    """A documented precondition of an operation does not hold."""


class GeometryError(AnalysisError):
    """A region, annulus or rectangle does not fit on the lattice."""


class NotSTSModelError(AnalysisError):
    """The model lacks locality, translation equivalence or scale symmetry."""


class InconclusiveError(AnalysisError):
    """A bounded search ran out of budget without an answer."""


class StructuralError(AnalysisError):
    """A structural identity that every STS model satisfies was violated."""
