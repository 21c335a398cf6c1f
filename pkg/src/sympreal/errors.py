"""Exception hierarchy.

Errors that correspond to mathematical preconditions carry a stable
machine-readable ``code`` so the CLI can map them to exit status 2 and
emit structured JSON. Negative verdicts (``NotStronglyReal``,
``NotSimilarToNegative``) are control flow, not failures: they carry the
classification data and map to exit status 3.
"""

from __future__ import annotations


class SymprealError(Exception):
    """Base class for all package errors."""

    code = "error"


class DimensionMismatch(SymprealError, ValueError):
    code = "dimension_mismatch"


class NonSquareInput(SymprealError, ValueError):
    code = "non_square_input"


class OddOrderInput(SymprealError, ValueError):
    code = "odd_order_input"


class SingularMatrix(SymprealError, ValueError):
    code = "singular_matrix"


class SpectrumNotInField(SymprealError):
    """The characteristic polynomial has a root outside Q(i)."""

    code = "spectrum_not_in_field"


class NotHamiltonian(SymprealError, ValueError):
    code = "not_hamiltonian"


class NotSkewHamiltonian(SymprealError, ValueError):
    code = "not_skew_hamiltonian"


class InvalidHamiltonianStructure(SymprealError, ValueError):
    """Jordan multiset not realizable by a Hamiltonian matrix."""

    code = "invalid_hamiltonian_structure"


class FieldExtensionRequired(SymprealError):
    """Symplectic normalization needs a square root that Q(i) lacks.

    This is a first-class outcome of the canonical transform, not a bug:
    Q(i) is not closed under the square roots the normalization can demand.
    """

    code = "field_extension_required"


class NotStronglyReal(SymprealError):
    """Verdict: no symplectic involution conjugates the subject to its negative."""

    code = "not_strongly_real"

    def __init__(self, report):
        super().__init__("subject is not strongly real under the symplectic group")
        self.report = report


class NotSimilarToNegative(SymprealError):
    """Verdict: the skew-Hamiltonian subject is not similar to its negative."""

    code = "not_similar_to_negative"


class InternalCheckFailed(SymprealError):
    """An internal exactness invariant was violated; indicates a bug."""

    code = "internal_check_failed"
