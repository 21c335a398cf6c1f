"""Exact reverser certificates for Hamiltonian matrices over Q(i).

The package decides, in exact Gaussian-rational arithmetic, whether a
Hamiltonian or skew-Hamiltonian matrix is conjugate to its negative under
the symplectic group, and produces explicit symplectic involutions or
skew-involutions witnessing it, each shipped with machine-checkable
exact verification.
"""

from .canonical import (
    PROP24,
    REVERSER_FRIENDLY,
    CanonicalSpec,
    EvenNilBlock,
    PairBlock,
    build,
    build_delta,
    build_lambda,
    spec_from_jordan,
    symplectic_transform,
)
from .errors import (
    DimensionMismatch,
    FieldExtensionRequired,
    InvalidHamiltonianStructure,
    NonSquareInput,
    NotHamiltonian,
    NotSimilarToNegative,
    NotSkewHamiltonian,
    NotStronglyReal,
    OddOrderInput,
    SingularMatrix,
    SpectrumNotInField,
    SymprealError,
)
from .jordan import (
    JordanBlock,
    JordanStructure,
    eigenvalues,
    is_valid_hamiltonian_structure,
    is_valid_skew_hamiltonian_structure,
    jordan_block,
    jordan_structure,
)
from .matrices import (
    Matrix,
    direct_sum,
    expanding_sum,
    is_hamiltonian,
    is_involution,
    is_skew_hamiltonian,
    is_skew_involution,
    is_symplectic,
    random_symplectic,
    symplectic_inverse,
    symplectic_j,
)
from .reality import (
    HAMILTONIAN,
    INVOLUTION,
    SKEW_HAMILTONIAN,
    SKEW_INVOLUTION,
    CheckRecord,
    ReverserCertificate,
    StrongRealityReport,
    classify_strong,
    involution_reverser_pair_block,
    sigma,
    skew_reverser,
    skew_reverser_even_nil,
    skew_reverser_pair,
    strong_reverser,
    tau,
    verify_reverser,
)
from .scalars import GaussianRational, Rational, sqrt_if_square
from .skew import (
    SkewBlock,
    SkewCanonicalSpec,
    is_similar_to_negative,
    negation_involution,
    skew_canonical_transform,
)

__all__ = [
    "PROP24",
    "REVERSER_FRIENDLY",
    "CanonicalSpec",
    "EvenNilBlock",
    "PairBlock",
    "build",
    "build_delta",
    "build_lambda",
    "spec_from_jordan",
    "symplectic_transform",
    "DimensionMismatch",
    "FieldExtensionRequired",
    "InvalidHamiltonianStructure",
    "NonSquareInput",
    "NotHamiltonian",
    "NotSimilarToNegative",
    "NotSkewHamiltonian",
    "NotStronglyReal",
    "OddOrderInput",
    "SingularMatrix",
    "SpectrumNotInField",
    "SymprealError",
    "JordanBlock",
    "JordanStructure",
    "eigenvalues",
    "is_valid_hamiltonian_structure",
    "is_valid_skew_hamiltonian_structure",
    "jordan_block",
    "jordan_structure",
    "Matrix",
    "direct_sum",
    "expanding_sum",
    "is_hamiltonian",
    "is_involution",
    "is_skew_hamiltonian",
    "is_skew_involution",
    "is_symplectic",
    "random_symplectic",
    "symplectic_inverse",
    "symplectic_j",
    "HAMILTONIAN",
    "INVOLUTION",
    "SKEW_HAMILTONIAN",
    "SKEW_INVOLUTION",
    "CheckRecord",
    "ReverserCertificate",
    "StrongRealityReport",
    "classify_strong",
    "involution_reverser_pair_block",
    "sigma",
    "skew_reverser",
    "skew_reverser_even_nil",
    "skew_reverser_pair",
    "strong_reverser",
    "tau",
    "verify_reverser",
    "GaussianRational",
    "Rational",
    "sqrt_if_square",
    "SkewBlock",
    "SkewCanonicalSpec",
    "is_similar_to_negative",
    "negation_involution",
    "skew_canonical_transform",
]
