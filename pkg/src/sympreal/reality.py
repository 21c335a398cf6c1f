"""Reverser construction and verification for Hamiltonian matrices.

Every Hamiltonian matrix over Q(i) with spectrum in Q(i) admits a
symplectic skew-involution g with g X g^{-1} = -X; this module builds one
explicitly from the canonical form, block by block. Whether an honest
involution reverser exists is a property of the Jordan type alone
(``classify_strong``); when it does, ``strong_reverser`` assembles one.
All emitted certificates carry the exact results of four checks and are
re-verifiable from scratch with no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .canonical import (
    PROP24,
    REVERSER_FRIENDLY,
    EvenNilBlock,
    PairBlock,
    symplectic_transform,
)
from .errors import (
    DimensionMismatch,
    InternalCheckFailed,
    NotHamiltonian,
    NotStronglyReal,
)
from .jordan import (
    JordanBlock,
    JordanStructure,
    is_valid_hamiltonian_structure,
    jordan_structure,
)
from .matrices import (
    Matrix,
    direct_sum,
    expanding_sum_all,
    is_hamiltonian,
    is_skew_hamiltonian,
    is_symplectic,
    symplectic_inverse,
)
from .scalars import GaussianRational
from .errors import InvalidHamiltonianStructure

INVOLUTION = "involution"
SKEW_INVOLUTION = "skew-involution"

HAMILTONIAN = "hamiltonian"
SKEW_HAMILTONIAN = "skew-hamiltonian"

_I = GaussianRational(0, 1)
_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


def sigma(n: int) -> Matrix:
    """diag(1, -1, 1, ..., (-1)^(n-1)); anticommutes with J(0, n)."""
    if n < 1:
        raise ValueError("sigma requires n >= 1")
    return Matrix.diagonal([_ONE if i % 2 == 0 else -_ONE for i in range(n)])


def tau(n: int) -> Matrix:
    """The flip with ones on the antidiagonal; tau J(lam, n) = J(lam, n)^T tau."""
    if n < 1:
        raise ValueError("tau requires n >= 1")
    rows = []
    for i in range(n):
        row = [_ZERO] * n
        row[n - 1 - i] = _ONE
        rows.append(row)
    return Matrix(rows)


def skew_reverser_even_nil(half_size: int) -> Matrix:
    """diag(sigma*i, -sigma*i): a symplectic skew-involution reversing the
    even-nilpotent canonical block of order 2*half_size."""
    s = sigma(half_size)
    return direct_sum(s * _I, s * (-_I))


def skew_reverser_pair(eigenvalue: GaussianRational | int, size: int) -> Matrix:
    """[[0, tau], [-tau, 0]]: a symplectic skew-involution reversing
    J(lam, size) (+) -J(lam, size)^T. The construction ignores lam."""
    del eigenvalue  # the same matrix reverses every pair block of this size
    t = tau(size)
    zero = Matrix.zeros(size, size)
    return _four_blocks(zero, t, -t, zero)


def involution_reverser_pair_block(
    eigenvalue: GaussianRational | int, size: int
) -> Matrix:
    """Involution reverser for pair blocks.

    For eigenvalue 0 this is diag(sigma, sigma) of order 2*size, reversing
    J(0, size) (+) -J(0, size)^T. For a nonzero eigenvalue no single pair
    block is reversible by an involution; the returned matrix has order
    4*size and reverses the expanding sum of two identical pair blocks.
    """
    lam = GaussianRational._coerce(eigenvalue)  # noqa: SLF001
    if not lam:
        s = sigma(size)
        return direct_sum(s, s)
    t = tau(size)
    zero_k = Matrix.zeros(size, size)
    h = _four_blocks(zero_k, t, -t, zero_k)
    zero_2k = Matrix.zeros(2 * size, 2 * size)
    return _four_blocks(zero_2k, h, -h, zero_2k)


def _four_blocks(a: Matrix, b: Matrix, c: Matrix, d: Matrix) -> Matrix:
    n = a.rows
    rows = []
    for i in range(n):
        rows.append(list(a.row(i)) + list(b.row(i)))
    for i in range(n):
        rows.append(list(c.row(i)) + list(d.row(i)))
    return Matrix(rows)


@dataclass(frozen=True)
class CheckRecord:
    """Exact verification results for one reverser certificate."""

    reverser_symplectic: bool
    reverser_order: bool
    reversal: bool
    subject_structure: bool

    def all_true(self) -> bool:
        return (
            self.reverser_symplectic
            and self.reverser_order
            and self.reversal
            and self.subject_structure
        )

    def as_dict(self) -> dict[str, bool]:
        return {
            "reverser_symplectic": self.reverser_symplectic,
            "reverser_order": self.reverser_order,
            "reversal": self.reversal,
            "subject_structure": self.subject_structure,
        }


@dataclass(frozen=True)
class ReverserCertificate:
    """A subject, a reverser, and machine-checked proof that it reverses."""

    subject: Matrix
    reverser: Matrix
    kind: str
    subject_structure: str
    checks: CheckRecord


@dataclass(frozen=True)
class StrongRealityReport:
    """Verdict plus the exact Jordan blocks violating strong reality."""

    verdict: bool
    violations: tuple[tuple[JordanBlock, int], ...]


def verify_reverser(
    subject: Matrix,
    reverser: Matrix,
    kind: str,
    subject_structure: str = HAMILTONIAN,
) -> CheckRecord:
    """Evaluate all four certificate checks exactly; never raises on a
    false check (only on malformed input)."""
    if kind not in (INVOLUTION, SKEW_INVOLUTION):
        raise ValueError(f"unknown reverser kind: {kind!r}")
    if subject_structure not in (HAMILTONIAN, SKEW_HAMILTONIAN):
        raise ValueError(f"unknown subject structure: {subject_structure!r}")
    if not subject.is_square or not reverser.is_square:
        raise DimensionMismatch("subject and reverser must be square")
    if subject.rows != reverser.rows:
        raise DimensionMismatch("subject and reverser orders differ")
    if subject.rows % 2:
        raise DimensionMismatch("certificates live in even order")
    gg = reverser * reverser
    identity = Matrix.identity(reverser.rows)
    order_ok = gg == identity if kind == INVOLUTION else gg == -identity
    reversal_ok = reverser * subject == -(subject * reverser)
    if subject_structure == HAMILTONIAN:
        structure_ok = is_hamiltonian(subject)
    else:
        structure_ok = is_skew_hamiltonian(subject)
    return CheckRecord(
        reverser_symplectic=is_symplectic(reverser),
        reverser_order=order_ok,
        reversal=reversal_ok,
        subject_structure=structure_ok,
    )


def _certify(
    subject: Matrix, reverser: Matrix, kind: str, subject_structure: str
) -> ReverserCertificate:
    checks = verify_reverser(subject, reverser, kind, subject_structure)
    if not checks.all_true():
        raise InternalCheckFailed(
            f"constructed reverser failed verification: {checks.as_dict()}"
        )
    return ReverserCertificate(subject, reverser, kind, subject_structure, checks)


def skew_reverser(x: Matrix) -> ReverserCertificate:
    """A verified symplectic skew-involution g with g X g^{-1} = -X.

    Exists for every Hamiltonian matrix; this realizes it over Q(i) via
    the canonical transform and per-block constructions, conjugated back
    to the subject's own coordinates.
    """
    s, spec = symplectic_transform(x, PROP24)
    gs = []
    for block in spec.blocks:
        if isinstance(block, EvenNilBlock):
            gs.append(skew_reverser_even_nil(block.half_size))
        else:
            gs.append(skew_reverser_pair(block.eigenvalue, block.size))
    g = s * expanding_sum_all(gs) * symplectic_inverse(s)
    return _certify(x, g, SKEW_INVOLUTION, HAMILTONIAN)


def classify_strong(js: JordanStructure) -> StrongRealityReport:
    """Decide strong reality from the Jordan type.

    The subject is strongly real exactly when every even-size nilpotent
    block and every nonzero-eigenvalue block has even multiplicity; the
    report lists each violating (block, multiplicity).
    """
    if not is_valid_hamiltonian_structure(js):
        raise InvalidHamiltonianStructure(
            "Jordan multiset is not realizable by a Hamiltonian matrix"
        )
    violations = []
    for block, mult in js.items():
        if block.eigenvalue:
            if mult % 2:
                violations.append((block, mult))
        elif block.size % 2 == 0 and mult % 2:
            violations.append((block, mult))
    return StrongRealityReport(not violations, tuple(violations))


def strong_reverser(x: Matrix) -> ReverserCertificate:
    """A verified symplectic involution reverser, when one exists.

    Raises NotStronglyReal (carrying the classification report) when the
    Jordan type forbids it; that is a verdict, not a failure.
    """
    if not is_hamiltonian(x):
        raise NotHamiltonian("strong reverser requires a Hamiltonian matrix")
    js = jordan_structure(x)
    report = classify_strong(js)
    if not report.verdict:
        raise NotStronglyReal(report)
    s, spec = symplectic_transform(x, REVERSER_FRIENDLY)
    gs = []
    pending: PairBlock | None = None
    for block in spec.blocks:
        if isinstance(block, EvenNilBlock):
            raise InternalCheckFailed(
                "reverser-friendly transform left an unpaired even block"
            )
        if not block.eigenvalue:
            if pending is not None:
                raise InternalCheckFailed("unpaired nonzero block in spec")
            gs.append(involution_reverser_pair_block(block.eigenvalue, block.size))
        elif pending is None:
            pending = block
        else:
            if pending != block:
                raise InternalCheckFailed("nonzero blocks are not doubled")
            gs.append(involution_reverser_pair_block(block.eigenvalue, block.size))
            pending = None
    if pending is not None:
        raise InternalCheckFailed("odd count of nonzero pair blocks")
    g = s * expanding_sum_all(gs) * symplectic_inverse(s)
    return _certify(x, g, INVOLUTION, HAMILTONIAN)
