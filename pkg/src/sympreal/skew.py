"""Skew-Hamiltonian matrices: canonical form and negation involutions.

A skew-Hamiltonian matrix is self-adjoint for the symplectic form, so its
generalized eigenspaces are mutually orthogonal and every chain
self-pairing vanishes identically; the canonical decomposition into
blocks J(lam, k) (+) J(lam, k)^T therefore needs no square roots at all.
Similarity to the negative is a symmetry of the Jordan multiset under
lam -> -lam, and when it holds it is witnessed by a symplectic
involution assembled from two fixed block constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import _chains
from .errors import (
    InternalCheckFailed,
    NotSimilarToNegative,
    NotSkewHamiltonian,
)
from .jordan import (
    JordanStructure,
    jordan_block,
    jordan_structure,
)
from .matrices import (
    Matrix,
    direct_sum,
    expanding_sum_all,
    is_skew_hamiltonian,
    is_symplectic,
    symplectic_inverse,
)
from .canonical import _eigen_space
from .reality import (
    INVOLUTION,
    SKEW_HAMILTONIAN,
    ReverserCertificate,
    _certify,
    sigma,
)
from .scalars import GaussianRational

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


@dataclass(frozen=True)
class SkewBlock:
    """J(lam, size) (+) J(lam, size)^T, a skew-Hamiltonian block of order 2*size."""

    eigenvalue: GaussianRational
    size: int

    @property
    def order(self) -> int:
        return 2 * self.size


def _skew_block_sort_key(block: SkewBlock):
    if not block.eigenvalue:
        return (0, block.size, 0, 0)
    return (1, *block.eigenvalue.sort_key(), block.size)


@dataclass(frozen=True)
class SkewCanonicalSpec:
    """Ordered list of skew-Hamiltonian canonical blocks."""

    blocks: tuple[SkewBlock, ...]

    @property
    def order(self) -> int:
        return sum(b.order for b in self.blocks)


def build_skew_block(block: SkewBlock) -> Matrix:
    j = jordan_block(block.eigenvalue, block.size)
    return direct_sum(j, j.transpose())


def build_skew(spec: SkewCanonicalSpec) -> Matrix:
    if not spec.blocks:
        raise ValueError("cannot build an empty spec")
    return expanding_sum_all([build_skew_block(b) for b in spec.blocks])


def _skew_entries(
    x: Matrix, js: JordanStructure
) -> list[tuple[SkewBlock, list[_chains.Vector], list[_chains.Vector]]]:
    """Per-block column groups; one omega-paired chain pair per block."""
    max_size: dict[GaussianRational, int] = {}
    for block, _mult in js.items():
        lam = block.eigenvalue
        max_size[lam] = max(max_size.get(lam, 0), block.size)
    entries = []
    for lam in sorted(max_size, key=lambda z: z.sort_key()):
        basis = _eigen_space(x, lam, max_size[lam])

        def napply(v: _chains.Vector, lam=lam) -> _chains.Vector:
            xv = x.apply(v)
            return tuple(a - lam * b for a, b in zip(xv, v))

        extracted = _chains.symplectic_nilpotent_blocks(
            napply, basis, 1, lambda _h, _c: "pair"
        )
        for blk in extracted:
            entries.append((SkewBlock(lam, blk.height), blk.ucols, blk.wcols))
    entries.sort(key=lambda e: _skew_block_sort_key(e[0]))
    return entries


def skew_canonical_transform(x: Matrix) -> tuple[Matrix, SkewCanonicalSpec]:
    """Exact symplectic similarity onto the skew canonical form.

    Returns (S, spec) with S symplectic and S^{-1} X S the expanding sum
    of the spec's blocks, verified exactly.
    """
    if not is_skew_hamiltonian(x):
        raise NotSkewHamiltonian(
            "skew canonical transform requires a skew-Hamiltonian matrix"
        )
    js = jordan_structure(x)
    entries = _skew_entries(x, js)
    spec = SkewCanonicalSpec(tuple(e[0] for e in entries))
    s = _assemble(entries)
    if not is_symplectic(s):
        raise InternalCheckFailed("assembled transform is not symplectic")
    if x * s != s * build_skew(spec):
        raise InternalCheckFailed("assembled transform does not canonicalize")
    return s, spec


def _assemble(
    entries: Sequence[tuple[object, list[_chains.Vector], list[_chains.Vector]]]
) -> Matrix:
    columns: list[_chains.Vector] = []
    for _block, ucols, _w in entries:
        columns.extend(ucols)
    for _block, _u, wcols in entries:
        columns.extend(wcols)
    return Matrix.from_columns(columns)


def is_similar_to_negative(x: Matrix) -> bool:
    """Whether X is similar to -X (equivalently, via a symplectic involution).

    Decided on the Jordan multiset: it must be invariant under negating
    eigenvalues, block sizes and multiplicities included.
    """
    if not is_skew_hamiltonian(x):
        raise NotSkewHamiltonian(
            "negation similarity is defined for skew-Hamiltonian matrices"
        )
    js = jordan_structure(x)
    return js == js.negated()


def negation_involution(x: Matrix) -> ReverserCertificate:
    """A verified symplectic involution g with g X g^{-1} = -X.

    Exists exactly when X is similar to -X; otherwise raises
    NotSimilarToNegative (a verdict, not a failure). The witness combines
    diag(sigma, sigma) on nilpotent blocks with the block swap
    diag(h, h), h = [[0, I], [I, 0]], on matched eigenvalue pairs.
    """
    if not is_skew_hamiltonian(x):
        raise NotSkewHamiltonian(
            "negation involution requires a skew-Hamiltonian matrix"
        )
    js = jordan_structure(x)
    if js != js.negated():
        raise NotSimilarToNegative(
            "Jordan multiset is not symmetric under eigenvalue negation"
        )
    entries = _skew_entries(x, js)
    nilpotent = [e for e in entries if not e[0].eigenvalue]
    positive: dict[tuple[GaussianRational, int], list] = {}
    negative: dict[tuple[GaussianRational, int], list] = {}
    for entry in entries:
        lam = entry[0].eigenvalue
        if not lam:
            continue
        rep = min(lam, -lam, key=lambda z: z.sort_key())
        key = (rep, entry[0].size)
        if lam == rep:
            positive.setdefault(key, []).append(entry)
        else:
            negative.setdefault(key, []).append(entry)
    ordered = list(nilpotent)
    gs: list[Matrix] = []
    for _block, _u, _w in nilpotent:
        s_half = sigma(_block.size)
        gs.append(direct_sum(s_half, s_half))
    for key in sorted(positive, key=lambda k: (*k[0].sort_key(), k[1])):
        pos_list = positive[key]
        neg_list = negative.get(key, [])
        if len(pos_list) != len(neg_list):
            raise InternalCheckFailed("unmatched eigenvalue pair in skew spec")
        k = key[1]
        for pos_entry, neg_entry in zip(pos_list, neg_list):
            ordered.append(pos_entry)
            ordered.append(_sigma_twist(neg_entry))
            gs.append(_negation_swap(k))
    s = _assemble(ordered)
    g = s * expanding_sum_all(gs) * symplectic_inverse(s)
    return _certify(x, g, INVOLUTION, SKEW_HAMILTONIAN)


def _sigma_twist(entry):
    """Re-sign a block's columns so it realizes the negated Jordan pair.

    Conjugating J(-lam, k) (+) J(-lam, k)^T by diag(sigma, sigma) gives
    -J(lam, k) (+) -J(lam, k)^T, and diag(sigma, sigma) is symplectic, so
    alternating the column signs preserves all pairings.
    """
    block, ucols, wcols = entry
    u2 = [
        _chains.vec_scale(_ONE if j % 2 == 0 else -_ONE, col)
        for j, col in enumerate(ucols)
    ]
    w2 = [
        _chains.vec_scale(_ONE if j % 2 == 0 else -_ONE, col)
        for j, col in enumerate(wcols)
    ]
    return (block, u2, w2)


def _negation_swap(k: int) -> Matrix:
    """diag(h, h) with h the 2k-order block swap [[0, I], [I, 0]]."""
    rows = []
    zero_row = [_ZERO] * (4 * k)
    for i in range(4 * k):
        row = list(zero_row)
        if i < k:
            row[k + i] = _ONE
        elif i < 2 * k:
            row[i - k] = _ONE
        elif i < 3 * k:
            row[k + i] = _ONE
        else:
            row[i - k] = _ONE
        rows.append(row)
    return Matrix(rows)
