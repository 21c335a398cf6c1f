"""Symplectic Jordan forms of Hamiltonian matrices, constructively.

A canonical Hamiltonian matrix is an expanding sum of pair blocks
J(lam, k) (+) -J(lam, k)^T and even-nilpotent blocks
Lambda_2l = [[J(0, l), I], [0, -J(0, l)^T]]. ``symplectic_transform``
produces, for any Hamiltonian matrix with spectrum in Q(i), an exact
symplectic S with S^{-1} X S equal to the canonical matrix of its Jordan
type, under one of two target policies:

* ``prop24`` keeps every even nilpotent Jordan block as a Lambda block;
* ``reverser-friendly`` pairs even nilpotent blocks two at a time into
  J(0, 2l) (+) -J(0, 2l)^T, which is what the involution-reverser
  assembly consumes directly.

Both targets have the same Jordan type; the policies only differ in how
even nilpotent multiplicity is split between the two realizations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import _chains
from .errors import (
    InternalCheckFailed,
    InvalidHamiltonianStructure,
    NotHamiltonian,
)
from .jordan import (
    JordanStructure,
    _mul_pairs,
    _reduce_pairs,
    _shifted_pairs,
    jordan_block,
    jordan_structure,
    is_valid_hamiltonian_structure,
)
from .matrices import (
    Matrix,
    direct_sum,
    expanding_sum_all,
    is_hamiltonian,
    is_symplectic,
    nullspace_pairs,
)
from .scalars import GaussianRational

PROP24 = "prop24"
REVERSER_FRIENDLY = "reverser-friendly"

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


@dataclass(frozen=True)
class PairBlock:
    """J(lam, size) (+) -J(lam, size)^T, a Hamiltonian block of order 2*size."""

    eigenvalue: GaussianRational
    size: int

    @property
    def order(self) -> int:
        return 2 * self.size


@dataclass(frozen=True)
class EvenNilBlock:
    """Lambda block of order 2*half_size, similar to J(0, 2*half_size)."""

    half_size: int

    @property
    def order(self) -> int:
        return 2 * self.half_size


CanonicalBlock = Union[PairBlock, EvenNilBlock]


def _block_sort_key(block: CanonicalBlock):
    # nilpotent blocks first (Lambda before equally-sized nilpotent pairs),
    # then nonzero-eigenvalue pairs by (re, im, size)
    if isinstance(block, EvenNilBlock):
        return (0, block.order, 0)
    if not block.eigenvalue:
        return (0, block.order, 1)
    return (1, *block.eigenvalue.sort_key(), block.size)


@dataclass(frozen=True)
class CanonicalSpec:
    """Ordered list of canonical blocks plus the policy that produced it."""

    blocks: tuple[CanonicalBlock, ...]
    policy: str

    @property
    def order(self) -> int:
        return sum(b.order for b in self.blocks)

    def jordan_structure(self) -> JordanStructure:
        pairs: dict[tuple[GaussianRational, int], int] = {}

        def bump(lam: GaussianRational, size: int) -> None:
            pairs[(lam, size)] = pairs.get((lam, size), 0) + 1

        for block in self.blocks:
            if isinstance(block, EvenNilBlock):
                bump(_ZERO, 2 * block.half_size)
            else:
                bump(block.eigenvalue, block.size)
                bump(-block.eigenvalue, block.size)
        return JordanStructure.from_pairs(pairs)


def build_lambda(half_size: int) -> Matrix:
    """The even-nilpotent canonical block [[J(0, l), I], [0, -J(0, l)^T]]."""
    if half_size < 1:
        raise ValueError("half_size must be >= 1")
    l = half_size
    j = jordan_block(0, l)
    rows = []
    for i in range(l):
        top = list(j.row(i))
        right = [_ONE if k == i else _ZERO for k in range(l)]
        rows.append(top + right)
    jt = j.transpose()
    for i in range(l):
        rows.append([_ZERO] * l + [-e for e in jt.row(i)])
    return Matrix(rows)


def build_delta(half_size: int) -> Matrix:
    """The corner-entry variant [[J(0, l), E_ll], [0, -J(0, l)^T]].

    Hamiltonian, similar to J(0, 2l), and symplectically similar to the
    Lambda block of the same order.
    """
    if half_size < 1:
        raise ValueError("half_size must be >= 1")
    l = half_size
    j = jordan_block(0, l)
    rows = []
    for i in range(l):
        top = list(j.row(i))
        right = [_ONE if (i == l - 1 and k == l - 1) else _ZERO for k in range(l)]
        rows.append(top + right)
    jt = j.transpose()
    for i in range(l):
        rows.append([_ZERO] * l + [-e for e in jt.row(i)])
    return Matrix(rows)


def build_block(block: CanonicalBlock) -> Matrix:
    if isinstance(block, EvenNilBlock):
        return build_lambda(block.half_size)
    j = jordan_block(block.eigenvalue, block.size)
    return direct_sum(j, -j.transpose())


def build(spec: CanonicalSpec) -> Matrix:
    """Assemble the canonical Hamiltonian matrix of a spec (expanding sum)."""
    if not spec.blocks:
        raise InvalidHamiltonianStructure("cannot build an empty spec")
    return expanding_sum_all([build_block(b) for b in spec.blocks])


def spec_from_jordan(js: JordanStructure, policy: str = PROP24) -> CanonicalSpec:
    """Map a realizable Jordan multiset to its canonical block list.

    Nonzero eigenvalue pairs are represented by the lexicographically
    smaller of {lam, -lam}. Odd nilpotent blocks pair up; even nilpotent
    blocks become Lambda blocks under prop24, or pair up (with one Lambda
    leftover for odd multiplicity) under reverser-friendly.
    """
    if policy not in (PROP24, REVERSER_FRIENDLY):
        raise ValueError(f"unknown policy: {policy!r}")
    if not is_valid_hamiltonian_structure(js):
        raise InvalidHamiltonianStructure(
            "Jordan multiset is not realizable by a Hamiltonian matrix"
        )
    blocks: list[CanonicalBlock] = []
    seen: set[tuple[GaussianRational, int]] = set()
    for block, mult in js.items():
        lam = block.eigenvalue
        size = block.size
        if not lam:
            if size % 2:
                blocks.extend([PairBlock(_ZERO, size)] * (mult // 2))
            elif policy == PROP24:
                blocks.extend([EvenNilBlock(size // 2)] * mult)
            else:
                blocks.extend([PairBlock(_ZERO, size)] * (mult // 2))
                if mult % 2:
                    blocks.append(EvenNilBlock(size // 2))
        else:
            rep = min(lam, -lam, key=lambda z: z.sort_key())
            if (rep, size) in seen:
                continue
            seen.add((rep, size))
            blocks.extend([PairBlock(rep, size)] * mult)
    blocks.sort(key=_block_sort_key)
    return CanonicalSpec(tuple(blocks), policy)


def _eigen_space(x: Matrix, lam: GaussianRational, power: int) -> list[_chains.Vector]:
    """Primitive basis of ker((x - lam I)^power)."""
    grid = _shifted_pairs(x, lam)
    acc = grid
    for _ in range(power - 1):
        acc = _reduce_pairs(_mul_pairs(acc, grid))
    return nullspace_pairs(acc, x.rows, x.rows)


def _nonzero_pair_entries(
    x: Matrix, rep: GaussianRational, max_size: int
) -> list[tuple[PairBlock, list[_chains.Vector], list[_chains.Vector]]]:
    """Blocks for the eigenvalue pair {rep, -rep}, rep the representative.

    Jordan chains are taken in the rep eigenspace; the partner columns in
    the opposite eigenspace are the omega-dual basis, which automatically
    satisfies the transposed-block action. No square roots are involved.
    """
    e_pos = _eigen_space(x, rep, max_size)
    e_neg = _eigen_space(x, -rep, max_size)
    if len(e_pos) != len(e_neg):
        raise InternalCheckFailed("eigenvalue pair with mismatched dimensions")

    def napply(v: _chains.Vector) -> _chains.Vector:
        xv = x.apply(v)
        return tuple(a - rep * b for a, b in zip(xv, v))

    chains = _chains.plain_jordan_chains(napply, e_pos)
    flat_u: list[_chains.Vector] = []
    groups: list[tuple[int, int]] = []  # (start, height)
    for chain in chains:
        h = len(chain)
        groups.append((len(flat_u), h))
        flat_u.extend(reversed(chain))
    gram = Matrix([[_chains.omega(u, b) for b in e_neg] for u in flat_u])
    dual_coords = gram.inverse()
    flat_w = [
        _chains.combination(e_neg, dual_coords.column(b))
        for b in range(len(flat_u))
    ]
    out = []
    for start, h in groups:
        ucols = flat_u[start : start + h]
        wcols = flat_w[start : start + h]
        _chains.verify_block_columns(ucols, wcols)
        out.append((PairBlock(rep, h), ucols, wcols))
    return out


def _nilpotent_entries(
    x: Matrix, max_size: int, policy: str
) -> list[tuple[CanonicalBlock, list[_chains.Vector], list[_chains.Vector]]]:
    e0 = _eigen_space(x, _ZERO, max_size)

    def napply(v: _chains.Vector) -> _chains.Vector:
        return x.apply(v)

    def choose(height: int, count: int) -> str:
        if height % 2:
            return "pair"
        if policy == PROP24:
            return "self"
        return "pair" if count >= 2 else "self"

    extracted = _chains.symplectic_nilpotent_blocks(napply, e0, -1, choose)
    out = []
    for blk in extracted:
        if blk.mode == "self":
            block: CanonicalBlock = EvenNilBlock(blk.height // 2)
        else:
            block = PairBlock(_ZERO, blk.height)
        out.append((block, blk.ucols, blk.wcols))
    return out


def symplectic_transform(
    x: Matrix, policy: str = PROP24
) -> tuple[Matrix, CanonicalSpec]:
    """Exact symplectic similarity onto the canonical form.

    Returns (S, spec) with S in Sp(2n, Q(i)) and S^{-1} X S = build(spec),
    verified exactly before returning. Raises NotHamiltonian,
    SpectrumNotInField, or FieldExtensionRequired (when a self-paired
    normalization would need a square root missing from Q(i)).
    """
    if not is_hamiltonian(x):
        raise NotHamiltonian("symplectic transform requires a Hamiltonian matrix")
    js = jordan_structure(x)
    spec = spec_from_jordan(js, policy)
    entries: list[
        tuple[CanonicalBlock, list[_chains.Vector], list[_chains.Vector]]
    ] = []
    max_nil = 0
    nonzero_reps: dict[GaussianRational, int] = {}
    for block, _mult in js.items():
        lam = block.eigenvalue
        if not lam:
            max_nil = max(max_nil, block.size)
        else:
            rep = min(lam, -lam, key=lambda z: z.sort_key())
            nonzero_reps[rep] = max(nonzero_reps.get(rep, 0), block.size)
    if max_nil:
        entries.extend(_nilpotent_entries(x, max_nil, policy))
    for rep in sorted(nonzero_reps, key=lambda z: z.sort_key()):
        entries.extend(_nonzero_pair_entries(x, rep, nonzero_reps[rep]))
    entries.sort(key=lambda e: _block_sort_key(e[0]))
    if tuple(e[0] for e in entries) != spec.blocks:
        raise InternalCheckFailed("extracted blocks disagree with the target spec")
    columns: list[_chains.Vector] = []
    for _block, ucols, _w in entries:
        columns.extend(ucols)
    for _block, _u, wcols in entries:
        columns.extend(wcols)
    s = Matrix.from_columns(columns)
    if not is_symplectic(s):
        raise InternalCheckFailed("assembled transform is not symplectic")
    if x * s != s * build(spec):
        raise InternalCheckFailed("assembled transform does not canonicalize")
    return s, spec
