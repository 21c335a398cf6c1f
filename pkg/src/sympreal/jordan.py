"""Exact Jordan-structure extraction over Q(i).

The characteristic polynomial is computed division-free (Berkowitz) on a
denominator-cleared Gaussian-integer grid; roots are located by a
divisor search in Z[i] with deflation, so the whole pipeline either
produces the exact spectrum or reports that it leaves Q(i). Block sizes
come from the standard rank-sequence formula
``mult(lam, k) = r_{k-1} - 2 r_k + r_{k+1}`` with
``r_j = rank((A - lam I)^j)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterator, Mapping

from .errors import NonSquareInput, SpectrumNotInField
from .matrices import Matrix, Pair, _cmul, rank_pairs
from .scalars import GaussianRational

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


@dataclass(frozen=True)
class JordanBlock:
    """A single Jordan block J(lam, size)."""

    eigenvalue: GaussianRational
    size: int

    def sort_key(self) -> tuple[Fraction, Fraction, int]:
        return (*self.eigenvalue.sort_key(), self.size)


class JordanStructure:
    """Multiset of Jordan blocks with multiplicities; a complete similarity invariant."""

    __slots__ = ("_blocks", "order")

    def __init__(self, blocks: Mapping[JordanBlock, int]):
        total = 0
        clean: dict[JordanBlock, int] = {}
        for block, mult in blocks.items():
            if block.size < 1 or mult < 1:
                raise ValueError("block sizes and multiplicities must be >= 1")
            clean[block] = clean.get(block, 0) + mult
            total += block.size * mult
        self._blocks = clean
        self.order = total

    @classmethod
    def from_pairs(
        cls, pairs: Mapping[tuple[GaussianRational | int, int], int]
    ) -> "JordanStructure":
        return cls(
            {
                JordanBlock(GaussianRational._coerce(lam), size): mult  # noqa: SLF001
                for (lam, size), mult in pairs.items()
            }
        )

    def items(self) -> list[tuple[JordanBlock, int]]:
        """Blocks with multiplicities, sorted by (re, im, size)."""
        return sorted(self._blocks.items(), key=lambda kv: kv[0].sort_key())

    def __iter__(self) -> Iterator[tuple[JordanBlock, int]]:
        return iter(self.items())

    def multiplicity(self, eigenvalue: GaussianRational | int, size: int) -> int:
        lam = GaussianRational._coerce(eigenvalue)  # noqa: SLF001
        return self._blocks.get(JordanBlock(lam, size), 0)

    def eigenvalues(self) -> list[GaussianRational]:
        """Distinct eigenvalues, sorted lexicographically by (re, im)."""
        seen = {b.eigenvalue for b in self._blocks}
        return sorted(seen, key=lambda z: z.sort_key())

    def negated(self) -> "JordanStructure":
        return JordanStructure(
            {JordanBlock(-b.eigenvalue, b.size): m for b, m in self._blocks.items()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JordanStructure):
            return NotImplemented
        return self._blocks == other._blocks

    def __hash__(self) -> int:
        return hash(frozenset(self._blocks.items()))

    def __repr__(self) -> str:
        body = ", ".join(
            f"({b.eigenvalue}, {b.size}): {m}" for b, m in self.items()
        )
        return f"JordanStructure({{{body}}})"


def jordan_block(eigenvalue: GaussianRational | int | Fraction, size: int) -> Matrix:
    """The size x size Jordan block: lam on the diagonal, 1 on the superdiagonal."""
    if size < 1:
        raise ValueError("Jordan block size must be >= 1")
    lam = GaussianRational._coerce(eigenvalue)  # noqa: SLF001
    rows = []
    for i in range(size):
        row = [_ZERO] * size
        row[i] = lam
        if i + 1 < size:
            row[i + 1] = _ONE
        rows.append(row)
    return Matrix(rows)


def charpoly(a: Matrix) -> tuple[GaussianRational, ...]:
    """Monic characteristic polynomial coefficients, leading first.

    Uses the Berkowitz method (division-free) on the denominator-cleared
    integer grid, then rescales by powers of the cleared denominator.
    """
    if not a.is_square:
        raise NonSquareInput("characteristic polynomial requires a square matrix")
    n = a.rows
    num = a._num  # noqa: SLF001
    den = a._den  # noqa: SLF001
    coeffs: list[Pair] = [(1, 0), (-num[0][0][0], -num[0][0][1])]
    for r in range(1, n):
        row = num[r][:r]
        col = [num[i][r] for i in range(r)]
        corner = num[r][r]
        v: list[Pair] = [(1, 0), (-corner[0], -corner[1])]
        p = col
        for _ in range(r):
            sa = 0
            sb = 0
            for x, y in zip(row, p):
                sa += x[0] * y[0] - x[1] * y[1]
                sb += x[0] * y[1] + x[1] * y[0]
            v.append((-sa, -sb))
            p = [
                _sum_cmul(num[i][:r], p) for i in range(r)
            ]
        new_len = r + 2
        new_coeffs: list[Pair] = []
        for i in range(new_len):
            sa = 0
            sb = 0
            lo = max(0, i - (len(v) - 1))
            for j in range(lo, min(i, len(coeffs) - 1) + 1):
                x, y = v[i - j]
                u, w = coeffs[j]
                sa += x * u - y * w
                sb += x * w + y * u
            new_coeffs.append((sa, sb))
        coeffs = new_coeffs
    out = []
    scale = 1
    for j, (ca, cb) in enumerate(coeffs):
        out.append(GaussianRational._reduced(ca, cb, scale))  # noqa: SLF001
        scale *= den
    return tuple(out)


def _sum_cmul(row: list[Pair], vec: list[Pair]) -> Pair:
    sa = 0
    sb = 0
    for x, y in zip(row, vec):
        sa += x[0] * y[0] - x[1] * y[1]
        sb += x[0] * y[1] + x[1] * y[0]
    return (sa, sb)


def _factor_int(n: int) -> dict[int, int]:
    """Prime factorization by trial division plus Pollard rho."""
    factors: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    if n == 1:
        return factors
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if _is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return factors


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 50):
        x = 2
        y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"failed to split {n}")


def _two_squares_prime(p: int) -> tuple[int, int]:
    """Write the prime p = 1 (mod 4) as a^2 + b^2 (Hermite-Serret)."""
    a = 2
    while pow(a, (p - 1) // 2, p) != p - 1:
        a += 1
    x = pow(a, (p - 1) // 4, p)
    r0, r1 = p, x
    while r1 * r1 > p:
        r0, r1 = r1, r0 % r1
    b = isqrt(p - r1 * r1)
    return (r1, b)


def _canonical_class(z: Pair) -> Pair:
    """Associate-class representative with re > 0 and im >= 0 (z nonzero)."""
    a, b = z
    for _ in range(4):
        if a > 0 and b >= 0:
            return (a, b)
        a, b = -b, a
    raise ArithmeticError("zero has no associate class")


def gaussian_divisor_classes(n: int) -> list[Pair]:
    """All divisors of the positive integer n in Z[i], up to unit multiples."""
    if n < 1:
        raise ValueError("divisor enumeration requires a positive integer")
    prime_powers: list[list[Pair]] = []
    for p, e in _factor_int(n).items():
        if p == 2:
            prime_powers.append([_gauss_pow((1, 1), k) for k in range(2 * e + 1)])
        elif p % 4 == 3:
            prime_powers.append([_gauss_pow((p, 0), k) for k in range(e + 1)])
        else:
            a, b = _two_squares_prime(p)
            powers = []
            for k1 in range(e + 1):
                for k2 in range(e + 1):
                    powers.append(
                        _cmul(_gauss_pow((a, b), k1), _gauss_pow((a, -b), k2))
                    )
            prime_powers.append(powers)
    divisors: list[Pair] = [(1, 0)]
    for powers in prime_powers:
        divisors = [_cmul(d, q) for d in divisors for q in powers]
    return sorted({_canonical_class(d) for d in divisors})


def _gauss_pow(z: Pair, k: int) -> Pair:
    out = (1, 0)
    for _ in range(k):
        out = _cmul(out, z)
    return out


def _poly_eval(coeffs: list[GaussianRational], z: GaussianRational) -> GaussianRational:
    acc = _ZERO
    for c in coeffs:
        acc = acc * z + c
    return acc


def _poly_deflate(
    coeffs: list[GaussianRational], root: GaussianRational
) -> list[GaussianRational] | None:
    """Divide by (x - root); returns the quotient or None if not a root."""
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + root * out[-1])
    if out[-1]:
        return None
    return out[:-1]


def _root_candidates(coeffs: list[GaussianRational]) -> list[GaussianRational]:
    den = 1
    for c in coeffs:
        d = c.triple()[2]
        den = den * d // gcd(den, d)
    ints = [
        (a * (den // d), b * (den // d))
        for a, b, d in (c.triple() for c in coeffs)
    ]
    lead = ints[0]
    const = ints[-1]
    n0 = const[0] * const[0] + const[1] * const[1]
    nn = lead[0] * lead[0] + lead[1] * lead[1]
    units = ((1, 0), (-1, 0), (0, 1), (0, -1))
    seen: set[GaussianRational] = set()
    for p in gaussian_divisor_classes(n0):
        for q in gaussian_divisor_classes(nn):
            qn = q[0] * q[0] + q[1] * q[1]
            base = _cmul(p, (q[0], -q[1]))
            for u in units:
                ua, ub = _cmul(base, u)
                seen.add(GaussianRational._reduced(ua, ub, qn))  # noqa: SLF001
    return sorted(seen, key=lambda z: z.sort_key())


def eigenvalues(a: Matrix) -> list[GaussianRational]:
    """All eigenvalues with multiplicity, sorted by (re, im).

    Raises SpectrumNotInField when the characteristic polynomial does not
    split over Q(i).
    """
    coeffs = list(charpoly(a))
    roots: list[GaussianRational] = []
    while len(coeffs) > 1 and not coeffs[-1]:
        roots.append(_ZERO)
        coeffs.pop()
    while len(coeffs) > 1:
        if len(coeffs) == 2:
            roots.append(-coeffs[1] / coeffs[0])
            break
        found = False
        for cand in _root_candidates(coeffs):
            quotient = _poly_deflate(coeffs, cand)
            if quotient is None:
                continue
            while quotient is not None:
                roots.append(cand)
                coeffs = quotient
                quotient = _poly_deflate(coeffs, cand)
            found = True
            break
        if not found:
            raise SpectrumNotInField(
                "characteristic polynomial has no root in Q(i); "
                f"remaining degree {len(coeffs) - 1}"
            )
    return sorted(roots, key=lambda z: z.sort_key())


def _shifted_pairs(a: Matrix, lam: GaussianRational) -> tuple[tuple[Pair, ...], ...]:
    """Denominator-cleared integer grid of (a - lam I)."""
    la, lb, ld = lam.triple()
    den = a._den  # noqa: SLF001
    scale = ld
    rows = []
    for i, row in enumerate(a._num):  # noqa: SLF001
        out = [(x * scale, y * scale) for x, y in row]
        out[i] = (out[i][0] - la * den, out[i][1] - lb * den)
        rows.append(tuple(out))
    return tuple(rows)


def _mul_pairs(
    a: tuple[tuple[Pair, ...], ...], b: tuple[tuple[Pair, ...], ...]
) -> tuple[tuple[Pair, ...], ...]:
    bt = list(zip(*b))
    out = []
    for arow in a:
        row = []
        for bcol in bt:
            sa = 0
            sb = 0
            for (x, y), (u, v) in zip(arow, bcol):
                sa += x * u - y * v
                sb += x * v + y * u
            row.append((sa, sb))
        out.append(tuple(row))
    return tuple(out)


def _reduce_pairs(
    grid: tuple[tuple[Pair, ...], ...]
) -> tuple[tuple[Pair, ...], ...]:
    g = 0
    for row in grid:
        for a, b in row:
            g = gcd(g, gcd(a, b))
            if g == 1:
                return grid
    if g <= 1:
        return grid
    return tuple(tuple((a // g, b // g) for a, b in row) for row in grid)


def jordan_structure(a: Matrix) -> JordanStructure:
    """The full Jordan type of a matrix with spectrum in Q(i)."""
    if not a.is_square:
        raise NonSquareInput("Jordan structure requires a square matrix")
    n = a.rows
    evs = eigenvalues(a)
    alg_mult: dict[GaussianRational, int] = {}
    for lam in evs:
        alg_mult[lam] = alg_mult.get(lam, 0) + 1
    blocks: dict[JordanBlock, int] = {}
    for lam, am in alg_mult.items():
        shifted = _shifted_pairs(a, lam)
        ranks = [n]
        power = shifted
        while ranks[-1] > n - am:
            ranks.append(rank_pairs(power, n, n))
            if ranks[-1] > n - am:
                power = _reduce_pairs(_mul_pairs(power, shifted))
        ranks.append(ranks[-1])
        for k in range(1, len(ranks) - 1):
            mult = ranks[k - 1] - 2 * ranks[k] + ranks[k + 1]
            if mult:
                blocks[JordanBlock(lam, k)] = mult
    return JordanStructure(blocks)


def is_valid_hamiltonian_structure(js: JordanStructure) -> bool:
    """Realizability by a Hamiltonian matrix: paired nonzero blocks and
    even multiplicity for odd-size nilpotent blocks."""
    if js.order % 2:
        return False
    for block, mult in js.items():
        if block.eigenvalue:
            if js.multiplicity(-block.eigenvalue, block.size) != mult:
                return False
        elif block.size % 2 and mult % 2:
            return False
    return True


def is_valid_skew_hamiltonian_structure(js: JordanStructure) -> bool:
    """Realizability by a skew-Hamiltonian matrix: every block has even
    multiplicity."""
    if js.order % 2:
        return False
    return all(mult % 2 == 0 for _, mult in js.items())
