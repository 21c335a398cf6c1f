"""Dense exact matrices over Q(i).

Internally a matrix is a grid of Gaussian-integer pairs over one common
positive denominator, reduced so the global content is 1. That keeps the
hot kernels (products, fraction-free elimination, characteristic
polynomials) in plain integer arithmetic; entries surface as
:class:`~sympreal.scalars.GaussianRational` values on access.

The module also provides the two block sums the canonical-form theory is
phrased in (the block-diagonal direct sum and the quadrant-interleaving
expanding sum), the structural predicates for the symplectic group and
its Lie algebra, and a seeded generator of random symplectic matrices.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Sequence

from .errors import (
    DimensionMismatch,
    InternalCheckFailed,
    NonSquareInput,
    OddOrderInput,
    SingularMatrix,
)
from .scalars import GaussianRational, ScalarLike

Pair = tuple[int, int]
PairGrid = tuple[tuple[Pair, ...], ...]


def _cmul(x: Pair, y: Pair) -> Pair:
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c)


def _cdiv_exact(x: Pair, y: Pair) -> Pair:
    """Exact division in Z[i]; raises if the quotient is not integral."""
    a, b = x
    c, d = y
    n = c * c + d * d
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[i]")
    re = a * c + b * d
    im = b * c - a * d
    qr, rr = divmod(re, n)
    qi, ri = divmod(im, n)
    if rr or ri:
        raise InternalCheckFailed("inexact division in Z[i]")
    return (qr, qi)


def _content(num: Iterable[Iterable[Pair]], den: int) -> int:
    g = den
    for row in num:
        for a, b in row:
            if a:
                g = gcd(g, a)
            if b:
                g = gcd(g, b)
            if g == 1:
                return 1
    return g


class Matrix:
    """Immutable dense matrix with entries in Q(i)."""

    __slots__ = ("rows", "cols", "_den", "_num")

    def __init__(self, entries: Sequence[Sequence[ScalarLike]]):
        grid = [
            [GaussianRational._coerce(e) for e in row]  # noqa: SLF001
            for row in entries
        ]
        if not grid or not grid[0]:
            raise DimensionMismatch("matrix must have at least one row and column")
        cols = len(grid[0])
        for row in grid:
            if len(row) != cols or any(e is None for e in row):
                raise DimensionMismatch("ragged rows or non-scalar entries")
        den = 1
        for row in grid:
            for e in row:
                d = e.triple()[2]
                den = den * d // gcd(den, d)
        num = tuple(
            tuple(
                (a * (den // d), b * (den // d))
                for a, b, d in (e.triple() for e in row)
            )
            for row in grid
        )
        self.rows = len(grid)
        self.cols = cols
        g = _content(num, den)
        if g > 1:
            num = tuple(tuple((a // g, b // g) for a, b in row) for row in num)
            den //= g
        self._num = num
        self._den = den

    @classmethod
    def _raw(cls, rows: int, cols: int, num: PairGrid, den: int) -> "Matrix":
        """Wrap an already content-reduced pair grid (den >= 1)."""
        obj = object.__new__(cls)
        obj.rows = rows
        obj.cols = cols
        obj._num = num
        obj._den = den
        return obj

    @classmethod
    def _reduced(
        cls, rows: int, cols: int, num: Sequence[Sequence[Pair]], den: int
    ) -> "Matrix":
        g = _content(num, den)
        if g > 1:
            num = [[(a // g, b // g) for a, b in row] for row in num]
            den //= g
        return cls._raw(rows, cols, tuple(tuple(row) for row in num), den)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(
            n,
            n,
            tuple(
                tuple((1, 0) if i == j else (0, 0) for j in range(n))
                for i in range(n)
            ),
            1,
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(
            rows, cols, tuple(tuple((0, 0) for _ in range(cols)) for _ in range(rows)), 1
        )

    @classmethod
    def diagonal(cls, values: Sequence[ScalarLike]) -> "Matrix":
        n = len(values)
        zero = GaussianRational._raw(0, 0, 1)  # noqa: SLF001
        return cls(
            [[values[i] if i == j else zero for j in range(n)] for i in range(n)]
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[ScalarLike]]) -> "Matrix":
        return cls([[col[i] for col in columns] for i in range(len(columns[0]))])

    def entry(self, i: int, j: int) -> GaussianRational:
        a, b = self._num[i][j]
        return GaussianRational._reduced(a, b, self._den)  # noqa: SLF001

    def __getitem__(self, key: tuple[int, int]) -> GaussianRational:
        return self.entry(*key)

    def row(self, i: int) -> tuple[GaussianRational, ...]:
        return tuple(self.entry(i, j) for j in range(self.cols))

    def column(self, j: int) -> tuple[GaussianRational, ...]:
        return tuple(self.entry(i, j) for i in range(self.rows))

    def to_lists(self) -> list[list[GaussianRational]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def order(self) -> int:
        if not self.is_square:
            raise NonSquareInput("order is defined for square matrices only")
        return self.rows

    def is_zero(self) -> bool:
        return all(p == (0, 0) for row in self._num for p in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self._den == other._den
            and self._num == other._num
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._den, self._num))

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(self.entry(i, j)) for j in range(self.cols))
            for i in range(self.rows)
        )
        return f"Matrix[{self.rows}x{self.cols}]({body})"

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(
                f"cannot add {self.rows}x{self.cols} and {other.rows}x{other.cols}"
            )
        den = self._den * other._den // gcd(self._den, other._den)
        fa = den // self._den
        fb = den // other._den
        num = [
            [
                (x[0] * fa + y[0] * fb, x[1] * fa + y[1] * fb)
                for x, y in zip(ra, rb)
            ]
            for ra, rb in zip(self._num, other._num)
        ]
        return Matrix._reduced(self.rows, self.cols, num, den)

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix._raw(
            self.rows,
            self.cols,
            tuple(tuple((-a, -b) for a, b in row) for row in self._num),
            self._den,
        )

    def __mul__(self, other: "Matrix | ScalarLike") -> "Matrix":
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise DimensionMismatch(
                    f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
                )
            a = self._num
            b = other._num
            bt = list(zip(*b))
            num = []
            for arow in a:
                out_row = []
                for bcol in bt:
                    sa = 0
                    sb = 0
                    for (x, y), (u, v) in zip(arow, bcol):
                        sa += x * u - y * v
                        sb += x * v + y * u
                    out_row.append((sa, sb))
                num.append(out_row)
            return Matrix._reduced(
                self.rows, other.cols, num, self._den * other._den
            )
        scalar = GaussianRational._coerce(other)  # noqa: SLF001
        if scalar is None:
            return NotImplemented
        sa, sb, sd = scalar.triple()
        num = [
            [(x * sa - y * sb, x * sb + y * sa) for x, y in row] for row in self._num
        ]
        return Matrix._reduced(self.rows, self.cols, num, self._den * sd)

    def __rmul__(self, other: ScalarLike) -> "Matrix":
        return self * other

    def __pow__(self, exponent: int) -> "Matrix":
        if not self.is_square:
            raise NonSquareInput("powers require a square matrix")
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Matrix.identity(self.rows)
        base = self
        n = exponent
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def transpose(self) -> "Matrix":
        return Matrix._raw(
            self.cols, self.rows, tuple(zip(*self._num)), self._den
        )

    def apply(self, vector: Sequence[GaussianRational]) -> tuple[GaussianRational, ...]:
        """Matrix-vector product on a tuple of scalars."""
        if len(vector) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        out = []
        for i in range(self.rows):
            acc = GaussianRational._raw(0, 0, 1)  # noqa: SLF001
            for j, v in enumerate(vector):
                if v:
                    acc = acc + self.entry(i, j) * v
            out.append(acc)
        return tuple(out)

    def rank(self) -> int:
        """Exact rank over Q(i), by fraction-free (Bareiss) elimination."""
        return rank_pairs(self._num, self.rows, self.cols)

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise NonSquareInput("inverse requires a square matrix")
        n = self.rows
        work = [
            [self.entry(i, j) for j in range(n)]
            + [GaussianRational(1 if j == i else 0) for j in range(n)]
            for i in range(n)
        ]
        for col in range(n):
            piv = next((r for r in range(col, n) if work[r][col]), None)
            if piv is None:
                raise SingularMatrix("matrix is singular over Q(i)")
            work[col], work[piv] = work[piv], work[col]
            inv_p = work[col][col].inverse()
            work[col] = [e * inv_p for e in work[col]]
            for r in range(n):
                if r != col and work[r][col]:
                    f = work[r][col]
                    work[r] = [e - f * p for e, p in zip(work[r], work[col])]
        return Matrix([row[n:] for row in work])

    def trace(self) -> GaussianRational:
        if not self.is_square:
            raise NonSquareInput("trace requires a square matrix")
        acc = GaussianRational(0)
        for i in range(self.rows):
            acc = acc + self.entry(i, i)
        return acc

    def nullspace(self) -> list[tuple[GaussianRational, ...]]:
        """Primitive basis of the right nullspace (deterministic order)."""
        return nullspace_pairs(self._num, self.rows, self.cols)


def rank_pairs(num: Sequence[Sequence[Pair]], rows: int, cols: int) -> int:
    m = [list(row) for row in num]
    prev: Pair = (1, 0)
    pr = 0
    for c in range(cols):
        piv = next((r for r in range(pr, rows) if m[r][c] != (0, 0)), None)
        if piv is None:
            continue
        if piv != pr:
            m[pr], m[piv] = m[piv], m[pr]
        p = m[pr][c]
        for r in range(pr + 1, rows):
            x = m[r][c]
            if x == (0, 0):
                if prev != (1, 0):
                    for j in range(c + 1, cols):
                        t = _cmul(p, m[r][j])
                        m[r][j] = _cdiv_exact(t, prev)
                else:
                    for j in range(c + 1, cols):
                        m[r][j] = _cmul(p, m[r][j])
                continue
            for j in range(c + 1, cols):
                t = _cmul(p, m[r][j])
                s = _cmul(x, m[pr][j])
                m[r][j] = _cdiv_exact((t[0] - s[0], t[1] - s[1]), prev)
            m[r][c] = (0, 0)
        prev = p
        pr += 1
        if pr == rows:
            break
    return pr


def nullspace_pairs(
    num: Sequence[Sequence[Pair]], rows: int, cols: int
) -> list[tuple[GaussianRational, ...]]:
    """Primitive integer basis of the right nullspace of a pair grid."""
    m = [list(row) for row in num]
    prev: Pair = (1, 0)
    pivots: list[int] = []
    pr = 0
    for c in range(cols):
        piv = next((r for r in range(pr, rows) if m[r][c] != (0, 0)), None)
        if piv is None:
            continue
        if piv != pr:
            m[pr], m[piv] = m[piv], m[pr]
        p = m[pr][c]
        for r in range(pr + 1, rows):
            x = m[r][c]
            for j in range(c + 1, cols):
                t = _cmul(p, m[r][j])
                if x != (0, 0):
                    s = _cmul(x, m[pr][j])
                    t = (t[0] - s[0], t[1] - s[1])
                m[r][j] = _cdiv_exact(t, prev)
            m[r][c] = (0, 0)
        prev = p
        pivots.append(c)
        pr += 1
        if pr == rows:
            break
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for f in free:
        x: list[GaussianRational] = [GaussianRational(0)] * cols
        x[f] = GaussianRational(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            acc = GaussianRational(0)
            for j in range(c + 1, cols):
                if x[j]:
                    a, b = m[r][j]
                    if a or b:
                        acc = acc + GaussianRational._raw(a, b, 1) * x[j]  # noqa: SLF001
            pa, pb = m[r][c]
            x[c] = -acc / GaussianRational._raw(pa, pb, 1)  # noqa: SLF001
        basis.append(primitive_vector(tuple(x)))
    return basis


def primitive_scale(vector: Sequence[GaussianRational]) -> Fraction:
    """The positive rational r such that r * vector has coprime Gaussian
    integer entries (r = 1 for the zero vector)."""
    den = 1
    for v in vector:
        d = v.triple()[2]
        den = den * d // gcd(den, d)
    g = 0
    for v in vector:
        a, b, d = v.triple()
        f = den // d
        g = gcd(g, gcd(a * f, b * f))
        if g == 1:
            break
    if g == 0:
        return Fraction(1)
    return Fraction(den, g)


def primitive_vector(
    vector: Sequence[GaussianRational],
) -> tuple[GaussianRational, ...]:
    """Scale by a positive rational so entries are coprime Gaussian integers."""
    r = primitive_scale(vector)
    if r == 1:
        return tuple(vector)
    scale = GaussianRational(r)
    return tuple(v * scale for v in vector)


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    """Block-diagonal sum of two square matrices."""
    if not a.is_square or not b.is_square:
        raise NonSquareInput("direct sum requires square blocks")
    n, m = a.rows, b.rows
    den = a._den * b._den // gcd(a._den, b._den)
    fa, fb = den // a._den, den // b._den
    num = []
    for i in range(n):
        num.append(
            [(x * fa, y * fa) for x, y in a._num[i]] + [(0, 0)] * m
        )
    for i in range(m):
        num.append([(0, 0)] * n + [(x * fb, y * fb) for x, y in b._num[i]])
    return Matrix._reduced(n + m, n + m, num, den)


def expanding_sum(a: Matrix, b: Matrix) -> Matrix:
    """Quadrant-wise interleaving sum of two even-order square matrices.

    Splitting each operand into four equal quadrants, the result of order
    2(m+n) places the direct sum of corresponding quadrants in each of its
    own quadrants. It preserves symplectic and Hamiltonian structure.
    """
    if not a.is_square or not b.is_square:
        raise NonSquareInput("expanding sum requires square operands")
    if a.rows % 2 or b.rows % 2:
        raise OddOrderInput("expanding sum requires even-order operands")
    m = a.rows // 2
    n = b.rows // 2
    den = a._den * b._den // gcd(a._den, b._den)
    fa, fb = den // a._den, den // b._den
    size = 2 * (m + n)
    num = [[(0, 0)] * size for _ in range(size)]

    def put(block_num, factor, row_off_src, col_off_src, row_off_dst, col_off_dst, h, w):
        for i in range(h):
            src = block_num[row_off_src + i]
            dst = num[row_off_dst + i]
            for j in range(w):
                x, y = src[col_off_src + j]
                dst[col_off_dst + j] = (x * factor, y * factor)

    # quadrants of A land at offsets 0 / m+n; those of B at m / m+n+m
    for qi in (0, 1):
        for qj in (0, 1):
            put(a._num, fa, qi * m, qj * m, qi * (m + n), qj * (m + n), m, m)
            put(b._num, fb, qi * n, qj * n, qi * (m + n) + m, qj * (m + n) + m, n, n)
    return Matrix._reduced(size, size, num, den)


def expanding_sum_all(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise DimensionMismatch("expanding sum of an empty sequence")
    acc = blocks[0]
    for b in blocks[1:]:
        acc = expanding_sum(acc, b)
    return acc


def symplectic_j(n: int) -> Matrix:
    """The form matrix J of order 2n: [[0, I], [-I, 0]]."""
    if n < 1:
        raise DimensionMismatch("half-dimension must be positive")
    num = []
    for i in range(n):
        row = [(0, 0)] * (2 * n)
        row[n + i] = (1, 0)
        num.append(row)
    for i in range(n):
        row = [(0, 0)] * (2 * n)
        row[i] = (-1, 0)
        num.append(row)
    return Matrix._raw(2 * n, 2 * n, tuple(tuple(r) for r in num), 1)


def _even_order(m: Matrix, what: str) -> int:
    if not m.is_square:
        raise NonSquareInput(f"{what} requires a square matrix")
    if m.rows % 2:
        raise OddOrderInput(f"{what} requires an even-order matrix")
    return m.rows // 2


def _j_times(m: Matrix) -> Matrix:
    """J * m computed by row shuffling (no multiplication)."""
    n = m.rows // 2
    num = tuple(m._num[n + i] for i in range(n)) + tuple(
        tuple((-a, -b) for a, b in m._num[i]) for i in range(n)
    )
    return Matrix._raw(m.rows, m.cols, num, m._den)


def is_hamiltonian(x: Matrix) -> bool:
    """Whether x^T J = -J x, i.e. J x is symmetric."""
    _even_order(x, "the Hamiltonian predicate")
    jx = _j_times(x)
    num = jx._num
    return all(
        num[i][j] == num[j][i] for i in range(x.rows) for j in range(i + 1, x.rows)
    )


def is_skew_hamiltonian(x: Matrix) -> bool:
    """Whether x^T J = J x, i.e. J x is skew-symmetric."""
    _even_order(x, "the skew-Hamiltonian predicate")
    jx = _j_times(x)
    num = jx._num
    n = x.rows
    if any(num[i][i] != (0, 0) for i in range(n)):
        return False
    return all(
        num[i][j] == (-num[j][i][0], -num[j][i][1])
        for i in range(n)
        for j in range(i + 1, n)
    )


def is_symplectic(g: Matrix) -> bool:
    """Whether g^T J g = J."""
    half = _even_order(g, "the symplectic predicate")
    return g.transpose() * _j_times(g) == symplectic_j(half)


def is_involution(g: Matrix) -> bool:
    _even_order(g, "the involution predicate")
    return g * g == Matrix.identity(g.rows)


def is_skew_involution(g: Matrix) -> bool:
    _even_order(g, "the skew-involution predicate")
    return g * g == -Matrix.identity(g.rows)


def symplectic_inverse(s: Matrix) -> Matrix:
    """Inverse of a symplectic matrix via s^{-1} = -J s^T J (no elimination)."""
    n = _even_order(s, "the symplectic inverse")
    st = list(zip(*s._num))  # st[k] = column k of s
    num = []
    for i in range(n):
        # row i of [D^T | -B^T] where s = [[A, B], [C, D]]
        num.append(
            tuple(st[n + i][n:]) + tuple((-a, -b) for a, b in st[n + i][:n])
        )
    for i in range(n):
        # row i of [-C^T | A^T]
        num.append(tuple((-a, -b) for a, b in st[i][n:]) + tuple(st[i][:n]))
    return Matrix._raw(2 * n, 2 * n, tuple(num), s._den)


def _small_scalar(rng: random.Random) -> GaussianRational:
    re = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    if rng.randint(0, 2) == 0:
        im = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
    else:
        im = Fraction(0)
    return GaussianRational(re, im)


def _unit_triangular(rng: random.Random, n: int, upper: bool) -> Matrix:
    rows = [[GaussianRational(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.randint(0, 1):
                v = _small_scalar(rng)
                if upper:
                    rows[i][j] = v
                else:
                    rows[j][i] = v
    return Matrix(rows)


def _unit_triangular_inverse(g: Matrix, upper: bool) -> Matrix:
    # exact inverse by forward/back substitution; g is unit triangular
    n = g.rows
    inv = [[GaussianRational(1 if i == j else 0) for j in range(n)] for i in range(n)]
    order = range(n) if not upper else range(n - 1, -1, -1)
    for col in range(n):
        for i in order:
            acc = GaussianRational(0)
            js = range(i) if not upper else range(i + 1, n)
            for j in js:
                if g.entry(i, j) and inv[j][col]:
                    acc = acc + g.entry(i, j) * inv[j][col]
            base = GaussianRational(1 if i == col else 0)
            inv[i][col] = base - acc
    return Matrix(inv)


def random_symplectic(
    n: int, seed: int, factor_count: int | None = None
) -> Matrix:
    """Seeded random element of Sp(2n, Q(i)).

    The result is a product of the standard generators diag(g, (g^T)^{-1})
    with g unit upper/lower triangular over small Gaussian rationals,
    [[I, B], [0, I]] with B symmetric, and J itself. Deterministic for a
    fixed (n, seed, factor_count).
    """
    if n < 1:
        raise DimensionMismatch("half-dimension must be positive")
    rng = random.Random(seed)
    if factor_count is None:
        factor_count = rng.randint(4, 6)
    result = Matrix.identity(2 * n)
    for _ in range(factor_count):
        kind = rng.randrange(4)
        if kind in (0, 1):
            upper = kind == 0
            g = _unit_triangular(rng, n, upper)
            ginv_t = _unit_triangular_inverse(g, upper).transpose()
            factor = direct_sum(g, ginv_t)
        elif kind == 2:
            b = [[GaussianRational(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    if rng.randint(0, 1):
                        v = _small_scalar(rng)
                        b[i][j] = v
                        b[j][i] = v
            rows = []
            for i in range(n):
                rows.append(
                    [GaussianRational(1 if i == j else 0) for j in range(n)] + b[i]
                )
            for i in range(n):
                rows.append(
                    [GaussianRational(0)] * n
                    + [GaussianRational(1 if i == j else 0) for j in range(n)]
                )
            factor = Matrix(rows)
        else:
            factor = symplectic_j(n)
        result = result * factor
    return result


def map_entries(
    m: Matrix, fn: Callable[[GaussianRational], GaussianRational]
) -> Matrix:
    return Matrix(
        [[fn(m.entry(i, j)) for j in range(m.cols)] for i in range(m.rows)]
    )
