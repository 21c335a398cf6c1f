"""Gaussian-integer number theory: factoring, square roots mod m, conics.

Z[i] is Euclidean, so gcd, CRT, and Legendre-style descent all carry over
from the rational integers. The two consumers are eigenvalue search
(divisor enumeration) and the canonical transform's chain normalization,
which needs constructive solutions of

    w^2 = a x^2 + b y^2        over Q(i)

to place chain generators in prescribed square classes. The solver is
Mordell's descent: balanced square roots modulo the squarefree part of b
shrink the instance, and solutions compose back up through the identity
(w^2 - a x^2)(u^2 - a v^2) = (wu + a xv)^2 - a (wv + ux)^2.
"""

from __future__ import annotations

from math import gcd as int_gcd
from math import isqrt

Pair = tuple[int, int]

_UNITS: tuple[Pair, ...] = ((1, 0), (0, 1), (-1, 0), (0, -1))


def gmul(x: Pair, y: Pair) -> Pair:
    a, b = x
    c, d = y
    return (a * c - b * d, a * d + b * c)


def gadd(x: Pair, y: Pair) -> Pair:
    return (x[0] + y[0], x[1] + y[1])


def gsub(x: Pair, y: Pair) -> Pair:
    return (x[0] - y[0], x[1] - y[1])


def gneg(x: Pair) -> Pair:
    return (-x[0], -x[1])


def gnorm(x: Pair) -> int:
    return x[0] * x[0] + x[1] * x[1]


def gconj(x: Pair) -> Pair:
    return (x[0], -x[1])


def is_unit(x: Pair) -> bool:
    return gnorm(x) == 1


def _round_half_down(num: int, den: int) -> int:
    # deterministic nearest-integer division (ties toward minus infinity)
    return (2 * num + den) // (2 * den)


def gdivmod(x: Pair, y: Pair) -> tuple[Pair, Pair]:
    """Euclidean division: x = q*y + r with norm(r) <= norm(y)/2."""
    n = gnorm(y)
    if n == 0:
        raise ZeroDivisionError("division by zero in Z[i]")
    t = gmul(x, gconj(y))
    q = (_round_half_down(t[0], n), _round_half_down(t[1], n))
    r = gsub(x, gmul(q, y))
    return q, r


def gdiv_exact(x: Pair, y: Pair) -> Pair:
    q, r = gdivmod(x, y)
    if r != (0, 0):
        raise ArithmeticError("inexact Gaussian division")
    return q


def ggcd(x: Pair, y: Pair) -> Pair:
    while y != (0, 0):
        _, r = gdivmod(x, y)
        x, y = y, r
    return canonical_associate(x) if x != (0, 0) else (0, 0)


def gbezout(x: Pair, y: Pair) -> tuple[Pair, Pair, Pair]:
    """(g, s, t) with s*x + t*y = g = gcd(x, y)."""
    r0, r1 = x, y
    s0, s1 = (1, 0), (0, 0)
    t0, t1 = (0, 0), (1, 0)
    while r1 != (0, 0):
        q, r = gdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, gsub(s0, gmul(q, s1))
        t0, t1 = t1, gsub(t0, gmul(q, t1))
    return r0, s0, t0


def canonical_associate(z: Pair) -> Pair:
    """The unit multiple with re > 0, im >= 0 (z nonzero)."""
    a, b = z
    for _ in range(4):
        if a > 0 and b >= 0:
            return (a, b)
        a, b = -b, a
    raise ArithmeticError("zero has no canonical associate")


def gpow(z: Pair, k: int) -> Pair:
    out = (1, 0)
    base = z
    while k:
        if k & 1:
            out = gmul(out, base)
        base = gmul(base, base)
        k >>= 1
    return out


# ---------------------------------------------------------------------------
# rational-integer helpers


def is_probable_prime(n: int) -> bool:
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
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = int_gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"failed to split {n}")


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer."""
    if n < 1:
        raise ValueError("factor_int requires a positive integer")
    factors: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            factors[m] = factors.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return factors


def two_squares_prime(p: int) -> tuple[int, int]:
    """Write a prime p = 1 (mod 4) as a^2 + b^2 (Hermite-Serret)."""
    a = 2
    while pow(a, (p - 1) // 2, p) != p - 1:
        a += 1
    x = pow(a, (p - 1) // 4, p)
    r0, r1 = p, x
    while r1 * r1 > p:
        r0, r1 = r1, r0 % r1
    b = isqrt(p - r1 * r1)
    return (r1, b)


def sqrt_mod_int(a: int, p: int) -> int | None:
    """Square root of a modulo an odd rational prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m = s
    c = pow(z, q, p)
    t = pow(a, q, p)
    r = pow(a, (q + 1) // 2, p)
    while t != 1:
        t2 = t
        i = 0
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m = i
        c = b * b % p
        t = t * c % p
        r = r * b % p
    return r


# ---------------------------------------------------------------------------
# Gaussian primes and factorization


def factor_gaussian(z: Pair) -> tuple[Pair, dict[Pair, int]]:
    """Factor a nonzero Gaussian integer into canonical primes.

    Returns (unit, {prime: exponent}) with primes in canonical associates;
    unit * prod(prime^exp) == z.
    """
    if z == (0, 0):
        raise ValueError("cannot factor zero")
    factors: dict[Pair, int] = {}
    rest = z
    for p, e in sorted(factor_int(gnorm(z)).items()):
        if p == 2:
            pi = (1, 1)
            while True:
                q, r = gdivmod(rest, pi)
                if r != (0, 0):
                    break
                rest = q
                factors[pi] = factors.get(pi, 0) + 1
        elif p % 4 == 3:
            pi = (p, 0)
            while True:
                q, r = gdivmod(rest, pi)
                if r != (0, 0):
                    break
                rest = q
                factors[pi] = factors.get(pi, 0) + 1
        else:
            a, b = two_squares_prime(p)
            for pi in (canonical_associate((a, b)), canonical_associate((a, -b))):
                while True:
                    q, r = gdivmod(rest, pi)
                    if r != (0, 0):
                        break
                    rest = q
                    factors[pi] = factors.get(pi, 0) + 1
    if not is_unit(rest):
        raise ArithmeticError(f"incomplete factorization of {z}")
    return rest, factors


def gaussian_divisor_classes(n: int) -> list[Pair]:
    """All divisors of the positive integer n in Z[i], up to units."""
    if n < 1:
        raise ValueError("divisor enumeration requires a positive integer")
    _, factors = factor_gaussian((n, 0))
    divisors: list[Pair] = [(1, 0)]
    for pi, e in sorted(factors.items()):
        powers = [gpow(pi, k) for k in range(e + 1)]
        divisors = [gmul(d, q) for d in divisors for q in powers]
    return sorted({canonical_associate(d) for d in divisors})


def squarefree_part(z: Pair) -> tuple[Pair, Pair]:
    """(s, r) with z = s^2 * r and r squarefree (canonical primes)."""
    if z == (0, 0):
        raise ValueError("zero has no squarefree part")
    unit, factors = factor_gaussian(z)
    s: Pair = (1, 0)
    r: Pair = unit
    for pi, e in sorted(factors.items()):
        s = gmul(s, gpow(pi, e // 2))
        if e % 2:
            r = gmul(r, pi)
    return s, r


# ---------------------------------------------------------------------------
# square roots in residue fields of Z[i]


def _residue_data_split(pi: Pair) -> tuple[int, int]:
    """For a split/ramified-free prime pi with norm p = 1 (mod 4): (p, r)
    where i = r in Z[i]/pi and the residue field is F_p."""
    p = gnorm(pi)
    u, v = pi
    r = (-u * pow(v, -1, p)) % p
    return p, r


def _sqrt_mod_prime(a: Pair, pi: Pair) -> Pair | None:
    """A square root of a modulo the Gaussian prime pi, or None."""
    n = gnorm(pi)
    if n == 2:  # residue field F_2: both classes are their own square
        _, r = gdivmod(a, pi)
        return (0, 0) if r == (0, 0) else (1, 0)
    if pi[1] == 0 and pi[0] % 4 == 3:
        return _sqrt_mod_inert(a, pi[0])
    p, r = _residue_data_split(pi)
    a_int = (a[0] + a[1] * r) % p
    root = sqrt_mod_int(a_int, p)
    if root is None:
        return None
    return (root, 0)


def _sqrt_mod_inert(a: Pair, p: int) -> Pair | None:
    """Square root in F_{p^2} = F_p(i) for an inert prime p = 3 (mod 4)."""
    a = (a[0] % p, a[1] % p)
    if a == (0, 0):
        return (0, 0)
    q = p * p

    def fmul(x: Pair, y: Pair) -> Pair:
        return ((x[0] * y[0] - x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)

    def fpow(x: Pair, k: int) -> Pair:
        out = (1, 0)
        base = x
        while k:
            if k & 1:
                out = fmul(out, base)
            base = fmul(base, base)
            k >>= 1
        return out

    if fpow(a, (q - 1) // 2) != (1, 0):
        return None
    m = q - 1
    s = 0
    while m % 2 == 0:
        m //= 2
        s += 1
    # deterministic nonresidue search
    z = None
    for re in range(p):
        for im in (1, 0) if re else (1,):
            cand = (re, im)
            if cand == (0, 0):
                continue
            if fpow(cand, (q - 1) // 2) == (p - 1, 0):
                z = cand
                break
        if z:
            break
    if z is None:
        raise ArithmeticError("no quadratic nonresidue found")
    mm = s
    c = fpow(z, m)
    t = fpow(a, m)
    r = fpow(a, (m + 1) // 2)
    while t != (1, 0):
        t2 = t
        i = 0
        while t2 != (1, 0):
            t2 = fmul(t2, t2)
            i += 1
        b = fpow(c, 1 << (mm - i - 1))
        mm = i
        c = fmul(b, b)
        t = fmul(t, c)
        r = fmul(r, b)
    return r


def sqrt_mod_squarefree(a: Pair, m: Pair) -> Pair | None:
    """A square root of a modulo a squarefree Gaussian integer m, or None.

    Primes dividing both a and m contribute the zero root; insolubility at
    any coprime prime makes the whole congruence insoluble.
    """
    if is_unit(m):
        return (0, 0)
    _, factors = factor_gaussian(m)
    residues: list[tuple[Pair, Pair]] = []
    for pi in sorted(factors):
        root = _sqrt_mod_prime(a, pi)
        if root is None:
            return None
        residues.append((root, pi))
    # CRT over Z[i]
    x, mod = residues[0]
    for root, pi in residues[1:]:
        g, s, _t = gbezout(mod, pi)
        if not is_unit(g):
            raise ArithmeticError("CRT moduli are not coprime")
        g_inv = gconj(g)  # inverse of a unit
        corr = gmul(gmul(mod, s), gmul(g_inv, gsub(root, x)))
        mod = gmul(mod, pi)
        _, x = gdivmod(gadd(x, corr), mod)
    return x


# ---------------------------------------------------------------------------
# the norm-equation descent


def solve_norm_equation(a: Pair, b: Pair) -> tuple[Pair, Pair, Pair] | None:
    """Nontrivial (w, x, y) in Z[i] with w^2 = a x^2 + b y^2, or None.

    a and b need not be squarefree or coprime. A None return certifies
    insolubility when a square-root step fails on a prime coprime to the
    other coefficient; every returned triple is verified exactly.
    """
    if a == (0, 0) or b == (0, 0):
        return None
    sa, a1 = squarefree_part(a)
    sb, b1 = squarefree_part(b)
    res = _descend(a1, b1, 0)
    if res is None:
        return None
    w, x, y = res
    # undo squarefree scaling: a1 x^2 = a (x / sa)^2, cleared homogeneously
    w, x, y = _primitive_triple((gmul(w, gmul(sa, sb)), gmul(x, sb), gmul(y, sa)))
    lhs = gmul(w, w)
    rhs = gadd(gmul(a, gmul(x, x)), gmul(b, gmul(y, y)))
    if lhs != rhs or (w == (0, 0) and x == (0, 0) and y == (0, 0)):
        raise ArithmeticError("norm-equation descent produced a bad triple")
    return w, x, y


def _primitive_triple(t: tuple[Pair, Pair, Pair]) -> tuple[Pair, Pair, Pair]:
    g = ggcd(ggcd(t[0], t[1]), t[2])
    if g == (0, 0) or is_unit(g):
        return t
    return (gdiv_exact(t[0], g), gdiv_exact(t[1], g), gdiv_exact(t[2], g))


def _descend(a: Pair, b: Pair, depth: int) -> tuple[Pair, Pair, Pair] | None:
    """Solve w^2 = a x^2 + b y^2 for squarefree a, b (Mordell descent)."""
    if depth > 500:
        raise ArithmeticError("norm-equation descent failed to terminate")
    if is_unit(a) and is_unit(b):
        return _solve_unit_unit(a, b)
    if is_unit(b) or (not is_unit(a) and gnorm(a) > gnorm(b)):
        res = _descend(b, a, depth + 1)
        if res is None:
            return None
        w, x, y = res
        return (w, y, x)
    # b is a non-unit of maximal norm: find t^2 = a (mod b), balanced
    t = sqrt_mod_squarefree(a, b)
    if t is None:
        return None
    _, t = gdivmod(t, b)  # balanced representative: norm(t) <= norm(b)/2
    num = gsub(gmul(t, t), a)
    if num == (0, 0):
        return (t, (1, 0), (0, 0))
    b1_full = gdiv_exact(num, b)
    s, b1 = squarefree_part(b1_full)
    sub = _descend(a, b1, depth + 1)
    if sub is None:
        return None
    w1, x1, y1 = sub
    # compose: (w1^2 - a x1^2)(t^2 - a) = (w1 t + a x1)^2 - a (w1 + t x1)^2
    w = gadd(gmul(w1, t), gmul(a, x1))
    x = gadd(w1, gmul(t, x1))
    y = gmul(gmul(b1, s), y1)
    return _primitive_triple((w, x, y))


def _solve_unit_unit(a: Pair, b: Pair) -> tuple[Pair, Pair, Pair]:
    """w^2 = a x^2 + b y^2 for units a, b; always solvable over Q(i)."""
    for ua in _UNITS:
        if gmul(ua, ua) == a:
            return (ua, (1, 0), (0, 0))
    for ub in _UNITS:
        if gmul(ub, ub) == b:
            return (ub, (0, 0), (1, 0))
    # both coefficients are +-i
    table = {
        ((0, 1), (0, 1)): ((2, 0), (1, -1), (1, -1)),
        ((0, 1), (0, -1)): ((2, 0), (1, -1), (-1, -1)),
        ((0, -1), (0, 1)): ((2, 0), (-1, -1), (1, -1)),
        ((0, -1), (0, -1)): ((2, 0), (1, 1), (-1, -1)),
    }
    return table[(a, b)]


def _gaussian_sqrt(z: Pair) -> Pair | None:
    """Exact square root in Z[i], or None."""
    if z == (0, 0):
        return (0, 0)
    n = gnorm(z)
    r = isqrt(n)
    if r * r != n:
        return None
    # w = u + vi with u^2 + v^2 = r, u^2 - v^2 = re(z)
    if (z[0] + r) % 2:
        return None
    u2 = (z[0] + r) // 2
    u = isqrt(u2)
    if u * u != u2:
        return None
    v2 = r - u2
    v = isqrt(v2)
    if v * v != v2:
        return None
    for w in ((u, v), (u, -v)):
        if gmul(w, w) == z:
            return w
        wn = gneg(w)
        if gmul(wn, wn) == z:
            return wn
    return None
