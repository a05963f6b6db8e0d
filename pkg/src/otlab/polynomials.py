"""Dense univariate polynomials over Z and Q.

Polynomials are coefficient lists in ascending degree, ``[a_0, a_1, ..., a_n]``,
with no trailing zeros; the zero polynomial is ``[]``.  Coefficients are
Python ints or ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def trim(f: Sequence) -> list:
    f = list(f)
    while f and f[-1] == 0:
        f.pop()
    return f


def degree(f: Sequence) -> int:
    """Degree of ``f``; -1 for the zero polynomial."""
    return len(trim(f)) - 1


def add(f: Sequence, g: Sequence) -> list:
    if len(f) < len(g):
        f, g = g, f
    r = list(f)
    for i, c in enumerate(g):
        r[i] += c
    return trim(r)


def neg(f: Sequence) -> list:
    return [-c for c in f]


def sub(f: Sequence, g: Sequence) -> list:
    return add(f, neg(g))


def mul(f: Sequence, g: Sequence) -> list:
    if not f or not g:
        return []
    r = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j, b in enumerate(g):
            r[i + j] += a * b
    return trim(r)


def scale(f: Sequence, c) -> list:
    return trim([c * a for a in f])


def derivative(f: Sequence) -> list:
    return trim([i * f[i] for i in range(1, len(f))])


def divmod_poly(f: Sequence, g: Sequence) -> tuple[list, list]:
    """Euclidean division over Q.  Exact over Z when ``g`` is monic."""
    g = trim(g)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(f)
    lc = g[-1]
    dg = len(g) - 1
    if len(r) - 1 < dg:
        return [], r
    q = [0] * (len(r) - dg)
    while r and len(r) - 1 >= dg:
        c = r[-1] if lc == 1 else Fraction(r[-1]) / lc
        k = len(r) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] -= c * b
        r = trim(r)
    return trim(q), r


def rem(f: Sequence, g: Sequence) -> list:
    return divmod_poly(f, g)[1]


def evaluate(f: Sequence, x):
    """Horner evaluation; works for any ring supporting ``*`` and ``+``."""
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def compose_shift(f: Sequence, c) -> list:
    """Taylor shift: the coefficients of ``f(x + c)``."""
    r: list = []
    for a in reversed(f):
        r = add(mul(r, [c, 1]), [a])
    return r


def content_primitive(f: Sequence[int]) -> list[int]:
    from math import gcd

    g = 0
    for c in f:
        g = gcd(g, c)
    if g == 0:
        return []
    sign = -1 if f[-1] < 0 else 1
    return [sign * c // g for c in f]


def bareiss_det(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of a square integer matrix."""
    a = [list(row) for row in m]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def fraction_det(m: Sequence[Sequence]) -> Fraction:
    """Determinant over Q by Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = -det
        det *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k] == 0:
                continue
            factor = a[i][k] * inv
            for j in range(k, n):
                a[i][j] -= factor * a[k][j]
    return det


def sylvester_matrix(f: Sequence[int], g: Sequence[int]) -> list[list[int]]:
    f, g = trim(f), trim(g)
    m, n = len(f) - 1, len(g) - 1
    size = m + n
    rows = []
    # coefficients in descending order along each row
    fd, gd = list(reversed(f)), list(reversed(g))
    for i in range(n):
        rows.append([0] * i + fd + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gd + [0] * (size - n - 1 - i))
    return rows


def resultant(f: Sequence[int], g: Sequence[int]) -> int:
    return bareiss_det(sylvester_matrix(f, g))


def discriminant(f: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial, ``(-1)^{n(n-1)/2} Res(f, f')``."""
    f = trim(f)
    n = len(f) - 1
    if f[-1] != 1:
        raise ValueError("discriminant() expects a monic polynomial")
    r = resultant(f, derivative(f))
    return -r if (n * (n - 1) // 2) % 2 else r


def divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def integer_roots(f: Sequence[int]) -> list[int]:
    """Integer roots of a monic integer polynomial (these are all its rational roots)."""
    f = trim(f)
    if not f:
        raise ValueError("zero polynomial")
    if f[0] == 0:
        k = next(i for i, c in enumerate(f) if c != 0)
        rest = f[k:]
        return sorted({0, *integer_roots(rest)}) if len(rest) > 1 else [0]
    roots = []
    for d in divisors(f[0]):
        for cand in (d, -d):
            if evaluate(f, cand) == 0:
                roots.append(cand)
    return sorted(roots)


def is_squarefree_integer(n: int) -> bool:
    """Exact squarefreeness test by trial division up to the cube root."""
    n = abs(n)
    if n == 0:
        return False
    from math import isqrt

    p = 2
    while p * p * p <= n:
        if n % (p * p) == 0:
            return False
        while n % p == 0:
            n //= p
        p += 1 if p == 2 else 2
    # remaining cofactor has at most two prime factors, both above the cube root
    r = isqrt(n)
    return not (n > 1 and r * r == n)
