"""Polynomial arithmetic and factorization over GF(p).

Same coefficient-list layout as :mod:`otlab.polynomials`, with every entry
reduced to ``{0, ..., p-1}``.  Factorization is distinct-degree splitting
followed by Cantor-Zassenhaus equal-degree splitting, which is plenty for the
degrees (<= 8) this package cares about.
"""

from __future__ import annotations

import random
from typing import Sequence

FIRST_PRIMES = (
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
)


def reduce(f: Sequence[int], p: int) -> list[int]:
    r = [c % p for c in f]
    while r and r[-1] == 0:
        r.pop()
    return r


def add(f, g, p):
    if len(f) < len(g):
        f, g = g, f
    r = list(f)
    for i, c in enumerate(g):
        r[i] = (r[i] + c) % p
    return reduce(r, p)


def sub(f, g, p):
    return add(f, [-c % p for c in g], p)


def mul(f, g, p):
    if not f or not g:
        return []
    r = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                r[i + j] += a * b
    return reduce(r, p)


def monic(f, p):
    if not f:
        return []
    inv = pow(f[-1], -1, p)
    return [c * inv % p for c in f]


def divmod_p(f, g, p):
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    dg = len(g) - 1
    inv = pow(g[-1], -1, p)
    if len(r) - 1 < dg:
        return [], r
    q = [0] * (len(r) - dg)
    while r and len(r) - 1 >= dg:
        c = r[-1] * inv % p
        k = len(r) - 1 - dg
        q[k] = c
        for i, b in enumerate(g):
            r[k + i] = (r[k + i] - c * b) % p
        while r and r[-1] == 0:
            r.pop()
    return reduce(q, p), r


def rem(f, g, p):
    return divmod_p(f, g, p)[1]


def gcd(f, g, p):
    while g:
        f, g = g, rem(f, g, p)
    return monic(f, p)


def powmod(f, e: int, m, p):
    result = [1]
    base = rem(f, m, p)
    while e:
        if e & 1:
            result = rem(mul(result, base, p), m, p)
        base = rem(mul(base, base, p), m, p)
        e >>= 1
    return result


def derivative(f, p):
    return reduce([i * f[i] for i in range(1, len(f))], p)


def is_squarefree(f, p) -> bool:
    return len(gcd(f, derivative(f, p), p)) == 1


def distinct_degree(f: Sequence[int], p: int) -> list[tuple[list[int], int]]:
    """Split a monic squarefree ``f`` into ``(product of factors of degree d, d)``."""
    f = monic(reduce(f, p), p)
    out = []
    h = [0, 1]
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, d))
            f = divmod_p(f, g, p)[0]
            h = rem(h, f, p)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(f: Sequence[int], d: int, p: int, rng: random.Random | None = None) -> list[list[int]]:
    """Cantor-Zassenhaus: split ``f``, a product of distinct degree-``d`` irreducibles."""
    f = monic(reduce(f, p), p)
    n = len(f) - 1
    if n == d:
        return [f]
    rng = rng or random.Random(0)
    while True:
        a = reduce([rng.randrange(p) for _ in range(n)], p)
        if len(a) < 2:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^(2^(d-1))
            t, power = list(a), list(a)
            for _ in range(d - 1):
                power = rem(mul(power, power, p), f, p)
                t = add(t, power, p)
            g = gcd(f, t, p)
        else:
            b = powmod(a, (p**d - 1) // 2, f, p)
            g = gcd(f, sub(b, [1], p), p)
        if 1 < len(g) < len(f):
            other = divmod_p(f, g, p)[0]
            return equal_degree(g, d, p, rng) + equal_degree(other, d, p, rng)


def factor_squarefree(f: Sequence[int], p: int) -> list[list[int]]:
    """Monic irreducible factors of a squarefree polynomial, sorted by (degree, coeffs)."""
    rng = random.Random(p)
    factors = []
    for g, d in distinct_degree(f, p):
        factors.extend(equal_degree(g, d, p, rng))
    return sorted(factors, key=lambda g: (len(g), g))


def degree_pattern(f: Sequence[int], p: int) -> list[int]:
    """Sorted degrees of the irreducible factors of squarefree ``f`` mod ``p``."""
    pattern = []
    for g, d in distinct_degree(f, p):
        pattern.extend([d] * ((len(g) - 1) // d))
    return sorted(pattern)


def is_irreducible(f: Sequence[int], p: int) -> bool:
    f = reduce(f, p)
    if len(f) < 2:
        return False
    if not is_squarefree(f, p):
        return False
    return degree_pattern(f, p) == [len(f) - 1]
