"""Integer row reduction and LLL, both returning the unimodular transform.

The unit search needs the transforms, not just the reduced rows: the rows are
log-vectors of units, and every row operation has to be replayed as a product
of the units themselves.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def row_hnf(m: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ m == H``; the nonzero rows
    of ``H`` come first, are upper-echelon with positive pivots, and entries above
    each pivot are reduced into ``[0, pivot)``.
    """
    h = [list(map(int, row)) for row in m]
    rows = len(h)
    cols = len(h[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        for i in range(r + 1, rows):
            if h[i][c] == 0:
                continue
            a, b = h[r][c], h[i][c]
            g, x, y = _ext_gcd(a, b)
            # [[x, y], [-b/g, a/g]] has determinant 1
            p, q = -b // g, a // g
            h[r], h[i] = (
                [x * s + y * t for s, t in zip(h[r], h[i])],
                [p * s + q * t for s, t in zip(h[r], h[i])],
            )
            u[r], u[i] = (
                [x * s + y * t for s, t in zip(u[r], u[i])],
                [p * s + q * t for s, t in zip(u[r], u[i])],
            )
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-v for v in h[r]]
            u[r] = [-v for v in u[r]]
        for i in range(r):
            k = h[i][c] // h[r][c]
            if k:
                h[i] = [s - k * t for s, t in zip(h[i], h[r])]
                u[i] = [s - k * t for s, t in zip(u[i], u[r])]
        r += 1
    return h, u


def lll(basis: np.ndarray, delta: float = 0.99) -> tuple[np.ndarray, np.ndarray]:
    """LLL-reduce the rows of a real, linearly independent ``basis``.

    Returns ``(reduced, transform)`` with ``transform`` an integer unimodular
    matrix and ``reduced == transform @ basis`` up to rounding.
    """
    b = np.array(basis, dtype=float)
    k_rows = b.shape[0]
    t = np.eye(k_rows, dtype=np.int64)
    if k_rows <= 1:
        return b, t

    def gram_schmidt(b):
        bs = np.zeros_like(b)
        mu = np.zeros((k_rows, k_rows))
        for i in range(k_rows):
            v = b[i].copy()
            for j in range(i):
                mu[i, j] = b[i] @ bs[j] / (bs[j] @ bs[j])
                v -= mu[i, j] * bs[j]
            bs[i] = v
        return bs, mu

    bs, mu = gram_schmidt(b)
    k = 1
    while k < k_rows:
        for j in range(k - 1, -1, -1):
            q = int(round(mu[k, j]))
            if q:
                b[k] -= q * b[j]
                t[k] -= q * t[j]
                bs, mu = gram_schmidt(b)
        if bs[k] @ bs[k] >= (delta - mu[k, k - 1] ** 2) * (bs[k - 1] @ bs[k - 1]):
            k += 1
        else:
            b[[k, k - 1]] = b[[k - 1, k]]
            t[[k, k - 1]] = t[[k - 1, k]]
            bs, mu = gram_schmidt(b)
            k = max(k - 1, 1)
    return b, t
