"""Differential forms on C^m in real coordinates ``(x_1, y_1, ..., x_m, y_m)``.

A k-form at a point is stored as its fully antisymmetric component array
``A[a, b, ...] = alpha(e_a, e_b, ...)``, so ``dx ^ dy`` has ``A[0, 1] = 1``.
Exterior derivatives are taken by central finite differences.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

# central first-derivative stencils as (integer weights by offset, denominator);
# integer weights make constants differentiate to exactly 0
_STENCIL = (((-2, 1), (-1, -8), (1, 8), (2, -1)), 12)
_STENCIL_2 = (((-1, -1), (1, 1)), 2)


def to_real(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    out = np.empty(2 * z.size)
    out[0::2] = z.real
    out[1::2] = z.imag
    return out


def to_complex(x: np.ndarray) -> np.ndarray:
    return x[0::2] + 1j * x[1::2]


def _dz_matrix(m: int) -> np.ndarray:
    """Row k holds ``dz_k`` evaluated on the real basis vectors."""
    z = np.zeros((m, 2 * m), dtype=complex)
    for k in range(m):
        z[k, 2 * k] = 1.0
        z[k, 2 * k + 1] = 1j
    return z


def hermitian_to_real(h: np.ndarray) -> np.ndarray:
    """Real 2-form of ``sqrt(-1) sum h_ij dz_i ^ dzbar_j``."""
    h = np.asarray(h, dtype=complex)
    z = _dz_matrix(h.shape[0])
    b = z.T @ h @ z.conj()
    return np.real(1j * (b - b.T))


def real_to_hermitian(a: np.ndarray) -> np.ndarray:
    """Inverse of :func:`hermitian_to_real` on the (1,1) part: ``h_ij = -i a(d/dz_i, d/dzbar_j)``."""
    m = a.shape[0] // 2
    w = np.zeros((2 * m, m), dtype=complex)
    for k in range(m):
        w[2 * k, k] = 0.5
        w[2 * k + 1, k] = -0.5j
    return -1j * (w.T @ a @ w.conj())


def complex_structure(covector: np.ndarray) -> np.ndarray:
    """``I`` on 1-forms with ``I dx = dy`` and ``I dy = -dx``."""
    out = np.empty_like(covector)
    out[0::2] = -covector[1::2]
    out[1::2] = covector[0::2]
    return out


def _partials(field: Callable[[np.ndarray], np.ndarray], x: np.ndarray, h: float, order: int) -> np.ndarray:
    """Array ``D[a, ...] = d field(x)[...] / d x_a``."""
    stencil, denom = _STENCIL if order == 4 else _STENCIL_2
    base = np.asarray(field(x))
    out = np.zeros((x.size,) + base.shape)
    for a in range(x.size):
        acc = np.zeros(base.shape)
        for k, w in stencil:
            xp = x.copy()
            xp[a] += k * h
            acc += w * np.asarray(field(xp))
        out[a] = acc / (denom * h)
    return out


def d_one_form(field, x: np.ndarray, h: float = 1e-3, order: int = 4) -> np.ndarray:
    """``(d alpha)_ab = d_a alpha_b - d_b alpha_a``."""
    d = _partials(field, x, h, order)
    return d - d.T


def d_two_form(field, x: np.ndarray, h: float = 1e-3, order: int = 4) -> np.ndarray:
    """``(d w)_abc = d_a w_bc - d_b w_ac + d_c w_ab``."""
    d = _partials(field, x, h, order)
    return d - d.transpose(1, 0, 2) + d.transpose(1, 2, 0)


def wedge_1_2(theta: np.ndarray, omega: np.ndarray) -> np.ndarray:
    """``(theta ^ omega)_abc = theta_a w_bc - theta_b w_ac + theta_c w_ab``."""
    t = np.asarray(theta)
    w = np.asarray(omega)
    return (
        np.einsum("a,bc->abc", t, w)
        - np.einsum("b,ac->abc", t, w)
        + np.einsum("c,ab->abc", t, w)
    )


def complex_hessian_fd(f: Callable[[np.ndarray], float], z: np.ndarray, h: float = 1e-3) -> np.ndarray:
    """``d^2 f / dz_i dzbar_j`` by central second differences in real coordinates."""
    x = to_real(z)
    n = x.size
    hess = np.zeros((n, n))
    for a in range(n):
        for b in range(a, n):
            def shifted(da, db):
                xp = x.copy()
                xp[a] += da * h
                xp[b] += db * h
                return f(to_complex(xp))

            if a == b:
                val = (shifted(1, 0) - 2 * f(to_complex(x)) + shifted(-1, 0)) / h**2
            else:
                val = (shifted(1, 1) - shifted(1, -1) - shifted(-1, 1) + shifted(-1, -1)) / (4 * h**2)
            hess[a, b] = hess[b, a] = val
    m = n // 2
    out = np.zeros((m, m), dtype=complex)
    for i in range(m):
        for j in range(m):
            xi, yi, xj, yj = 2 * i, 2 * i + 1, 2 * j, 2 * j + 1
            out[i, j] = 0.25 * (hess[xi, xj] + hess[yi, yj]) + 0.25j * (hess[xi, yj] - hess[yi, xj])
    return out
