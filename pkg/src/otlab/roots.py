"""Certified root isolation for squarefree integer polynomials.

Real roots are isolated with a Sturm sequence over Q and refined by exact
bisection.  Non-real roots are located numerically and then certified with the
classical inclusion bound: for any ``z`` some root lies within
``n |f(z)| / |f'(z)|`` of ``z``.  Once the number of non-real roots is known
exactly (``n`` minus the Sturm count), ``t`` pairwise disjoint disks in the
open upper half plane plus their conjugates account for every non-real root,
so each disk isolates exactly one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Sequence

import mpmath
import numpy as np

from . import polynomials as P
from .errors import PrecisionExhausted

GUARD_BITS = 16
MAX_NEWTON_STEPS = 200


@dataclass(frozen=True)
class RealRootInterval:
    """Open interval ``(lo, hi)`` containing exactly one real root."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2


@dataclass(frozen=True)
class ComplexRootDisk:
    """Closed disk ``|z - (re + i im)| <= radius`` containing exactly one root."""

    re: Fraction
    im: Fraction
    radius: Fraction

    @property
    def box(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        r = self.radius
        return (self.re - r, self.re + r), (self.im - r, self.im + r)

    def contains_disk(self, other: "ComplexRootDisk") -> bool:
        if other.radius > self.radius:
            return False
        d2 = (self.re - other.re) ** 2 + (self.im - other.im) ** 2
        return d2 <= (self.radius - other.radius) ** 2

    def disjoint_from(self, other: "ComplexRootDisk") -> bool:
        d2 = (self.re - other.re) ** 2 + (self.im - other.im) ** 2
        return d2 > (self.radius + other.radius) ** 2


def sturm_sequence(f: Sequence[int]) -> list[list[Fraction]]:
    seq = [[Fraction(c) for c in P.trim(f)]]
    seq.append([Fraction(c) for c in P.derivative(f)])
    while seq[-1] and len(seq[-1]) > 1:
        seq.append(P.neg(P.rem(seq[-2], seq[-1])))
    return [s for s in seq if s]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(seq: Sequence[Sequence[Fraction]], x: Fraction) -> int:
    signs = [_sign(P.evaluate(s, x)) for s in seq]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(seq, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct roots in the half-open interval ``(lo, hi]``."""
    return sign_variations(seq, lo) - sign_variations(seq, hi)


def cauchy_bound(f: Sequence[int]) -> Fraction:
    f = P.trim(f)
    lc = abs(Fraction(f[-1]))
    return 1 + max(abs(Fraction(c)) / lc for c in f[:-1])


def isolate_real_roots(f: Sequence[int]) -> list[RealRootInterval]:
    """Disjoint isolating intervals for the real roots of squarefree ``f``, ascending.

    Interval endpoints are never roots.
    """
    f = P.trim(f)
    seq = sturm_sequence(f)
    bound = cauchy_bound(f)
    out: list[RealRootInterval] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        k = count_real_roots(seq, lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append(RealRootInterval(lo, hi))
            continue
        mid = (lo + hi) / 2
        nudge = (hi - lo) / 1024
        while P.evaluate(f, mid) == 0:
            mid += nudge
            nudge /= 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out, key=lambda iv: iv.lo)


def refine_real_root(f: Sequence[int], iv: RealRootInterval, bits: int) -> RealRootInterval:
    """Bisect until the width is at most ``2**-bits``.  Result is nested in ``iv``."""
    target = Fraction(1, 2**bits)
    lo, hi = iv.lo, iv.hi
    s_lo = _sign(P.evaluate(f, lo))
    if s_lo == 0 or s_lo == _sign(P.evaluate(f, hi)):
        raise PrecisionExhausted(f"interval ({lo}, {hi}) does not bracket a simple root")
    steps = 0
    while hi - lo > target:
        steps += 1
        if steps > 4 * bits + 4 * max(1, (hi - lo).numerator.bit_length()):
            raise PrecisionExhausted("real root refinement hit the iteration cap")
        mid = (lo + hi) / 2
        s = _sign(P.evaluate(f, mid))
        if s == 0:
            # exact rational root; collapse to a tiny interval around it
            eps = target / 4
            return RealRootInterval(mid - eps, mid + eps)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return RealRootInterval(lo, hi)


# -- complex roots -----------------------------------------------------------


def _gauss_eval(f: Sequence, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    """Exact ``f(re + i im)`` as a pair of Fractions."""
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(f):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def _upper_sqrt(q: Fraction, bits: int) -> Fraction:
    """A rational ``r >= sqrt(q)`` with ``r - sqrt(q) <= 2**-bits``."""
    if q == 0:
        return Fraction(0)
    k = bits + 4
    scaled = q * 4**k
    root = isqrt(scaled.numerator // scaled.denominator) + 1
    return Fraction(root, 2**k)


def inclusion_radius(f: Sequence[int], re: Fraction, im: Fraction, bits: int) -> Fraction:
    """Certified radius ``>= n |f(z)| / |f'(z)|``; ``inf``-like large value if f'(z)=0."""
    f = P.trim(f)
    n = len(f) - 1
    vr, vi = _gauss_eval(f, re, im)
    dr, di = _gauss_eval(P.derivative(f), re, im)
    den = dr * dr + di * di
    if den == 0:
        return Fraction(10**9)
    q = n * n * (vr * vr + vi * vi) / den
    return _upper_sqrt(q, bits + GUARD_BITS)


@lru_cache(maxsize=None)
def _ctx(prec: int) -> mpmath.ctx_mp.MPContext:
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


def _to_dyadic(x, k: int) -> Fraction:
    """Round an mpf to the nearest multiple of ``2**-k``."""
    ctx = x.context
    return Fraction(int(ctx.nint(ctx.ldexp(x, k))), 2**k)


def _newton_disk(f: Sequence[int], seed_re, seed_im, bits: int) -> ComplexRootDisk:
    prec = 2 * bits + 64
    ctx = _ctx(prec)
    coeffs_desc = [ctx.mpf(c) for c in reversed(P.trim(f))]
    dcoeffs_desc = [ctx.mpf(c) for c in reversed(P.derivative(f))]

    def conv(x):
        if isinstance(x, Fraction):
            return ctx.mpf(x.numerator) / x.denominator
        return ctx.mpf(x)

    z = ctx.mpc(conv(seed_re), conv(seed_im))
    target = Fraction(1, 2 ** (bits + GUARD_BITS))
    for _ in range(MAX_NEWTON_STEPS):
        fz = ctx.polyval(coeffs_desc, z)
        dz = ctx.polyval(dcoeffs_desc, z)
        if dz == 0:
            break
        step = fz / dz
        z = z - step
        if ctx.mag(step) < -(bits + GUARD_BITS + 8):
            break
    k = bits + 2 * GUARD_BITS
    re, im = _to_dyadic(z.real, k), _to_dyadic(z.imag, k)
    radius = inclusion_radius(f, re, im, bits)
    if radius > target:
        raise PrecisionExhausted("Newton refinement of a complex root did not converge")
    return ComplexRootDisk(re, im, radius)


def certify_complex_roots(f: Sequence[int], t: int, bits: int) -> list[ComplexRootDisk]:
    """Isolating disks (radius <= 2**-(bits+GUARD_BITS)) for the ``t`` roots with Im > 0.

    ``t`` must be the exact number of conjugate pairs, e.g. from a Sturm count.
    """
    if t == 0:
        return []
    f = P.trim(f)
    approx = np.roots([float(c) for c in reversed(f)])
    upper = sorted(approx, key=lambda z: -z.imag)[:t]
    disks = [_newton_disk(f, float(z.real), float(z.imag), bits) for z in upper]
    for d in disks:
        if d.im <= d.radius:
            raise PrecisionExhausted("complex root disk touches the real axis")
    for i, a in enumerate(disks):
        for b in disks[i + 1:]:
            if not a.disjoint_from(b):
                raise PrecisionExhausted("complex root disks overlap")
    return sorted(disks, key=lambda d: (d.re, d.im))


def refine_complex_root(f: Sequence[int], disk: ComplexRootDisk, bits: int) -> ComplexRootDisk:
    """Shrink ``disk`` to radius <= 2**-(bits+GUARD_BITS); the result lies inside ``disk``."""
    if disk.radius <= Fraction(1, 2 ** (bits + GUARD_BITS)):
        return disk
    new = _newton_disk(f, disk.re, disk.im, bits)
    if not disk.contains_disk(new):
        raise PrecisionExhausted("refined disk escaped its isolating disk")
    return new
