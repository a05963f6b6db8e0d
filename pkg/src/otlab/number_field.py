"""Exact arithmetic in Z[theta] = Z[x]/(f) and certified embeddings into C.

Elements carry rational power-basis coordinates and are reduced modulo the
monic defining polynomial after every product.  Embeddings are evaluated
exactly at rational root approximations, so the only error is the distance
from the approximation to the true root, which is bounded explicitly.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil, log2
from typing import Iterable, Sequence

import numpy as np

from . import gfp
from . import polynomials as P
from .errors import (
    InconclusiveIrreducibility,
    InvalidPolynomial,
    MaybeNonMaximal,
    NotMonic,
    PrecisionExhausted,
    ReduciblePolynomial,
)
from .roots import (
    GUARD_BITS,
    ComplexRootDisk,
    RealRootInterval,
    _ctx,
    certify_complex_roots,
    isolate_real_roots,
    refine_complex_root,
    refine_real_root,
)

DEFAULT_PRECISION = 128
MAX_REFINEMENTS = 12


@dataclass(frozen=True)
class AlgebraicNumber:
    """An element of Q[x]/(modulus) in the power basis 1, theta, ..., theta^(n-1)."""

    coords: tuple[Fraction, ...]
    modulus: tuple[int, ...]

    def __post_init__(self):
        n = len(self.modulus) - 1
        if len(self.coords) != n:
            raise ValueError(f"expected {n} coordinates, got {len(self.coords)}")

    @classmethod
    def from_coords(cls, coords: Iterable, modulus: Sequence[int]) -> "AlgebraicNumber":
        return cls(tuple(Fraction(c) for c in coords), tuple(modulus))

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    def _wrap(self, poly: Sequence) -> "AlgebraicNumber":
        n = self.degree
        r = P.rem(poly, self.modulus) if len(poly) > n else list(poly)
        r = list(r) + [0] * (n - len(r))
        return AlgebraicNumber(tuple(Fraction(c) for c in r), self.modulus)

    def _coerce(self, other) -> "AlgebraicNumber":
        if isinstance(other, AlgebraicNumber):
            if other.modulus != self.modulus:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self._wrap([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return AlgebraicNumber(tuple(a + b for a, b in zip(self.coords, other.coords)), self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicNumber(tuple(-a for a in self.coords), self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(P.mul(P.trim(self.coords), P.trim(other.coords)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self._wrap([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def int_coords(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError("element has non-integer coordinates")
        return tuple(int(c) for c in self.coords)

    def multiplication_matrix(self) -> list[list[Fraction]]:
        """Matrix of ``y -> self*y``; column k holds the coordinates of ``self*theta^k``."""
        n = self.degree
        cols = []
        col = self
        theta = self._wrap([0, 1])
        for _ in range(n):
            cols.append(col.coords)
            col = col * theta
        return [[cols[k][i] for k in range(n)] for i in range(n)]

    def norm(self) -> Fraction:
        m = self.multiplication_matrix()
        if self.is_integral():
            return Fraction(P.bareiss_det([[int(x) for x in row] for row in m]))
        return P.fraction_det(m)

    def trace(self) -> Fraction:
        m = self.multiplication_matrix()
        return sum((m[i][i] for i in range(self.degree)), Fraction(0))

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        m = self.multiplication_matrix()
        n = self.degree
        # solve m c = e_0 by Gauss-Jordan over Q
        a = [list(row) + [Fraction(int(i == 0))] for i, row in enumerate(m)]
        for k in range(n):
            piv = next(i for i in range(k, n) if a[i][k] != 0)
            a[k], a[piv] = a[piv], a[k]
            inv = 1 / a[k][k]
            a[k] = [x * inv for x in a[k]]
            for i in range(n):
                if i != k and a[i][k] != 0:
                    fac = a[i][k]
                    a[i] = [x - fac * y for x, y in zip(a[i], a[k])]
        return AlgebraicNumber(tuple(a[i][n] for i in range(n)), self.modulus)

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if c == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            coef = str(c)
            if mono and c == 1:
                coef = ""
            elif mono and c == -1:
                coef = "-"
            terms.append(f"{coef}{'*' if mono and coef not in ('', '-') else ''}{mono}")
        return "AlgebraicNumber(" + (" + ".join(terms) or "0") + ")"


def norm(x: AlgebraicNumber) -> Fraction:
    return x.norm()


def trace(x: AlgebraicNumber) -> Fraction:
    return x.trace()


@dataclass(frozen=True)
class EmbeddingSet:
    """Isolating regions for the roots: ``s`` real intervals, ``t`` upper-half-plane disks."""

    real_roots: tuple[RealRootInterval, ...]
    complex_roots: tuple[ComplexRootDisk, ...]
    precision_bits: int

    @property
    def signature(self) -> tuple[int, int]:
        return len(self.real_roots), len(self.complex_roots)

    def refine(self, poly: Sequence[int], bits: int) -> "EmbeddingSet":
        """Nested refinement; every region shrinks to size <= 2**-(bits+GUARD_BITS)."""
        if bits <= self.precision_bits:
            return self
        real = tuple(refine_real_root(poly, iv, bits + GUARD_BITS) for iv in self.real_roots)
        cplx = tuple(refine_complex_root(poly, d, bits) for d in self.complex_roots)
        return EmbeddingSet(real, cplx, bits)

    def centers(self) -> list:
        """Rational root approximations: Fractions for real places, (re, im) pairs otherwise."""
        return [iv.mid for iv in self.real_roots] + [(d.re, d.im) for d in self.complex_roots]

    def error_radii(self) -> list[Fraction]:
        return [iv.width / 2 for iv in self.real_roots] + [d.radius for d in self.complex_roots]


@dataclass(frozen=True, eq=False)
class NumberField:
    """Q[x]/(f) for a monic irreducible integer polynomial ``f``."""

    poly: tuple[int, ...]
    signature: tuple[int, int]
    embeddings: EmbeddingSet
    discriminant: int
    maybe_nonmaximal: bool = False
    irreducibility_certificate: dict = field(default_factory=dict, repr=False)
    _refined: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def degree(self) -> int:
        return len(self.poly) - 1

    @property
    def s(self) -> int:
        return self.signature[0]

    @property
    def t(self) -> int:
        return self.signature[1]

    def element(self, coords: Iterable) -> AlgebraicNumber:
        coords = list(coords)
        coords += [0] * (self.degree - len(coords))
        return AlgebraicNumber.from_coords(coords, self.poly)

    def scalar(self, c) -> AlgebraicNumber:
        return self.element([c])

    @property
    def one(self) -> AlgebraicNumber:
        return self.scalar(1)

    @property
    def zero(self) -> AlgebraicNumber:
        return self.scalar(0)

    @property
    def theta(self) -> AlgebraicNumber:
        return self.element([0, 1])

    def embeddings_at(self, bits: int) -> EmbeddingSet:
        if bits <= self.embeddings.precision_bits:
            return self.embeddings
        cached = self._refined.get(bits)
        if cached is None:
            best = max((b for b in self._refined if isinstance(b, int) and b < bits), default=None)
            base = self._refined[best] if best is not None else self.embeddings
            cached = base.refine(self.poly, bits)
            self._refined[bits] = cached
        return cached

    def basis_embeddings(self) -> np.ndarray:
        """``(n, s+t)`` complex array with entry ``[k, j] = sigma_j(theta^k)`` in float64."""
        cached = self._refined.get("basis")
        if cached is None:
            cached = np.array(
                [[complex(v) for v in embed(self.element([0] * k + [1]), self)] for k in range(self.degree)]
            )
            cached.setflags(write=False)
            self._refined["basis"] = cached
        return cached

    def __repr__(self):
        return f"NumberField(poly={list(self.poly)}, signature={self.signature}, disc={self.discriminant})"


# -- construction ------------------------------------------------------------


def parse_coefficients(text: str) -> list[int]:
    """Parse ``"-1,-1,0,1"`` (ascending degree) into integers."""
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError as exc:
        raise InvalidPolynomial(f"cannot parse coefficients {text!r}") from exc


def _subset_factor_search(f: list[int]) -> list[int] | None:
    """Look for a monic integer factor by grouping numerical roots; verified exactly."""
    n = len(f) - 1
    roots = np.roots([float(c) for c in reversed(f)])
    for d in range(1, n // 2 + 1):
        for combo in itertools.combinations(range(n), d):
            prod = np.poly(roots[list(combo)])[::-1]
            if np.max(np.abs(prod.imag)) > 1e-6:
                continue
            cand = [int(round(c)) for c in prod.real]
            if max(abs(c - r) for c, r in zip(prod.real, cand)) > 1e-6:
                continue
            q, r = P.divmod_poly(f, cand)
            if not r:
                return cand
    return None


def certify_irreducible(f: Sequence[int], disc: int) -> dict:
    """Return a certificate of irreducibility over Q, or raise.

    Reducibility: an integer root, or a numerically located factor that divides
    exactly.  Irreducibility: ``f`` irreducible modulo a prime not dividing the
    discriminant, or degree patterns modulo several such primes that admit no
    common proper factor degree.
    """
    f = list(f)
    n = len(f) - 1
    roots = P.integer_roots(f)
    if roots:
        raise ReduciblePolynomial(f"integer root {roots[0]}", factor=[-roots[0], 1])
    allowed = set(range(1, n))
    patterns = {}
    for p in gfp.FIRST_PRIMES:
        if disc % p == 0:
            continue
        pattern = gfp.degree_pattern(f, p)
        patterns[p] = pattern
        if pattern == [n]:
            return {"method": "irreducible_mod_p", "prime": p}
        sums = {0}
        for d in pattern:
            sums |= {x + d for x in sums}
        allowed &= sums
        if not allowed:
            return {"method": "degree_patterns", "patterns": patterns}
    factor = _subset_factor_search(f)
    if factor is not None:
        raise ReduciblePolynomial(f"factor {factor}", factor=factor)
    raise InconclusiveIrreducibility(
        f"no certificate among the first {len(gfp.FIRST_PRIMES)} primes; possible factor degrees {sorted(allowed)}"
    )


def analyze_polynomial(coeffs: Sequence[int], precision_bits: int = DEFAULT_PRECISION) -> NumberField:
    """Certify ``coeffs`` (ascending, monic) as defining a number field and isolate its roots."""
    try:
        f = [int(c) for c in coeffs]
    except (TypeError, ValueError) as exc:
        raise InvalidPolynomial(f"non-integer coefficients {coeffs!r}") from exc
    if any(int(c) != c for c in coeffs):
        raise InvalidPolynomial(f"non-integer coefficients {coeffs!r}")
    f = P.trim(f)
    if len(f) - 1 < 2:
        raise InvalidPolynomial("degree must be at least 2")
    if f[-1] != 1:
        raise NotMonic(f"leading coefficient is {f[-1]}, expected 1")
    if precision_bits < 32:
        raise ValueError("precision_bits must be >= 32")
    n = len(f) - 1

    disc = P.discriminant(f)
    if disc == 0:
        raise ReduciblePolynomial("repeated root (discriminant 0)")
    cert = certify_irreducible(f, disc)

    real = tuple(refine_real_root(f, iv, precision_bits + GUARD_BITS) for iv in isolate_real_roots(f))
    s = len(real)
    if (n - s) % 2:
        raise PrecisionExhausted("inconsistent real root count")
    t = (n - s) // 2
    cplx = tuple(certify_complex_roots(f, t, precision_bits))
    emb = EmbeddingSet(real, cplx, precision_bits)

    nonmax = not P.is_squarefree_integer(disc)
    if nonmax:
        warnings.warn(
            f"discriminant {disc} is not squarefree; Z[theta] may be non-maximal",
            MaybeNonMaximal,
            stacklevel=2,
        )
    return NumberField(tuple(f), (s, t), emb, disc, nonmax, cert)


def coefficient_box(height: int, n: int) -> np.ndarray:
    """All integer vectors in ``[-height, height]^n``, lexicographic (first coordinate slowest)."""
    axis = np.arange(-height, height + 1)
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


# -- embeddings --------------------------------------------------------------


def _derivative_bound(coords: Sequence[Fraction], center_abs: Fraction, r: Fraction) -> Fraction:
    big = center_abs + r
    return sum((k * abs(c) * big ** (k - 1) for k, c in enumerate(coords) if k), Fraction(0))


def _abs_upper(re: Fraction, im: Fraction) -> Fraction:
    return abs(re) + abs(im)


def _eval_exact(coords, center):
    if isinstance(center, tuple):
        re, im = center
        ar, ai = Fraction(0), Fraction(0)
        for c in reversed(coords):
            ar, ai = ar * re - ai * im + c, ar * im + ai * re
        return ar, ai
    return P.evaluate(coords, center)


def _bits_of(x: Fraction) -> int:
    if x == 0:
        return 0
    return max(0, x.numerator.bit_length() - x.denominator.bit_length() + 1)


@lru_cache(maxsize=1 << 16)
def _embed_cached(fld: NumberField, coords: tuple[Fraction, ...], bits: int):
    coords = P.trim(coords)
    work = bits
    for _ in range(MAX_REFINEMENTS):
        emb = fld.embeddings_at(work)
        ok = True
        exact = []
        for center, r in zip(emb.centers(), emb.error_radii()):
            cabs = _abs_upper(*center) if isinstance(center, tuple) else abs(center)
            err = r * _derivative_bound(coords, cabs, r)
            if err > Fraction(1, 2 ** (bits + 1)):
                ok = False
                extra = ceil(log2(float(err) * 2 ** (bits + 1))) + 4 if err else 4
                work = max(work + 8, work + extra)
                break
            exact.append(center)
        if ok:
            break
    else:
        raise PrecisionExhausted(f"could not reach {bits} bits after {MAX_REFINEMENTS} refinements")

    out = []
    for center in exact:
        val = _eval_exact(coords, center)
        if isinstance(val, tuple):
            mag = max(_bits_of(val[0]), _bits_of(val[1]))
            ctx = _ctx(bits + 8 + mag)
            out.append(ctx.mpc(ctx.mpf(val[0].numerator) / val[0].denominator,
                               ctx.mpf(val[1].numerator) / val[1].denominator))
        else:
            val = Fraction(val)
            ctx = _ctx(bits + 8 + _bits_of(val))
            out.append(ctx.mpf(val.numerator) / val.denominator)
    return tuple(out)


def embed(x: AlgebraicNumber, fld: NumberField, precision_bits: int = DEFAULT_PRECISION) -> tuple:
    """``(sigma_1(x), ..., sigma_{s+t}(x))`` as mpmath numbers, each within ``2**-precision_bits``.

    Real places come first in ascending root order, then one representative with
    positive imaginary part per conjugate pair.
    """
    if precision_bits < 32:
        raise ValueError("precision_bits must be >= 32")
    if x.modulus != fld.poly:
        raise ValueError("element does not belong to this field")
    return _embed_cached(fld, x.coords, precision_bits)


def embed_complex(x: AlgebraicNumber, fld: NumberField, precision_bits: int = DEFAULT_PRECISION) -> np.ndarray:
    """Float64 rounding of :func:`embed`; real places have imaginary part exactly 0."""
    return np.array([complex(v) for v in embed(x, fld, precision_bits)], dtype=complex)
