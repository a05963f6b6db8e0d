"""Finite-index unit systems from a coefficient-box search.

The search enumerates ``Z[theta]`` elements with power-basis coefficients in
``[-height, height]`` (lexicographic order), keeps the exact units, and reduces
their log-vectors to a basis of the lattice they span.  No attempt is made to
prove the result is a fundamental system; for ``t = 1`` any finite-index
subgroup of the totally positive units is admissible.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .errors import PrecisionExhausted, RankDeficientUnits
from .lattice import lll, row_hnf
from .number_field import DEFAULT_PRECISION, AlgebraicNumber, NumberField, coefficient_box, embed
from .roots import _ctx

log = logging.getLogger(__name__)

PIVOT_TOL = 1e-9
TORSION_TOL = 1e-12
MAX_DENOMINATOR = 10**6

ADMISSIBLE_T1 = "AdmissibleT1"
UNKNOWN_ADMISSIBILITY = "UnknownAdmissibility"


@dataclass(frozen=True)
class UnitSystem:
    generators: tuple[AlgebraicNumber, ...]
    log_matrix: tuple[tuple, ...]  # mpmath reals, complex places weighted by 2
    rank: int
    regulator_estimate: float | None
    precision_bits: int = DEFAULT_PRECISION
    height: int = 0

    def log_array(self) -> np.ndarray:
        if not self.log_matrix:
            return np.zeros((0, 0))
        return np.array([[float(v) for v in row] for row in self.log_matrix])


@dataclass(frozen=True)
class AdmissibleSubgroup:
    generators: tuple[AlgebraicNumber, ...]
    verdict: str
    rank: int


def log_vector(u: AlgebraicNumber, fld: NumberField, precision_bits: int = DEFAULT_PRECISION) -> tuple:
    """``(log|s_1(u)|, ..., 2 log|s_{s+t}(u)|)`` at roughly ``precision_bits``."""
    vals = embed(u, fld, precision_bits + 16)
    ctx = _ctx(precision_bits + 16)
    out = []
    for i, v in enumerate(vals):
        lv = ctx.log(abs(ctx.mpc(v) if i >= fld.s else ctx.mpf(v)))
        out.append(2 * lv if i >= fld.s else lv)
    return tuple(out)


def real_signs(u: AlgebraicNumber, fld: NumberField, precision_bits: int = DEFAULT_PRECISION) -> list[int]:
    """Certified signs of the real embeddings of a nonzero ``u``."""
    vals = embed(u, fld, precision_bits)[: fld.s]
    eps = 2.0 ** -precision_bits
    signs = []
    for v in vals:
        if abs(v) <= eps:
            raise PrecisionExhausted("real embedding too close to 0 to certify its sign")
        signs.append(1 if v > 0 else -1)
    return signs


def is_totally_positive(u: AlgebraicNumber, fld: NumberField, precision_bits: int = DEFAULT_PRECISION) -> bool:
    return all(sg > 0 for sg in real_signs(u, fld, precision_bits))


def _float_norms(coords: np.ndarray, fld: NumberField) -> tuple[np.ndarray, np.ndarray]:
    vals = coords.astype(float) @ fld.basis_embeddings()
    s = fld.s
    absvals = np.abs(vals)
    norms = np.prod(vals[:, :s].real, axis=1) * np.prod(absvals[:, s:] ** 2, axis=1)
    return norms, absvals


def _product(gens: Sequence[AlgebraicNumber], exps: Sequence[int], fld: NumberField) -> AlgebraicNumber:
    acc = fld.one
    for g, e in zip(gens, exps):
        if e:
            acc = acc * g ** int(e)
    return acc


def _rank(logs: np.ndarray) -> int:
    if logs.size == 0:
        return 0
    sv = np.linalg.svd(logs, compute_uv=False)
    return int(np.sum(sv > PIVOT_TOL))


def _absorb(basis: list[AlgebraicNumber], logs: np.ndarray, u: AlgebraicNumber, v: np.ndarray,
            fld: NumberField, bits: int) -> tuple[list[AlgebraicNumber], np.ndarray]:
    """Add unit ``u`` (log-vector ``v``) to the lattice spanned by ``basis``."""
    if not basis:
        return [u], v[None, :]
    c, *_ = np.linalg.lstsq(logs.T, v, rcond=None)
    resid = v - c @ logs
    if np.max(np.abs(resid)) >= PIVOT_TOL:
        return basis + [u], np.vstack([logs, v])
    q = [Fraction(float(x)).limit_denominator(MAX_DENOMINATOR) for x in c]
    if max(abs(float(qi) - x) for qi, x in zip(q, c)) > 1e-6:
        log.warning("log coordinates %s not recognisably rational; skipping", c)
        return basis, logs
    if all(qi.denominator == 1 for qi in q):
        return basis, logs
    d = lcm(*(qi.denominator for qi in q))
    r = len(basis)
    m = [[d * int(i == j) for j in range(r)] for i in range(r)] + [[int(qi * d) for qi in q]]
    _, transform = row_hnf(m)
    new = [_product(basis + [u], transform[i], fld) for i in range(r)]
    new_logs = np.array([[float(x) for x in log_vector(w, fld, bits)] for w in new])
    return new, new_logs


def collect_units(fld: NumberField, height: int, precision_bits: int = DEFAULT_PRECISION) -> UnitSystem:
    """Search the coefficient box and return whatever rank was reached."""
    if height < 0:
        raise ValueError("height must be >= 0")
    n = fld.degree
    coords = coefficient_box(height, n)
    norms, absvals = _float_norms(coords, fld)
    near_unit = np.abs(np.abs(norms) - 1.0) < 0.25
    torsion = np.all(np.abs(absvals - 1.0) < TORSION_TOL, axis=1)
    candidates = np.nonzero(near_unit & ~torsion)[0]

    basis: list[AlgebraicNumber] = []
    logs = np.zeros((0, fld.s + fld.t))
    for idx in candidates:
        u = fld.element(int(x) for x in coords[idx])
        if abs(u.norm()) != 1:
            continue
        v = np.array([float(x) for x in log_vector(u, fld, precision_bits)])
        basis, logs = _absorb(basis, logs, u, v, fld, precision_bits)

    if len(basis) > 1:
        _, transform = lll(logs)
        basis = [_product(basis, row, fld) for row in transform]

    # orientation: first log coordinate positive, then first real embedding positive
    basis = [u.inverse() if log_vector(u, fld, 53)[0] < 0 else u for u in basis]
    if fld.s:
        basis = [-u if real_signs(u, fld, precision_bits)[0] < 0 else u for u in basis]

    log_matrix = tuple(log_vector(u, fld, precision_bits) for u in basis)
    arr = np.array([[float(x) for x in row] for row in log_matrix]) if basis else np.zeros((0, fld.s + fld.t))
    rank = _rank(arr)
    regulator = None
    if rank == fld.s + fld.t - 1:
        regulator = 1.0 if rank == 0 else float(abs(np.linalg.det(arr[:rank, :rank])))
    return UnitSystem(tuple(basis), log_matrix, rank, regulator, precision_bits, height)


def search_units(fld: NumberField, height: int, precision_bits: int = DEFAULT_PRECISION) -> UnitSystem:
    """Like :func:`collect_units` but insists on full rank ``s + t - 1``."""
    system = collect_units(fld, height, precision_bits)
    expected = fld.s + fld.t - 1
    if system.rank < expected:
        raise RankDeficientUnits(
            f"found rank {system.rank} < {expected} at height {height}; raise the height"
        )
    return system


def totally_positive(system: UnitSystem, fld: NumberField) -> AdmissibleSubgroup:
    """Square every generator that is negative somewhere; decide admissibility for t = 1."""
    if not system.generators:
        raise ValueError("empty unit system")
    bits = system.precision_bits
    gens = []
    for u in system.generators:
        if not is_totally_positive(u, fld, bits):
            u = u * u
        gens.append(u)
    logs = np.array([[float(x) for x in log_vector(u, fld, bits)] for u in gens])
    rank = _rank(logs)
    verdict = ADMISSIBLE_T1 if fld.t == 1 and rank == fld.s else UNKNOWN_ADMISSIBILITY
    return AdmissibleSubgroup(tuple(gens), verdict, rank)
