"""The OT action on H^s x C^t and the forms it preserves.

Points are complex vectors ``z`` of length ``s + t`` whose first ``s``
coordinates lie in the upper half plane.  Hermitian matrices ``h`` stand for
the (1,1)-forms ``sqrt(-1) sum h_ij dz_i ^ dzbar_j``; covectors are real
component vectors in the basis ``dx_1, dy_1, ..., dx_m, dy_m``.

The Kaehler potential is ``prod(Im z_i)^-1 + sum_j |z_{s+j}|^2``: strictly
plurisubharmonic and homothetic under the unit action with factor
``|sigma_{s+1}(u)|^2`` when ``t = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from . import forms
from .errors import NoComplexPlace, NoRealPlace, NotLCKManifold, NotTotallyPositive
from .number_field import DEFAULT_PRECISION, AlgebraicNumber, NumberField, embed_complex
from .units import AdmissibleSubgroup, is_totally_positive

LCK = "LCK"
NOT_LCK = "NotLCK"
UNDECIDED = "Undecided"

HERMITIAN_TOL = 1e-13
DEFAULT_STEP = 1e-3


@dataclass(frozen=True)
class PointHC:
    z: np.ndarray
    s: int

    def __post_init__(self):
        z = np.array(self.z, dtype=complex)
        z.setflags(write=False)
        object.__setattr__(self, "z", z)
        if not 0 <= self.s <= z.size:
            raise ValueError("s out of range")
        if np.any(z[: self.s].imag <= 0):
            raise ValueError("the first s coordinates must lie in the upper half plane")

    @property
    def t(self) -> int:
        return self.z.size - self.s

    @property
    def y(self) -> np.ndarray:
        return self.z[: self.s].imag


@dataclass(frozen=True)
class HermitianForm:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
        if np.max(np.abs(m - m.conj().T), initial=0.0) > HERMITIAN_TOL * scale:
            raise ValueError("matrix is not Hermitian")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)

    def eigh(self):
        return np.linalg.eigh(self.matrix)

    def to_real(self) -> np.ndarray:
        return forms.hermitian_to_real(self.matrix)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    max_residual: float
    tol: float
    details: dict = field(default_factory=dict)


# -- pointwise formulas ------------------------------------------------------


def automorphic_factor(p: PointHC) -> float:
    """``prod(Im z_i)^-1`` over the half-plane coordinates."""
    return float(np.prod(1.0 / p.y))


def potential(p: PointHC) -> float:
    return automorphic_factor(p) + float(np.sum(np.abs(p.z[p.s:]) ** 2))


def kahler_hessian(p: PointHC) -> HermitianForm:
    """Closed-form ``d dbar`` of :func:`potential`."""
    s, m = p.s, p.z.size
    y = p.y
    big = automorphic_factor(p)
    h = np.zeros((m, m), dtype=complex)
    h[:s, :s] = big * (np.diag(1.0 / (4 * y**2)) + np.outer(1.0 / (4 * y), 1.0 / y))
    h[s:, s:] = np.eye(m - s)
    return HermitianForm(h)


def lck_form(p: PointHC) -> HermitianForm:
    if p.t != 1:
        raise NotLCKManifold(f"LCK metric requires t = 1, got t = {p.t}")
    return HermitianForm(kahler_hessian(p).matrix / automorphic_factor(p))


def weight_curvature(p: PointHC) -> HermitianForm:
    d = np.zeros(p.z.size)
    d[: p.s] = 1.0 / p.y**2
    return HermitianForm(np.diag(d).astype(complex))


def lee_form(p: PointHC) -> np.ndarray:
    """``-d log prod(Im z_i)``: ``-1/y_i`` on each ``dy_i``, zero elsewhere."""
    c = np.zeros(2 * p.z.size)
    c[1 : 2 * p.s : 2] = -1.0 / p.y
    return c


def lee_form_c(p: PointHC) -> np.ndarray:
    """Complex structure applied to :func:`lee_form`; equals ``sum dx_i / y_i``."""
    return forms.complex_structure(lee_form(p))


def lck_lee_form(p: PointHC) -> np.ndarray:
    """``-d log phi`` for the automorphic ``phi = prod(Im z_i)^-1``; solves ``d omega = theta ^ omega``."""
    return -lee_form(p)


# -- the group ---------------------------------------------------------------


@dataclass(frozen=True)
class GammaElement:
    """``z -> sigma(scale) * z + sigma(shift)``; translations have scale 1, dilations shift 0."""

    shift: AlgebraicNumber
    scale: AlgebraicNumber

    def compose(self, other: "GammaElement") -> "GammaElement":
        """``self o other``."""
        return GammaElement(self.scale * other.shift + self.shift, self.scale * other.scale)

    def inverse(self) -> "GammaElement":
        inv = self.scale.inverse()
        return GammaElement(-(inv * self.shift), inv)

    @property
    def is_translation(self) -> bool:
        return self.scale.coords[0] == 1 and not any(self.scale.coords[1:])


@dataclass(frozen=True, eq=False)
class OTStructure:
    field: NumberField
    units: AdmissibleSubgroup | None
    s: int
    t: int
    lck_class: str
    precision_bits: int = DEFAULT_PRECISION

    def with_units(self, units: AdmissibleSubgroup) -> "OTStructure":
        return replace(self, units=units)

    def sigma(self, x: AlgebraicNumber) -> np.ndarray:
        return embed_complex(x, self.field, self.precision_bits)

    def point(self, z) -> PointHC:
        p = PointHC(np.asarray(z, dtype=complex), self.s)
        if p.z.size != self.s + self.t:
            raise ValueError(f"expected {self.s + self.t} coordinates")
        return p

    def translation(self, a: AlgebraicNumber) -> GammaElement:
        if not a.is_integral():
            raise ValueError("translations need integral a")
        return GammaElement(a, self.field.one)

    def dilation(self, u: AlgebraicNumber) -> GammaElement:
        self._check_unit(u)
        return GammaElement(self.field.zero, u)

    def _check_unit(self, u: AlgebraicNumber) -> None:
        if not u.is_integral() or u.norm() != 1 or not is_totally_positive(u, self.field, self.precision_bits):
            raise NotTotallyPositive(f"{u!r} is not a totally positive unit")

    def act(self, g: GammaElement, p: PointHC) -> PointHC:
        return PointHC(self.sigma(g.scale) * p.z + self.sigma(g.shift), p.s)

    def act_translation(self, a: AlgebraicNumber, p: PointHC) -> PointHC:
        if not a.is_integral():
            raise ValueError("translations need integral a")
        return PointHC(p.z + self.sigma(a), p.s)

    def act_dilation(self, u: AlgebraicNumber, p: PointHC) -> PointHC:
        self._check_unit(u)
        return PointHC(self.sigma(u) * p.z, p.s)

    def character_chi(self, g: GammaElement | AlgebraicNumber) -> float:
        """``|sigma_{s+1}(u)|^2`` for the dilation part; translations map to 1."""
        u = g.scale if isinstance(g, GammaElement) else g
        if u == self.field.one:
            return 1.0
        self._check_unit(u)
        return float(abs(self.sigma(u)[self.s]) ** 2)

    def jacobian(self, g: GammaElement) -> np.ndarray:
        return np.diag(self.sigma(g.scale))


def classify(fld: NumberField, precision_bits: int = DEFAULT_PRECISION) -> OTStructure:
    s, t = fld.signature
    if s == 0:
        raise NoRealPlace("no real embedding; H^s factor is empty")
    if t == 0:
        raise NoComplexPlace("totally real field; not an OT manifold")
    if t == 1:
        cls = LCK
    elif s == 1:
        cls = NOT_LCK
    else:
        cls = UNDECIDED
    return OTStructure(fld, None, s, t, cls, precision_bits)


# -- verifications -----------------------------------------------------------


def _rel(lhs: np.ndarray, rhs: np.ndarray) -> float:
    lhs, rhs = np.asarray(lhs), np.asarray(rhs)
    return float(np.max(np.abs(lhs - rhs), initial=0.0) / max(1.0, float(np.max(np.abs(rhs), initial=0.0))))


def verify_automorphy(ot: OTStructure, u: AlgebraicNumber, p: PointHC, tol: float = 1e-10) -> CheckResult:
    """``psi(R_u p) = chi(u) psi(p)``; residual relative to ``max(1, |rhs|)``."""
    if ot.t != 1:
        raise NotLCKManifold("potential automorphy is only claimed for t = 1")
    lhs = potential(ot.act_dilation(u, p))
    rhs = ot.character_chi(u) * potential(p)
    r = _rel(lhs, rhs)
    return CheckResult("psi_automorphy", r <= tol, r, tol)


def pullback(form_at, ot: OTStructure, g: GammaElement, p: PointHC) -> np.ndarray:
    """Matrix of ``g^* form`` at ``p``: ``Dg form(g p) Dg^H`` (``Dg`` is diagonal)."""
    jac = ot.jacobian(g)
    return jac @ form_at(ot.act(g, p)).matrix @ jac.conj().T


def verify_pullbacks(ot: OTStructure, g: GammaElement, p: PointHC, tol: float = 1e-9) -> CheckResult:
    """Pullback identities for ``Omega`` (factor chi), ``omega`` and ``omega_0`` (invariant).

    Checks not claimed for the given ``t`` are omitted from ``details``.
    """
    res = {}
    translation = g.is_translation
    if translation or ot.t == 1:
        chi = 1.0 if translation else ot.character_chi(g)
        res["Omega"] = _rel(pullback(kahler_hessian, ot, g, p), chi * kahler_hessian(p).matrix)
    if ot.t == 1:
        res["omega"] = _rel(pullback(lck_form, ot, g, p), lck_form(p).matrix)
        if g.shift.is_zero():
            res["psi"] = _rel(potential(ot.act(g, p)), ot.character_chi(g) * potential(p))
    res["omega0"] = _rel(pullback(weight_curvature, ot, g, p), weight_curvature(p).matrix)
    worst = max(res.values())
    return CheckResult("pullbacks", worst <= tol, worst, tol, res)


def _real_field(form_at, s: int):
    """Wrap a Hermitian-form field as a real 2-form field of real coordinates."""
    def f(x):
        return form_at(PointHC(forms.to_complex(x), s)).to_real()
    return f


def verify_lck_equation(p: PointHC, h: float = DEFAULT_STEP, tol: float | None = None) -> CheckResult:
    """Finite-difference check of ``d omega = theta ^ omega`` with ``theta = -d log phi``.

    Also reports ``d Omega`` (closed upstairs) as ``d_Omega``.
    """
    if p.t != 1:
        raise NotLCKManifold("the LCK equation needs t = 1")
    tol = 10 * h**2 if tol is None else tol
    x = forms.to_real(p.z)
    d_omega = forms.d_two_form(_real_field(lck_form, p.s), x, h)
    rhs = forms.wedge_1_2(lck_lee_form(p), lck_form(p).to_real())
    d_big = forms.d_two_form(_real_field(kahler_hessian, p.s), x, h)
    r = float(np.max(np.abs(d_omega - rhs)))
    r_big = float(np.max(np.abs(d_big)))
    worst = max(r, r_big)
    return CheckResult("lck_equation", worst <= tol, worst, tol, {"d_omega_minus_theta_omega": r, "d_Omega": r_big})


def verify_weight_identity(p: PointHC, h: float = DEFAULT_STEP, tol: float | None = None) -> CheckResult:
    """``d theta^c = c0 * omega_0`` with a fitted constant ``c0``, and ``d theta = 0``."""
    tol = 10 * h**2 if tol is None else tol
    x = forms.to_real(p.z)
    s = p.s

    def theta_c(xr):
        return lee_form_c(PointHC(forms.to_complex(xr), s))

    def theta(xr):
        return lee_form(PointHC(forms.to_complex(xr), s))

    dtc = forms.real_to_hermitian(forms.d_one_form(theta_c, x, h))
    w0 = weight_curvature(p).matrix
    c0 = float(np.real(np.vdot(w0, dtc)) / np.real(np.vdot(w0, w0))) if s else 0.0
    prop = float(np.max(np.abs(dtc - c0 * w0)))
    closed = float(np.max(np.abs(forms.d_one_form(theta, x, h))))
    worst = max(prop, closed)
    return CheckResult(
        "weight_identity", worst <= tol and c0 > 0, worst, tol,
        {"c0": c0, "proportionality": prop, "d_theta": closed},
    )


def random_point(rng: np.random.Generator, s: int, t: int, y_range=(0.1, 10.0), x_range=(-10.0, 10.0)) -> PointHC:
    y = rng.uniform(*y_range, size=s)
    x = rng.uniform(*x_range, size=s)
    w = rng.uniform(*x_range, size=t) + 1j * rng.uniform(*x_range, size=t)
    return PointHC(np.concatenate([x + 1j * y, w]), s)
