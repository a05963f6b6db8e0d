"""Seeded verification suites over random points and group elements.

Each suite returns ``{check_name: Check}``; a check carries the worst value
seen, the tolerance it was held to, and whether it passed.  Suites draw from
their own ``numpy`` generator so their output does not depend on run order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from .geometry import GammaElement, OTStructure, PointHC
from .number_field import AlgebraicNumber
from .units import AdmissibleSubgroup

GROUP_TOL = 1e-10
NORM_TOL = 1e-10
PULLBACK_TOL = 1e-9
SPECTRUM_TOL = 1e-12
LCK_TOL = 1e-5
CLOSED_TOL = 1e-6
C0_SPREAD_TOL = 1e-6
MAX_FD_POINTS = 50

SHIFT_HEIGHT = 3
UNIT_EXPONENT = 2


@dataclass(frozen=True)
class Check:
    value: float
    tol: float
    passed: bool
    extra: dict | None = None

    def as_dict(self) -> dict:
        out = {"value": self.value, "tol": self.tol, "pass": self.passed}
        if self.extra:
            out.update(self.extra)
        return out


def _at_most(value: float, tol: float, **extra) -> Check:
    return Check(float(value), float(tol), bool(value <= tol), extra or None)


def random_integer(ot: OTStructure, rng: np.random.Generator, height: int = SHIFT_HEIGHT) -> AlgebraicNumber:
    return ot.field.element(int(c) for c in rng.integers(-height, height + 1, size=ot.field.degree))


def random_unit(ot: OTStructure, units: AdmissibleSubgroup, rng: np.random.Generator) -> AlgebraicNumber:
    u = ot.field.one
    for g in units.generators:
        e = int(rng.integers(-UNIT_EXPONENT, UNIT_EXPONENT + 1))
        if e:
            u = u * g**e
    return u


def random_gamma(ot: OTStructure, units: AdmissibleSubgroup | None, rng: np.random.Generator) -> GammaElement:
    """A translation, a dilation or a general ``z -> u z + a``, chosen uniformly."""
    kind = int(rng.integers(0, 3)) if units is not None else 0
    a = random_integer(ot, rng)
    if kind == 0:
        return ot.translation(a)
    u = random_unit(ot, units, rng)
    if kind == 1:
        return ot.dilation(u)
    return ot.translation(a).compose(ot.dilation(u))


def _points(ot: OTStructure, rng: np.random.Generator, count: int) -> list[PointHC]:
    return [geo.random_point(rng, ot.s, ot.t) for _ in range(count)]


def plurisubharmonic(s: int, t: int, samples: int, seed: int) -> dict[str, Check]:
    rng = np.random.default_rng([seed, s, t, 1])
    worst = min(float(geo.kahler_hessian(geo.random_point(rng, s, t)).eigenvalues()[0]) for _ in range(samples))
    return {f"hessian_min_eigenvalue_s{s}_t{t}": Check(worst, 0.0, worst > 0.0, {"relation": ">"})}


def weight_spectrum(s: int, t: int, samples: int, seed: int) -> dict[str, Check]:
    """Eigenvalues of ``omega_0`` against ``1/y_i^2`` and zeros; kernel against the last ``t`` axes."""
    rng = np.random.default_rng([seed, s, t, 2])
    spec_err = kernel_err = 0.0
    rank_ok = True
    for _ in range(samples):
        p = geo.random_point(rng, s, t)
        vals, vecs = geo.weight_curvature(p).eigh()
        expected = np.sort(np.concatenate([1.0 / p.y**2, np.zeros(t)]))
        spec_err = max(spec_err, float(np.max(np.abs(vals - expected))))
        kernel = vecs[:, :t]
        kernel_err = max(kernel_err, float(np.linalg.norm(kernel[:s, :])))
        rank_ok &= int(np.sum(vals > SPECTRUM_TOL)) == s
    out = {
        f"omega0_spectrum_s{s}_t{t}": _at_most(spec_err, SPECTRUM_TOL),
        f"omega0_kernel_s{s}_t{t}": _at_most(kernel_err, SPECTRUM_TOL),
    }
    if t == 1:
        # dim_C minus 1 equals s when t = 1; the field degree is not meant here
        out[f"omega0_positive_count_s{s}_t{t}"] = Check(float(s), 0.0, rank_ok, {"expected": s})
    return out


def group_laws(ot: OTStructure, units: AdmissibleSubgroup, samples: int, seed: int) -> dict[str, Check]:
    """Composition laws: exact in ``Z[theta]`` and, after embedding, to ``GROUP_TOL``."""
    rng = np.random.default_rng([seed, 3])
    exact = True
    worst = 0.0
    for _ in range(samples):
        a, b = random_integer(ot, rng), random_integer(ot, rng)
        u, v = random_unit(ot, units, rng), random_unit(ot, units, rng)
        p = geo.random_point(rng, ot.s, ot.t)
        ta, tb, ru, rv = ot.translation(a), ot.translation(b), ot.dilation(u), ot.dilation(v)
        laws = [
            (ot.translation(a + b), [ta, tb]),
            (ot.dilation(u * v), [ru, rv]),
            (ot.translation(u * a), [ru, ta, ru.inverse()]),
        ]
        for lhs, factors in laws:
            composed = factors[0]
            for f in factors[1:]:
                composed = composed.compose(f)
            exact &= lhs == composed
            q = p
            for f in reversed(factors):
                q = ot.act(f, q)
            worst = max(worst, geo._rel(q.z, ot.act(lhs, p).z))
    return {
        "group_laws_exact": Check(0.0, 0.0, bool(exact)),
        "group_laws_embedded": _at_most(worst, GROUP_TOL),
    }


def norm_character(ot: OTStructure, units: AdmissibleSubgroup) -> dict[str, Check]:
    """``prod sigma_i(u) * |sigma_{s+1}(u)|^2 = 1`` for each generator (``t = 1``)."""
    worst = 0.0
    for u in units.generators:
        sig = ot.sigma(u)
        worst = max(worst, abs(float(np.prod(sig[: ot.s].real)) * float(abs(sig[ot.s]) ** 2) - 1.0))
    return {"norm_character": _at_most(worst, NORM_TOL)}


def pullbacks(ot: OTStructure, units: AdmissibleSubgroup | None, samples: int, seed: int,
              tol: float = PULLBACK_TOL) -> dict[str, Check]:
    rng = np.random.default_rng([seed, 4])
    worst: dict[str, float] = {}
    for _ in range(samples):
        g = random_gamma(ot, units, rng)
        p = geo.random_point(rng, ot.s, ot.t)
        res = geo.verify_pullbacks(ot, g, p, tol)
        for k, v in res.details.items():
            worst[k] = max(worst.get(k, 0.0), v)
    return {f"pullback_{k}": _at_most(v, tol) for k, v in sorted(worst.items())}


def lck_identities(ot: OTStructure, samples: int, seed: int, h: float = geo.DEFAULT_STEP) -> dict[str, Check]:
    """Finite-difference LCK equation, closedness of the Lee form, and the ``c0`` constant."""
    rng = np.random.default_rng([seed, 5])
    pts = _points(ot, rng, min(samples, MAX_FD_POINTS))
    lck = d_big = closed = prop = 0.0
    c0s = []
    for p in pts:
        r = geo.verify_lck_equation(p, h)
        lck = max(lck, r.details["d_omega_minus_theta_omega"])
        d_big = max(d_big, r.details["d_Omega"])
        w = geo.verify_weight_identity(p, h)
        closed = max(closed, w.details["d_theta"])
        prop = max(prop, w.details["proportionality"])
        c0s.append(w.details["c0"])
    c0 = float(np.mean(c0s))
    spread = float(max(c0s) - min(c0s))
    return {
        "lck_equation": _at_most(lck, LCK_TOL),
        "d_Omega": _at_most(d_big, LCK_TOL),
        "d_theta": _at_most(closed, CLOSED_TOL),
        "d_theta_c_proportional": _at_most(prop, LCK_TOL),
        "c0_spread": Check(spread, C0_SPREAD_TOL, spread <= C0_SPREAD_TOL and c0 > 0, {"c0": c0}),
    }
