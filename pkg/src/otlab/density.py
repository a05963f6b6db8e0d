"""Orbit clouds of ``Z[theta]`` under the real embeddings, and how densely they cover a box.

Density is measured by the covering radius: the largest distance from a node
of a regular grid to the nearest cloud point.  A cloud that becomes dense in
``R^s`` drives this to zero as the coefficient height grows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import EmptyCloud, NoRealPlace
from .geometry import OTStructure, PointHC
from .number_field import NumberField, coefficient_box

Box = tuple[tuple[float, float], ...]

DEFAULT_HEIGHTS = (2, 4, 8, 16)
LEAF_GRID = 101


def default_box(s: int) -> Box:
    return ((-1.0, 1.0),) * s


def default_grid(s: int) -> int:
    return 201 if s == 1 else 101


@dataclass(frozen=True)
class OrbitCloud:
    height: int
    points: np.ndarray  # (count, s)
    count: int


@dataclass(frozen=True)
class DensityReport:
    box: Box
    grid_resolution: int
    covering_radius: float
    height_series: tuple[tuple[int, float], ...]

    def is_monotone(self) -> bool:
        radii = [r for _, r in self.height_series]
        return all(b <= a for a, b in zip(radii, radii[1:]))

    def is_strictly_decreasing(self) -> bool:
        radii = [r for _, r in self.height_series]
        return all(b < a for a, b in zip(radii, radii[1:]))


@dataclass(frozen=True)
class LeafSample:
    alpha: tuple[float, ...]
    base_point: PointHC
    translated_points: tuple[PointHC, ...]
    im_invariant: bool = True  # Im z_i == alpha_i bitwise for every translate, i <= s

    def real_parts(self) -> np.ndarray:
        s = self.base_point.s
        return np.array([p.z[:s].real for p in self.translated_points])


def _embedded_sums(fld: NumberField, height: int, places: slice) -> np.ndarray:
    """``sum_k a_k * sigma(theta^k)`` over the coefficient box, accumulated in a fixed order.

    Summing term by term (not a matrix product) keeps ``a -> -a`` an exact
    negation of the result.
    """
    coords = coefficient_box(height, fld.degree).astype(float)
    basis = fld.basis_embeddings()[:, places]
    acc = np.zeros((coords.shape[0], basis.shape[1]), dtype=basis.dtype)
    for k in range(fld.degree):
        acc += coords[:, k : k + 1] * basis[k]
    return acc


def orbit_projection(fld: NumberField, height: int) -> OrbitCloud:
    """Real embeddings of every ``a`` with coefficients in ``[-height, height]``."""
    if fld.s < 1:
        raise NoRealPlace("orbit projection needs at least one real embedding")
    if height < 0:
        raise ValueError("height must be >= 0")
    pts = _embedded_sums(fld, height, slice(0, fld.s)).real.copy()
    return OrbitCloud(height, pts, pts.shape[0])


def _grid_axes(box: Box, grid_resolution: int) -> list[np.ndarray]:
    if grid_resolution < 2:
        raise ValueError("grid_resolution must be >= 2")
    for lo, hi in box:
        if not hi > lo:
            raise ValueError(f"degenerate box side [{lo}, {hi}]")
    return [np.linspace(lo, hi, grid_resolution) for lo, hi in box]


def _nearest_1d(sorted_pts: np.ndarray, nodes: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(sorted_pts, nodes)
    left = sorted_pts[np.clip(idx - 1, 0, sorted_pts.size - 1)]
    right = sorted_pts[np.clip(idx, 0, sorted_pts.size - 1)]
    return np.minimum(np.abs(nodes - left), np.abs(nodes - right))


def covering_radius(points, box: Box, grid_resolution: int, workers: int = 1) -> float:
    """Max over grid nodes in ``box`` of the distance to the nearest point."""
    pts = np.asarray(points.points if isinstance(points, OrbitCloud) else points, dtype=float)
    if pts.size == 0:
        raise EmptyCloud("covering radius of an empty cloud")
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[1] != len(box):
        raise ValueError(f"cloud has dimension {pts.shape[1]}, box has {len(box)}")
    axes = _grid_axes(box, grid_resolution)
    if len(axes) == 1:
        return float(np.max(_nearest_1d(np.sort(pts[:, 0]), axes[0])))
    nodes = np.stack([g.ravel() for g in np.meshgrid(*axes, indexing="ij")], axis=1)
    dist, _ = cKDTree(pts).query(nodes, workers=workers)
    return float(np.max(dist))


def density_series(fld: NumberField, heights: Sequence[int] = DEFAULT_HEIGHTS, box: Box | None = None,
                   grid_resolution: int | None = None, workers: int = 1) -> DensityReport:
    box = box or default_box(fld.s)
    grid_resolution = grid_resolution or default_grid(fld.s)
    series = tuple(
        (h, covering_radius(orbit_projection(fld, h), box, grid_resolution, workers)) for h in heights
    )
    return DensityReport(box, grid_resolution, series[-1][1], series)


def translate_real_parts(base: PointHC, sigma: np.ndarray) -> np.ndarray:
    """Rows ``base.z + sigma`` with imaginary parts copied, never recomputed."""
    z = np.broadcast_to(base.z, sigma.shape).copy()
    z.real += sigma.real
    # real places contribute nothing to Im; skip them so Im stays bitwise identical
    z.imag[:, base.s :] += sigma.imag[:, base.s :]
    return z


def leaf_closure_experiment(structure: OTStructure, alpha: Sequence[float], heights: Sequence[int] = DEFAULT_HEIGHTS,
                            box: Box | None = None, grid_resolution: int | None = None,
                            base_real: Sequence[float] | None = None, keep_points: bool = False,
                            workers: int = 1) -> tuple[LeafSample, DensityReport, DensityReport]:
    """Translate a point with ``Im z_i = alpha_i`` by all enumerated ``a``.

    Returns the sample at the largest height, the covering series of the real
    parts of the first ``s`` coordinates around the base point, and the covering
    series of the ``z_{s+1}`` coordinate in a square around its base value.
    """
    s, t = structure.s, structure.t
    alpha = tuple(float(a) for a in alpha)
    if len(alpha) != s or any(a <= 0 for a in alpha):
        raise ValueError(f"alpha must be {s} positive reals")
    if t < 1:
        raise ValueError("leaf experiment needs a complex place")
    fld = structure.field
    x0 = np.zeros(s) if base_real is None else np.asarray(base_real, dtype=float)
    z0 = np.concatenate([x0 + 1j * np.asarray(alpha), np.full(t, 1j)])
    base = structure.point(z0)

    box = box or default_box(s)
    grid_resolution = grid_resolution or default_grid(s)
    offset_box = tuple((lo + x, hi + x) for (lo, hi), x in zip(box, x0))
    c0 = z0[s]
    complex_box = ((c0.real - 1.0, c0.real + 1.0), (c0.imag - 1.0, c0.imag + 1.0))

    real_series, complex_series = [], []
    translated = None
    invariant = True
    for h in heights:
        sigma = _embedded_sums(fld, h, slice(None))
        translated = translate_real_parts(base, sigma)
        invariant &= bool(np.array_equal(translated[:, :s].imag, np.broadcast_to(alpha, (len(translated), s))))
        real_series.append((h, covering_radius(translated[:, :s].real, offset_box, grid_resolution, workers)))
        w = translated[:, s]
        complex_series.append((h, covering_radius(np.stack([w.real, w.imag], axis=1), complex_box, LEAF_GRID, workers)))

    points = tuple(PointHC(row, s) for row in translated) if keep_points else ()
    sample = LeafSample(alpha, base, points, invariant)
    real_report = DensityReport(offset_box, grid_resolution, real_series[-1][1], tuple(real_series))
    complex_report = DensityReport(complex_box, LEAF_GRID, complex_series[-1][1], tuple(complex_series))
    return sample, real_report, complex_report
