"""Sampled (polygonal) curves: partition-sum length, Lipschitz estimates,
gluing, interval rescaling and removal of constant pieces."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .metrics import Metric, _dist_raw
from .norms import DimensionMismatch


@dataclass(frozen=True, eq=False)
class Polyline:
    """A sampled curve: strictly increasing parameters paired with points.

    ``points`` is an (m, n) array; a 1-d input is promoted to a curve in
    R^1.  Values are immutable after construction.
    """

    params: np.ndarray
    points: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.params, dtype=float)
        P = np.asarray(self.points, dtype=float)
        if P.ndim == 1:
            P = P[:, None]
        if t.ndim != 1 or P.ndim != 2:
            raise ValueError("params must be 1-d and points 2-d")
        if len(t) != len(P) or len(t) < 1:
            raise ValueError(
                f"need equally many params and points (>= 1), got {len(t)} and {len(P)}"
            )
        if P.shape[1] < 1:
            raise ValueError("points need at least one coordinate")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(P))):
            raise ValueError("params and points must be finite")
        if len(t) > 1 and not np.all(np.diff(t) > 0.0):
            raise ValueError("params must be strictly increasing")
        t = t.copy()
        P = P.copy()
        t.setflags(write=False)
        P.setflags(write=False)
        object.__setattr__(self, "params", t)
        object.__setattr__(self, "points", P)

    def __len__(self) -> int:
        return len(self.params)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polyline):
            return NotImplemented
        return np.array_equal(self.params, other.params) and np.array_equal(
            self.points, other.points
        )

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def interval(self) -> tuple[float, float]:
        return float(self.params[0]), float(self.params[-1])


def _check_dim(c: Polyline, m: Metric) -> None:
    if m.dim is not None and c.dim != m.dim:
        raise DimensionMismatch(f"metric has dimension {m.dim}, curve has {c.dim}")


def length(c: Polyline, m: Metric) -> float:
    """Partition-sum length: the sum of distances between adjacent samples.

    A single-point curve has length 0 (empty sum).
    """
    _check_dim(c, m)
    if len(c) < 2:
        return 0.0
    return float(np.sum(_dist_raw(m, c.points[1:], c.points[:-1])))


def lipschitz_estimate(c: Polyline, m: Metric, pairs: str = "all") -> float:
    """Largest secant ratio d(p_j, p_k) / (t_k - t_j) over sample pairs.

    This lower-bounds the Lipschitz constant of any interpolant of the
    samples and equals it for geodesic interpolation.  ``pairs="all"``
    scans every pair; ``pairs="adjacent"`` is a documented fast mode that
    scans consecutive samples only.  For a genuine metric the two agree
    (chains of adjacent bounds dominate every long-range secant via the
    triangle inequality); they may differ for raw distance functions that
    violate the triangle inequality.
    """
    _check_dim(c, m)
    if len(c) < 2:
        raise ValueError("lipschitz_estimate needs at least 2 samples")
    t = c.params
    P = c.points
    if pairs == "adjacent":
        ratios = _dist_raw(m, P[1:], P[:-1]) / np.diff(t)
        return float(ratios.max())
    if pairs != "all":
        raise ValueError(f"pairs must be 'all' or 'adjacent', got {pairs!r}")
    best = 0.0
    count = len(t)
    # cap the (block x count) pairwise temporaries at a few million entries
    block = max(16, min(256, 4_194_304 // count))
    for i0 in range(0, count - 1, block):
        i1 = min(i0 + block, count - 1)
        d = _dist_raw(m, P[i0:i1, None, :], P[None, i0 + 1 :, :])
        dt = t[None, i0 + 1 :] - t[i0:i1, None]
        ratios = np.where(dt > 0.0, d / np.where(dt > 0.0, dt, 1.0), 0.0)
        best = max(best, float(ratios.max()))
    return best


def glue(c1: Polyline, c2: Polyline, snap_tol: float | None = None) -> Polyline:
    """Concatenate two curves meeting at a shared junction sample.

    Requires the last sample of ``c1`` to equal the first of ``c2``
    exactly (parameter and point).  With ``snap_tol`` set, mismatches up
    to that size are allowed and the junction is snapped to c1's
    endpoint; the default refuses rather than silently corrupting curves.
    """
    if c1.dim != c2.dim:
        raise DimensionMismatch(f"curves have dimensions {c1.dim} and {c2.dim}")
    t_gap = abs(c2.params[0] - c1.params[-1])
    p_gap = float(np.max(np.abs(c2.points[0] - c1.points[-1])))
    if snap_tol is None:
        if t_gap != 0.0:
            raise ValueError("junction parameters differ; pass snap_tol to snap")
        if p_gap != 0.0:
            raise ValueError("junction points differ; pass snap_tol to snap")
    elif t_gap > snap_tol or p_gap > snap_tol:
        raise ValueError(
            f"junction mismatch (param gap {t_gap:g}, point gap {p_gap:g}) "
            f"exceeds snap_tol {snap_tol:g}"
        )
    params = np.concatenate([c1.params, c2.params[1:]])
    points = np.vstack([c1.points, c2.points[1:]])
    return Polyline(params, points)


def rescale(c: Polyline, a: float, b: float) -> Polyline:
    """Affinely map the parameter interval onto [a, b], points unchanged.

    The product of the Lipschitz estimate and the interval length is
    invariant.  A single-sample curve is placed at ``a``.
    """
    if not a < b:
        raise ValueError(f"need a < b, got [{a}, {b}]")
    t = c.params
    if len(c) == 1:
        return Polyline(np.array([float(a)]), c.points)
    span = t[-1] - t[0]
    s = a + (t - t[0]) * ((b - a) / span)
    s = s.copy()
    s[0] = a
    s[-1] = b
    return Polyline(s, c.points)


def remove_constant_pieces(c: Polyline, tol: float = 0.0) -> Polyline:
    """Collapse runs where the curve does not move and close the parameter gaps.

    A maximal run of consecutive points within ``tol`` (max coordinate
    difference) of the run's first point is replaced by that first point,
    and all later parameters shift left by the removed run's width.  With
    ``tol = 0`` the Lipschitz estimate never increases; positive
    tolerances may let it grow on the order of tol over the smallest
    surviving parameter gap.
    """
    if tol < 0.0:
        raise ValueError("tol must be nonnegative")
    t = c.params
    P = c.points
    keep: list[int] = []
    new_t: list[float] = []
    shift = 0.0
    i = 0
    count = len(c)
    while i < count:
        j = i
        while j + 1 < count and np.max(np.abs(P[j + 1] - P[i])) <= tol:
            j += 1
        keep.append(i)
        new_t.append(float(t[i] - shift))
        shift += float(t[j] - t[i])
        i = j + 1
    return Polyline(np.array(new_t), P[keep])
