"""Discrete minimal-Lipschitz-constant paths between fixed endpoints.

A path is represented on the uniform grid of [0, 1] with a fixed number
of segments.  The solver relaxes one interior point at a time, replacing
it with the best member of a deterministic candidate set (a line search
toward the midpoint of its neighbors plus coordinate perturbations of
decaying radius) under the local objective max(d(prev, c), d(c, next)).
Only strict improvements are accepted, so the path's constant

    k = max_i d(p_i, p_{i+1}) * segment_count

never increases across sweeps, and for any metric k is bounded below by
the distance between the endpoints.  Everything is metric-only: no
gradients, so snowflaked metrics work unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import Polyline
from .metrics import Metric, _dist_raw
from .norms import DimensionMismatch, as_vector

_LAMBDAS = np.array([0.25, 0.5, 1.0])


@dataclass(frozen=True, eq=False)
class GeodesicProblem:
    """Fixed-endpoint minimax path problem on the unit parameter interval.

    ``initial_path`` optionally replaces the default affine initialization;
    it must live on the same uniform grid and share the endpoints.
    """

    metric: Metric
    start: np.ndarray
    end: np.ndarray
    segment_count: int = 16
    tolerance: float = 1e-9
    max_iters: int = 10_000
    initial_path: Polyline | None = None

    def __post_init__(self):
        s = as_vector(self.start)
        e = as_vector(self.end, dim=s.size)
        if self.metric.dim is not None and s.size != self.metric.dim:
            raise DimensionMismatch(
                f"metric has dimension {self.metric.dim}, endpoints have {s.size}"
            )
        object.__setattr__(self, "start", s)
        object.__setattr__(self, "end", e)
        if self.segment_count < 1:
            raise ValueError("segment_count must be at least 1")
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if self.initial_path is not None:
            p = self.initial_path
            if len(p) != self.segment_count + 1 or p.dim != s.size:
                raise ValueError("initial_path does not match the grid or dimension")
            grid = np.linspace(0.0, 1.0, self.segment_count + 1)
            if not np.allclose(p.params, grid, atol=1e-12):
                raise ValueError("initial_path must use the uniform grid on [0, 1]")
            if not (np.allclose(p.points[0], s, atol=1e-12)
                    and np.allclose(p.points[-1], e, atol=1e-12)):
                raise ValueError("initial_path endpoints must equal start and end")


@dataclass(frozen=True, eq=False)
class GeodesicResult:
    """Solved path with its constant and convergence diagnostics.

    ``k_history`` holds k after initialization and after every sweep; it
    is nonincreasing by construction.
    """

    path: Polyline
    k: float
    iterations: int
    converged: bool
    k_history: tuple[float, ...]


def solve(prob: GeodesicProblem) -> GeodesicResult:
    """Relax the path until the constant stops improving.

    Convergence is declared when a full sweep improves k by less than
    ``tolerance`` in relative terms.  The affine initialization is already
    optimal for strictly convex norms, in which case the first sweep
    finds nothing to improve and the solver stops immediately.
    """
    m = prob.metric
    segs = prob.segment_count
    n = prob.start.size
    grid = np.linspace(0.0, 1.0, segs + 1)
    if prob.initial_path is not None:
        P = prob.initial_path.points.copy()
        P[0] = prob.start
        P[-1] = prob.end
    else:
        P = prob.start[None, :] + grid[:, None] * (prob.end - prob.start)[None, :]
        P[-1] = prob.end

    def path_k(points: np.ndarray) -> float:
        return float(np.max(_dist_raw(m, points[1:], points[:-1])) * segs)

    k = path_k(P)
    history = [k]
    coord_scale = float(np.max(np.ptp(P, axis=0))) if segs > 1 else 0.0
    radius = coord_scale / segs if coord_scale > 0.0 else 0.0
    eye = np.eye(n)
    converged = False
    iterations = 0

    for _ in range(prob.max_iters):
        iterations += 1
        for i in range(1, segs):
            a = P[i - 1]
            b = P[i + 1]
            cur = P[i]
            cur_val = float(max(_dist_raw(m, cur, a), _dist_raw(m, cur, b)))
            mid = 0.5 * (a + b)
            cands = cur[None, :] + _LAMBDAS[:, None] * (mid - cur)[None, :]
            if radius > 0.0:
                offs = radius * eye
                cands = np.vstack([cands, cur + offs, cur - offs])
            vals = np.maximum(_dist_raw(m, cands, a), _dist_raw(m, cands, b))
            j = int(np.argmin(vals))
            if vals[j] < cur_val:  # ties keep the incumbent point
                P[i] = cands[j]
        k_new = path_k(P)
        history.append(k_new)
        improvement = (k - k_new) / k if k > 0.0 else 0.0
        k = k_new
        radius *= 0.5
        if improvement < prob.tolerance:
            converged = True
            break

    return GeodesicResult(
        path=Polyline(grid, P),
        k=k,
        iterations=iterations,
        converged=converged,
        k_history=tuple(history),
    )


def straightness_check(path: Polyline, m: Metric, tol: float) -> bool:
    """Is every interior sample metrically between the endpoints?

    True iff d(start, p_i) + d(p_i, end) <= d(start, end) + tol for all
    interior i.  Under a strictly convex norm that forces the samples
    onto the affine segment; under l1 or max norms many non-affine paths
    legitimately pass.
    """
    if len(path) < 3:
        raise ValueError("straightness_check needs at least 3 samples")
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    x = path.points[0]
    y = path.points[-1]
    interior = path.points[1:-1]
    total = _dist_raw(m, interior, x) + _dist_raw(m, interior, y)
    return bool(np.all(total <= float(_dist_raw(m, x, y)) + tol))


def linfty_geodesic_family(phi_samples) -> Polyline:
    """Graph curve t -> (t, phi(t)) on the uniform grid of [0, 1].

    ``phi_samples`` must start and end at exactly 0 and have secant
    slopes of magnitude at most 1 (up to roundoff).  Every such graph
    connects (0, 0) to (1, 0) with max-norm Lipschitz estimate 1, giving
    a large family of distinct minimizers for the max norm.
    """
    phi = np.asarray(phi_samples, dtype=float)
    if phi.ndim != 1 or len(phi) < 2:
        raise ValueError("need a 1-d list of at least 2 samples")
    if not np.all(np.isfinite(phi)):
        raise ValueError("phi samples must be finite")
    if phi[0] != 0.0 or phi[-1] != 0.0:
        raise ValueError("phi must vanish at both ends")
    t = np.linspace(0.0, 1.0, len(phi))
    slopes = np.abs(np.diff(phi)) / np.diff(t)
    worst = float(slopes.max())
    if worst > 1.0 + 1e-12:
        raise ValueError(f"phi has a secant slope of {worst:g}, above 1")
    return Polyline(t, np.column_stack([t, phi]))
