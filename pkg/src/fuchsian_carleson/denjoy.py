"""Homogeneity of compact subsets of the real line.

A compact set E is homogeneous when |E n (x-t, x+t)| >= C t for x in E and
0 < t < diam E.  Sets are finite unions of closed intervals; intersection
lengths are exact (prefix sums of interval lengths), so the only
approximation is the sampling of x and t.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MERGE_TOL = 1e-12


@dataclass(frozen=True)
class IntervalUnion:
    """Sorted, pairwise disjoint closed intervals, stored as (starts, ends)."""

    starts: np.ndarray
    ends: np.ndarray

    @classmethod
    def from_intervals(cls, intervals, tol: float = MERGE_TOL) -> "IntervalUnion":
        arr = np.asarray(list(intervals), dtype=float).reshape(-1, 2)
        if arr.size and (arr[:, 1] < arr[:, 0]).any():
            raise ValueError("interval with end < start")
        arr = arr[np.argsort(arr[:, 0], kind="stable")]
        starts, ends = [], []
        for a, b in arr:
            if starts and a <= ends[-1] + tol:
                ends[-1] = max(ends[-1], b)
            else:
                starts.append(a)
                ends.append(b)
        return cls(np.array(starts), np.array(ends))

    @classmethod
    def cover_points(cls, points, eps: float) -> "IntervalUnion":
        """Union of the closed intervals of length eps centred at the points."""
        p = np.sort(np.asarray(points, dtype=float).ravel())
        return cls.from_intervals(np.column_stack([p - eps / 2, p + eps / 2]))

    def __len__(self):
        return len(self.starts)

    @property
    def intervals(self) -> list:
        return list(zip(self.starts.tolist(), self.ends.tolist()))

    @property
    def total_length(self) -> float:
        return float(np.sum(self.ends - self.starts))

    @property
    def diameter(self) -> float:
        return float(self.ends[-1] - self.starts[0]) if len(self) else 0.0

    @property
    def is_empty(self) -> bool:
        return len(self) == 0

    def affine(self, a: float, b: float) -> "IntervalUnion":
        if a <= 0:
            raise ValueError("scale must be positive")
        return IntervalUnion(a * self.starts + b, a * self.ends + b)

    def _cumulative(self):
        return np.concatenate([[0.0], np.cumsum(self.ends - self.starts)])

    def measure_below(self, y) -> np.ndarray:
        """|E n (-inf, y]|, vectorized in y."""
        y = np.asarray(y, dtype=float)
        cum = self._cumulative()
        k = np.searchsorted(self.starts, y, side="right")   # intervals starting at or before y
        full = cum[np.maximum(k - 1, 0)]
        last = np.where(k > 0, np.clip(y - self.starts[np.maximum(k - 1, 0)], 0.0,
                                       (self.ends - self.starts)[np.maximum(k - 1, 0)]), 0.0)
        return np.where(k > 0, full + last, 0.0)

    def window_measure(self, x, t) -> np.ndarray:
        """|E n (x - t, x + t)| for broadcastable x, t.

        Lengths are formed relative to x, so a window inside a single
        interval is measured without cancellation.
        """
        x, t = np.broadcast_arrays(np.asarray(x, float), np.asarray(t, float))
        a, b = self.starts, self.ends
        k_lo = np.searchsorted(a, x - t, side="right") - 1
        k_hi = np.searchsorted(a, x + t, side="right") - 1
        lo = np.maximum(k_lo, 0)
        hi = np.maximum(k_hi, 0)
        rel_a_hi, rel_b_hi = a[hi] - x, b[hi] - x
        rel_b_lo = b[lo] - x
        # window inside the span of one interval (or before all of them)
        single = np.clip(np.minimum(rel_b_hi, t) - np.maximum(rel_a_hi, -t), 0.0, None)
        single = np.where(k_hi >= 0, single, 0.0)
        cum = self._cumulative()
        low_part = np.where(k_lo >= 0, np.clip(rel_b_lo + t, 0.0, None), 0.0)
        high_part = np.clip(np.minimum(rel_b_hi, t) - rel_a_hi, 0.0, None)
        middle = cum[hi] - cum[np.minimum(k_lo + 1, hi)]
        return np.where(k_hi == k_lo, single, low_part + middle + high_part)

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        k = np.searchsorted(self.starts, x, side="right") - 1
        ok = k >= 0
        kk = np.maximum(k, 0)
        return ok & (x <= self.ends[kk] + MERGE_TOL)


def cantor_set(levels: int, removed_fraction: float = 1.0 / 3.0) -> IntervalUnion:
    """Level-``levels`` approximation of the symmetric Cantor set in [0, 1]."""
    if levels < 0:
        raise ValueError("levels must be >= 0")
    if not 0.0 < removed_fraction < 1.0:
        raise ValueError("removed_fraction must lie in (0, 1)")
    keep = (1.0 - removed_fraction) / 2.0
    starts = np.array([0.0])
    length = 1.0
    for _ in range(levels):
        starts = np.concatenate([starts, starts + (1.0 - keep) * length])
        length *= keep
    starts.sort()
    return IntervalUnion(starts, starts + length)


def default_t_grid(diameter: float, per_decade: int = 64, decades: float = 6.0) -> np.ndarray:
    """Logarithmic t values from diameter * 10^-decades up to the diameter."""
    n = int(round(per_decade * decades)) + 1
    return diameter * np.logspace(-decades, 0.0, n)


def default_x_samples(E: IntervalUnion, n_uniform: int = 257) -> np.ndarray:
    """Interval endpoints plus the points of a uniform grid that lie in E."""
    grid = np.linspace(E.starts[0], E.ends[-1], n_uniform)
    return np.unique(np.concatenate([E.starts, E.ends, grid[E.contains(grid)]]))


def homogeneity_profile(E: IntervalUnion, t_grid=None, x_sampling=None, chunk: int = 1 << 21):
    """min over sampled x of |E n (x-t, x+t)| / t, for each t in the grid."""
    if E.is_empty:
        raise ValueError("homogeneity of an empty set")
    diam = E.diameter
    if diam <= 0:
        t = np.asarray(t_grid if t_grid is not None else [1.0], dtype=float)
        return t, np.zeros_like(t)
    t = default_t_grid(diam) if t_grid is None else np.asarray(t_grid, dtype=float)
    t = t[(t > 0) & (t <= diam)]
    x = default_x_samples(E) if x_sampling is None else np.asarray(x_sampling, dtype=float)
    x = x[E.contains(x)]
    out = np.full(t.shape, np.inf)
    step = max(1, chunk // max(1, len(t)))
    for s in range(0, len(x), step):
        xx = x[s:s + step, None]
        ratio = E.window_measure(xx, t[None, :]) / t[None, :]
        out = np.minimum(out, ratio.min(axis=0))
    return t, out


def homogeneity_constant(E: IntervalUnion, t_grid=None, x_sampling=None) -> float:
    """Sampled infimum of |E n (x-t, x+t)| / t over x in E, 0 < t <= diam E."""
    _, prof = homogeneity_profile(E, t_grid, x_sampling)
    return float(prof.min()) if prof.size else 0.0


def limit_set_homogeneity(points, eps: float, t_grid=None) -> float:
    """Homogeneity of the eps-coarsening of a finite boundary sample."""
    pts = np.asarray(points)
    if np.iscomplexobj(pts):
        pts = pts.real
    pts = pts[np.isfinite(pts)]
    if pts.size == 0:
        raise ValueError("no finite points")
    if eps <= 0:
        raise ValueError("eps must be positive")
    return homogeneity_constant(IntervalUnion.cover_points(pts, eps), t_grid)


def homogeneity_trend(points, eps_values, t_grid=None) -> list:
    """(eps, constant) at several coarsening scales."""
    return [(float(e), limit_set_homogeneity(points, e, t_grid)) for e in eps_values]


def puncture_set(n_max: int) -> np.ndarray:
    """The real points 0, +-2, +-4, ..., +-2^n_max removed from the plane."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    pos = 2.0 ** np.arange(1, n_max + 1)
    return np.concatenate([-pos[::-1], [0.0], pos])
