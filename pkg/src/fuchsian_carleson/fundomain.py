"""Dirichlet fundamental domains centred at the origin, from a truncated group.

In the disk with base point 0 a point z lies in the Dirichlet domain iff
``|g(z)| >= |z|`` for every g, which is the same as lying outside every
isometric circle ``|cz + d| = 1``.  Half-plane tables are handled through the
Cayley transform (base point i).  Everything here is an over-approximation of
the true domain: deeper tables can only shrink it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .circles import CircleSet
from .group import OrbitTable
from .moebius import DISK, HALFPLANE, MoebiusMap, cayley, cayley_inv

TWO_PI = 2.0 * math.pi
MEMBERSHIP_TOL = 1e-12


def _wrap(x):
    return np.mod(x, TWO_PI)


def _signed_angle(x):
    return np.mod(np.asarray(x) + math.pi, TWO_PI) - math.pi


@dataclass(frozen=True)
class GeodesicSide:
    """Side of F carried by the isometric circle of table entry ``index``.

    ``arcs`` lists the (psi0, psi1) parameter intervals of the circle
    ``center + radius * exp(i psi)`` that actually bound the domain.
    """

    center: complex
    radius: float
    word: tuple
    index: int
    arcs: tuple

    def points(self, n: int = 64) -> np.ndarray:
        out = [self.center + self.radius * np.exp(1j * np.linspace(a, b, n)) for a, b in self.arcs]
        return np.concatenate(out) if out else np.zeros(0, complex)

    @property
    def endpoints(self) -> tuple:
        """The two points where the circle meets the unit circle."""
        th = math.atan(self.radius)
        phi = np.angle(self.center)
        return np.exp(1j * (phi - th)), np.exp(1j * (phi + th))

    @property
    def orthogonality_gap(self) -> float:
        return abs(abs(self.center) ** 2 - 1.0 - self.radius ** 2)


@dataclass(frozen=True)
class Cusp:
    point: complex                # on the unit circle
    angle: float
    parabolic_word: tuple
    side_words: tuple             # (right side, left side) as seen from the half-plane
    side_circles: tuple           # ((center, radius), (center, radius)) in the disk
    halfplane_point: float        # kappa^-1(point), inf for the point 1
    halfplane_radii: tuple        # (r_a, r_b): radii of the two side geodesics in H

    @property
    def tangency_gap(self) -> float:
        (c1, r1), (c2, r2) = self.side_circles
        return abs(abs(c1 - c2) - abs(r1 - r2)) if abs(c1 - c2) < max(r1, r2) else abs(abs(c1 - c2) - r1 - r2)


@dataclass(frozen=True)
class InfinityBoundary:
    arcs: tuple                   # closed arcs (theta0, theta1), theta1 > theta0, angles may exceed 2pi
    cusps: tuple
    depth: int
    resolution: float

    @property
    def free_measure(self) -> float:
        return math.fsum(b - a for a, b in self.arcs)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    def sample(self, n_per_arc: int = 5) -> np.ndarray:
        """Boundary points: cusps plus points spread over each free arc."""
        pts = [c.point for c in self.cusps]
        for a, b in self.arcs:
            pts.extend(np.exp(1j * np.linspace(a, b, n_per_arc)))
        return np.array(pts, dtype=complex)


@dataclass(frozen=True)
class Tile:
    index: int
    word: tuple
    disk_map: MoebiusMap
    view: "FundamentalDomainView"

    def contains(self, z):
        return self.view.membership(self.disk_map.inverse()(np.asarray(z, dtype=complex)))


@dataclass(frozen=True)
class LengthSums:
    levels: list
    partial_sums: list
    increments: list


class FundamentalDomainView:
    """Membership, sides and boundary at infinity of the truncated domain F_T."""

    def __init__(self, table: OrbitTable):
        self.table = table
        self.model = table.model
        m = table.disk_matrices
        c = m[:, 1, 0]
        d = m[:, 1, 1]
        usable = np.abs(c) > 1e-13 * np.abs(d)
        usable[table.identity_index] = False
        idx = np.flatnonzero(usable)
        self._all_idx = idx
        self._all_centers = -d[idx] / c[idx]
        self._all_radii = 1.0 / np.abs(c[idx])
        keep = self._essential(self._all_centers, self._all_radii)
        self.indices = idx[keep]
        self.centers = self._all_centers[keep]
        self.radii = self._all_radii[keep]

    @staticmethod
    def _essential(centers, radii):
        """Drop circles whose shadow lies inside another shadow."""
        n = len(centers)
        keep = np.ones(n, bool)
        if n == 0:
            return keep
        mid = np.angle(centers)
        half = np.arctan(radii)
        order = np.argsort(-half, kind="stable")
        kept_mid, kept_half = [], []
        for i in order:
            if kept_mid:
                km = np.array(kept_mid)
                kh = np.array(kept_half)
                inside = np.abs(_signed_angle(mid[i] - km)) + half[i] <= kh + 1e-13
                if inside.any():
                    keep[i] = False
                    continue
            kept_mid.append(mid[i])
            kept_half.append(half[i])
        return keep

    @property
    def depth(self) -> int:
        return self.table.max_word_len

    @property
    def edges(self) -> CircleSet:
        """Isometric circles that can bound F (disk coordinates)."""
        return CircleSet.circles(self.centers, self.radii)

    def edges_in(self, model: str) -> CircleSet:
        if model == DISK:
            return self.edges
        from .moebius import CAYLEY_INV
        return self.edges.image(CAYLEY_INV)

    def to_disk(self, z, model: str | None = None):
        model = model or DISK
        z = np.asarray(z, dtype=complex)
        return cayley(z) if model == HALFPLANE else z

    def membership(self, z, model: str = DISK, chunk: int = 1 << 22):
        """True where z lies in F_T (boundary counts as inside)."""
        w = np.atleast_1d(self.to_disk(z, model)).ravel()
        out = np.ones(w.shape, bool)
        if len(self.centers):
            step = max(1, chunk // len(self.centers))
            for s in range(0, w.size, step):
                ww = w[s:s + step, None]
                ratio = np.abs(ww - self.centers[None, :]) / self.radii[None, :]
                out[s:s + step] = (ratio >= 1.0 - MEMBERSHIP_TOL).all(axis=1)
        out = out.reshape(np.shape(z))
        return bool(out) if out.ndim == 0 else out

    @cached_property
    def _sides(self) -> list:
        sides = []
        n = len(self.centers)
        for i in range(n):
            C, R = self.centers[i], self.radii[i]
            psi_mid = float(np.angle(-C))
            beta = math.atan(1.0 / R)
            covered = []
            D = np.abs(self.centers - C)
            for j in np.flatnonzero((D < self.radii + R) & (np.arange(n) != i)):
                Rj, Dj = self.radii[j], D[j]
                if Rj >= Dj + R:
                    covered.append((-math.pi, math.pi))
                    continue
                if Dj + Rj <= R:
                    continue
                cosg = (R * R + Dj * Dj - Rj * Rj) / (2 * R * Dj)
                g = math.acos(min(1.0, max(-1.0, cosg)))
                phi = float(_signed_angle(np.angle(self.centers[j] - C) - psi_mid))
                covered.append((phi - g, phi + g))
            free = _subtract_intervals((-beta, beta), covered)
            free = [(a + psi_mid, b + psi_mid) for a, b in free if b - a > 1e-12]
            if free:
                k = int(self.indices[i])
                sides.append(GeodesicSide(complex(C), float(R), self.table.words[k], k, tuple(free)))
        return sides

    def sides(self) -> list:
        return list(self._sides)

    def _shadows(self):
        return np.angle(self.centers), np.arctan(self.radii)

    def infinite_boundary(self, resolution: float = 1e-6, cusp_tol: float = 1e-8) -> InfinityBoundary:
        if resolution <= 0:
            raise ValueError("resolution must be positive")
        mid, half = self._shadows()
        arcs = _complement_on_circle(mid, half, resolution)
        cusps = self._cusps(mid, half, cusp_tol)
        return InfinityBoundary(tuple(arcs), tuple(cusps), self.depth, resolution)

    def _cusps(self, mid, half, tol) -> list:
        t = self.table
        tr = t.disk_matrices[:, 0, 0] + t.disk_matrices[:, 1, 1]
        para = np.flatnonzero((np.abs(np.abs(tr) - 2.0) <= 1e-9) & (t.word_lengths > 0))
        found = []
        for k in para:
            m = t.disk_matrices[k]
            c = m[1, 0]
            if abs(c) < 1e-14:
                continue
            zeta = (m[0, 0] - m[1, 1]) / (2 * c)
            zeta = zeta / abs(zeta)
            ang = float(np.angle(zeta))
            if any(abs(_signed_angle(ang - f[0])) < 1e-9 for f in found):
                continue
            if len(mid) and (np.abs(_signed_angle(ang - mid)) < half - tol).any():
                continue
            through = np.abs(np.abs(zeta - self.centers) - self.radii) <= tol * np.maximum(1.0, self.radii)
            side = _signed_angle(mid - ang)
            right = np.flatnonzero(through & (side > 0))
            left = np.flatnonzero(through & (side < 0))
            if not len(right) or not len(left):
                continue
            a = right[np.argmax(self.radii[right])]
            b = left[np.argmax(self.radii[left])]
            found.append((ang, zeta, k, a, b))
        cusps = []
        for ang, zeta, k, a, b in sorted(found, key=lambda f: _wrap(f[0])):
            x0 = cayley_inv(zeta) if abs(zeta - 1) > 1e-12 else complex(np.inf)
            radii = []
            side_h = []
            for j in (a, b):
                C, R = self.centers[j], self.radii[j]
                th = math.atan(R)
                ends = np.exp(1j * (np.angle(C) + np.array([-th, th])))
                eta = ends[np.argmax(np.abs(ends - zeta))]
                x1 = cayley_inv(eta) if abs(eta - 1) > 1e-12 else complex(np.inf)
                r = abs(x1.real - x0.real) / 2 if np.isfinite(x0) and np.isfinite(x1) else math.inf
                radii.append(r)
                side_h.append(x1.real)
            # order: the side lying to the right of the cusp in H comes first
            if np.isfinite(x0) and side_h[0] < x0.real and side_h[1] > x0.real:
                a, b = b, a
                radii.reverse()
            cusps.append(Cusp(
                point=complex(zeta), angle=float(_wrap(ang)), parabolic_word=t.words[k],
                side_words=(t.words[self.indices[a]], t.words[self.indices[b]]),
                side_circles=((complex(self.centers[a]), float(self.radii[a])),
                              (complex(self.centers[b]), float(self.radii[b]))),
                halfplane_point=float(x0.real) if np.isfinite(x0) else math.inf,
                halfplane_radii=(float(radii[0]), float(radii[1])),
            ))
        return cusps

    def tile(self, word_or_index) -> Tile:
        i = self._index(word_or_index)
        return Tile(i, self.table.words[i], self.table.disk_map(i), self)

    def _index(self, word_or_index) -> int:
        if isinstance(word_or_index, (int, np.integer)):
            return int(word_or_index)
        i = self.table.index_of_word(word_or_index)
        if i is None:
            raise KeyError(f"word {word_or_index} not in table")
        return i

    def boundary_curves(self, resolution: float = 1e-6) -> list:
        """(center, radius, psi0, psi1) for every piece of the boundary of F_T."""
        curves = []
        for s in self._sides:
            for a, b in s.arcs:
                curves.append((s.center, s.radius, a, b))
        for a, b in self.infinite_boundary(resolution).arcs:
            curves.append((0j, 1.0, a, b))
        return curves

    def tile_boundary_length(self, word_or_index, n: int = 512, resolution: float = 1e-6) -> float:
        i = self._index(word_or_index)
        return float(self._lengths(np.array([i]), n, resolution)[0])

    def _lengths(self, idx, n, resolution, chunk: int = 64) -> np.ndarray:
        curves = self.boundary_curves(resolution)
        if not curves:
            return np.zeros(len(idx))
        pts_n, pts_2n = [], []
        for C, R, a, b in curves:
            pts_n.append(C + R * np.exp(1j * np.linspace(a, b, n + 1)))
            pts_2n.append(C + R * np.exp(1j * np.linspace(a, b, 2 * n + 1)))
        P1 = np.array(pts_n)
        P2 = np.array(pts_2n)
        out = np.empty(len(idx))
        m = self.table.disk_matrices
        for s in range(0, len(idx), chunk):
            mm = m[idx[s:s + chunk]]
            L1 = _polyline_lengths(mm, P1)
            L2 = _polyline_lengths(mm, P2)
            out[s:s + chunk] = (L2 + (L2 - L1) / 3.0).sum(axis=1)
        return out

    def length_sum_partials(self, max_depth: int | None = None, n: int = 256,
                            resolution: float = 1e-6) -> LengthSums:
        L = self.depth if max_depth is None else min(max_depth, int(self.table.word_lengths.max()))
        sel = np.flatnonzero(self.table.word_lengths <= L)
        lengths = self._lengths(sel, n, resolution)
        wl = self.table.word_lengths[sel]
        increments = [math.fsum(lengths[wl == k]) for k in range(L + 1)]
        partial = list(np.cumsum(increments))
        return LengthSums(list(range(L + 1)), [float(x) for x in partial], increments)

    def _argmin_locate(self, w, chunk: int = 1 << 22):
        m = self.table.disk_matrices
        a, b, c, d = m[:, 0, 0], m[:, 0, 1], m[:, 1, 0], m[:, 1, 1]
        out = np.zeros(w.shape, dtype=int)
        step = max(1, chunk // max(1, len(m)))
        for s in range(0, w.size, step):
            ww = w[s:s + step, None]
            mod = np.abs(d * ww - b) / np.abs(a - c * ww)
            out[s:s + step] = np.argmin(mod, axis=1)
        return out

    @cached_property
    def _base_tree(self):
        from scipy.spatial import cKDTree
        m = self.table.disk_matrices
        w = m[:, 0, 1] / m[:, 1, 1]
        return cKDTree(np.column_stack([w.real, w.imag]))

    def _reduce_locate(self, w, max_steps: int | None = None):
        """Push w into F_T by side pairings; return table indices (-1 if not found).

        A point still moving after ``max_steps`` (default 2 * depth + 2) sits in
        a tile beyond the enumeration and is given up on.
        """
        if max_steps is None:
            max_steps = 2 * self.table.max_word_len + 2
        sides = self.table.disk_matrices[self.indices]
        base_n = len(sides) + 1
        # paths are packed into int64 codes, digit k+1 per step
        max_steps = min(max_steps, int(62 / math.log2(base_n)))
        n = w.size
        code = np.zeros(n, dtype=np.int64)
        cur = w.copy()
        active = np.arange(n)
        for _ in range(max_steps):
            if not active.size:
                break
            ratio = np.abs(cur[active, None] - self.centers[None, :]) / self.radii[None, :]
            k = np.argmin(ratio, axis=1)
            move = ratio[np.arange(active.size), k] < 1.0 - 1e-12
            active, k = active[move], k[move]
            g = sides[k]
            x = cur[active]
            cur[active] = (g[:, 0, 0] * x + g[:, 0, 1]) / (g[:, 1, 0] * x + g[:, 1, 1])
            code[active] = code[active] * base_n + k + 1
        done = np.ones(n, bool)
        done[active] = False
        out = np.full(n, -1, dtype=int)
        uniq, inv_idx = np.unique(code[done], return_inverse=True)
        cache = self.__dict__.setdefault("_path_cache", {})
        found = np.empty(len(uniq), dtype=int)
        for i, c in enumerate(uniq.tolist()):
            if c not in cache:
                cache[c] = self._lookup_path(c, base_n, sides)
            found[i] = cache[c]
        out[done] = found[inv_idx.ravel()]
        return out

    def _lookup_path(self, code: int, base_n: int, sides) -> int:
        digits = []
        while code:
            code, r = divmod(code, base_n)
            digits.append(r - 1)
        H = np.eye(2, dtype=complex)
        for k in reversed(digits):
            H = sides[k] @ H
        # the tile element is H^-1
        g = np.array([[H[1, 1], -H[0, 1]], [-H[1, 0], H[0, 0]]])
        base = g[0, 1] / g[1, 1]
        _, j = self._base_tree.query([base.real, base.imag])
        cand = self.table.disk_matrices[j]
        scale = np.abs(cand).max()
        diff = min(np.abs(cand - g).max(), np.abs(cand + g).max())
        return int(j) if diff <= 1e-8 * scale else -1

    def locate(self, z, model: str = DISK, chunk: int = 1 << 22, fallback: bool = True):
        """Index of argmin |g^-1(z)| over the table, and a frontier flag.

        Points are first reduced into F_T by the side-pairing elements; the
        resulting element is looked up in the table.  Points whose element is
        not enumerated fall back to a direct argmin over the table, or get
        index -1 (flagged) when ``fallback`` is False.
        """
        w = np.atleast_1d(self.to_disk(z, model)).ravel()
        if len(self.table) <= 64 or not len(self.centers):
            out = self._argmin_locate(w, chunk)
        else:
            out = self._reduce_locate(w)
            miss = out < 0
            if miss.any() and fallback:
                out[miss] = self._argmin_locate(w[miss], chunk)
        flags = (self.table.frontier[out] & (self.table.word_lengths[out] > 0)) | (out < 0)
        shape = np.shape(z)
        if not shape:
            return int(out[0]), bool(flags[0])
        return out.reshape(shape), flags.reshape(shape)


def _polyline_lengths(mats, P):
    """Length of the image polylines of each row of P under each matrix."""
    a = mats[:, 0, 0, None, None]
    b = mats[:, 0, 1, None, None]
    c = mats[:, 1, 0, None, None]
    d = mats[:, 1, 1, None, None]
    W = (a * P[None] + b) / (c * P[None] + d)
    return np.abs(np.diff(W, axis=2)).sum(axis=2)


def _subtract_intervals(base, covered):
    """base minus the union of covered intervals; covered angles are relative
    to the middle of base and may wrap by 2pi."""
    lo, hi = base
    pieces = []
    for a, b in covered:
        for shift in (-TWO_PI, 0.0, TWO_PI):
            pieces.append((a + shift, b + shift))
    pieces.sort()
    out = []
    cur = lo
    for a, b in pieces:
        if b <= cur or a >= hi:
            continue
        if a > cur:
            out.append((cur, min(a, hi)))
        cur = max(cur, b)
        if cur >= hi:
            break
    if cur < hi:
        out.append((cur, hi))
    return out


def _complement_on_circle(mid, half, resolution):
    """Closed arcs of the unit circle not covered by the open arcs
    (mid - half, mid + half); gaps shorter than ``resolution`` are dropped."""
    if len(mid) == 0:
        return [(0.0, TWO_PI)]
    if (half >= math.pi).any():
        return []
    starts = _wrap(mid - half)
    order = np.argsort(starts, kind="stable")
    starts = starts[order]
    ends = starts + 2 * half[order]
    # sweep starting at the first start; track coverage up to start + 2pi
    origin = starts[0]
    merged = []
    cs, ce = starts[0], ends[0]
    for s, e in zip(starts[1:], ends[1:]):
        if s <= ce:
            ce = max(ce, e)
        else:
            merged.append((cs, ce))
            cs, ce = s, e
    merged.append((cs, ce))
    arcs = []
    for k, (s, e) in enumerate(merged):
        nxt = merged[k + 1][0] if k + 1 < len(merged) else origin + TWO_PI
        if e >= origin + TWO_PI and k + 1 == len(merged):
            # last block wraps over the origin
            break
        if nxt - e >= resolution:
            arcs.append((float(e), float(nxt)))
    # a final block that wraps may cover the first gap(s)
    last_end = merged[-1][1]
    if last_end > origin + TWO_PI:
        arcs = [(max(a, last_end - TWO_PI), b) for a, b in arcs if b > last_end - TWO_PI]
        arcs = [(a, b) for a, b in arcs if b - a >= resolution]
    return arcs
