"""Generalized circles: Möbius images and proximity tests against small disks."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

_EMPTY_C = np.zeros(0, dtype=complex)
_EMPTY_R = np.zeros(0)


@dataclass(frozen=True)
class CircleSet:
    """A batch of circles plus a batch of straight lines.

    Lines are stored as a point on the line and a unit normal.
    """

    centers: np.ndarray = field(default_factory=lambda: _EMPTY_C)
    radii: np.ndarray = field(default_factory=lambda: _EMPTY_R)
    line_points: np.ndarray = field(default_factory=lambda: _EMPTY_C)
    line_normals: np.ndarray = field(default_factory=lambda: _EMPTY_C)

    def __len__(self):
        return len(self.centers) + len(self.line_points)

    @classmethod
    def circles(cls, centers, radii) -> "CircleSet":
        return cls(np.atleast_1d(np.asarray(centers, dtype=complex)).ravel(),
                   np.atleast_1d(np.asarray(radii, dtype=float)).ravel())

    def __add__(self, other: "CircleSet") -> "CircleSet":
        return CircleSet(np.concatenate([self.centers, other.centers]),
                         np.concatenate([self.radii, other.radii]),
                         np.concatenate([self.line_points, other.line_points]),
                         np.concatenate([self.line_normals, other.line_normals]))

    def select(self, mask_circles, mask_lines=None) -> "CircleSet":
        if mask_lines is None:
            mask_lines = np.ones(len(self.line_points), bool)
        return CircleSet(self.centers[mask_circles], self.radii[mask_circles],
                         self.line_points[mask_lines], self.line_normals[mask_lines])

    def near_disk(self, center: complex, radius: float) -> "CircleSet":
        """Members that meet the closed disk D(center, radius)."""
        dist = np.abs(self.centers - center)
        mc = (dist <= self.radii + radius) & (dist >= self.radii - radius)
        ml = np.abs(((center - self.line_points) * np.conj(self.line_normals)).real) <= radius
        return self.select(mc, ml)

    def crosses(self, z, rho, chunk: int = 1 << 22) -> np.ndarray:
        """For each small disk D(z_k, rho_k): does any member pass through it?"""
        z = np.asarray(z, dtype=complex).ravel()
        rho = np.broadcast_to(np.asarray(rho, dtype=float), z.shape)
        out = np.zeros(z.shape, bool)
        if len(self) == 0 or z.size == 0:
            return out
        n_members = max(len(self.centers), 1)
        step = max(1, chunk // n_members)
        for s in range(0, z.size, step):
            zz = z[s:s + step, None]
            rr = rho[s:s + step, None]
            hit = np.zeros(zz.shape[0], bool)
            if len(self.centers):
                gap = np.abs(np.abs(zz - self.centers[None, :]) - self.radii[None, :])
                hit |= (gap <= rr).any(axis=1)
            if len(self.line_points):
                gap = np.abs(((zz - self.line_points[None, :]) * np.conj(self.line_normals[None, :])).real)
                hit |= (gap <= rr).any(axis=1)
            out[s:s + step] = hit
        return out

    def image(self, m, anticonformal: bool = False) -> "CircleSet":
        """Image under the map with matrix ``m`` (a single 2x2 or a stack)."""
        m = np.asarray(m, dtype=complex)
        if m.ndim == 2:
            m = m[None]
        parts = [_image_one(self, mm, anticonformal) for mm in m]
        if not parts:
            return CircleSet()
        out = parts[0]
        for p in parts[1:]:
            out = out + p
        return out


def _mobius(m, z):
    return (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])


def _image_one(cs: CircleSet, m, anticonformal: bool) -> CircleSet:
    centers, radii = cs.centers, cs.radii
    lp, ln = cs.line_points, cs.line_normals
    if anticonformal:
        centers, lp, ln = np.conj(centers), np.conj(lp), np.conj(ln)
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    det = a * d - b * c
    scale = max(abs(a), abs(b), abs(c), abs(d))
    out_c, out_r, out_lp, out_ln = [], [], [], []
    if abs(c) <= 1e-15 * scale:
        k = a / d
        out_c.append(k * centers + b / d)
        out_r.append(np.abs(k) * radii)
        out_lp.append(k * lp + b / d)
        out_ln.append(ln * k / np.abs(k))
        return CircleSet(*(np.concatenate(x) for x in (out_c, out_r, out_lp, out_ln)))
    pole = -d / c
    # circles: w = a/c - det/(c^2 (z - pole)); invert z - pole first
    q = centers - pole
    denom = np.abs(q) ** 2 - radii ** 2
    through = np.abs(denom) <= 1e-12 * np.maximum(radii ** 2, 1e-300)
    ok = ~through
    u_center = np.conj(q[ok]) / denom[ok]
    u_radius = radii[ok] / np.abs(denom[ok])
    k = -det / c ** 2
    out_c.append(a / c + k * u_center)
    out_r.append(np.abs(k) * u_radius)
    if through.any():
        # circle through the pole maps to a line: map two other points
        cc, rr = centers[through], radii[through]
        dirn = (cc - pole) / np.abs(cc - pole)
        p1 = _mobius(m, cc + rr * dirn)
        p2 = _mobius(m, cc + 1j * rr * dirn)
        t = (p2 - p1) / np.abs(p2 - p1)
        out_lp.append(p1)
        out_ln.append(1j * t)
    if len(lp):
        on_line = np.abs(((pole - lp) * np.conj(ln)).real) <= 1e-12 * max(1.0, abs(pole))
        # lines not through the pole become circles through a/c
        tang = 1j * ln
        for p, t, thr in zip(lp, tang, on_line):
            pts = np.array([p - t, p, p + t])
            if thr:
                w = _mobius(m, pts[[0, 2]])
                tt = (w[1] - w[0]) / abs(w[1] - w[0])
                out_lp.append(np.array([w[0]]))
                out_ln.append(np.array([1j * tt]))
            else:
                w = _mobius(m, pts)
                cen, rad = circumcircle(w[0], w[1], w[2])
                out_c.append(np.array([cen]))
                out_r.append(np.array([rad]))
    cat = lambda xs, dt: np.concatenate(xs) if xs else np.zeros(0, dtype=dt)
    return CircleSet(cat(out_c, complex), cat(out_r, float), cat(out_lp, complex), cat(out_ln, complex))


def circumcircle(z1, z2, z3):
    """Center and radius of the circle through three points (vectorized)."""
    z1, z2, z3 = (np.asarray(v, dtype=complex) for v in (z1, z2, z3))
    w = (z3 - z1) / (z2 - z1)
    # center relative to z1 in units of (z2 - z1)
    cen = (w - np.abs(w) ** 2) / (2j * w.imag)
    center = z1 + (z2 - z1) * cen
    radius = np.abs(center - z1)
    return center, radius


def disk_image(m, center, radius, anticonformal: bool = False):
    """Image of disks D(center, radius) (not containing the pole) under ``m``.

    Returns (center, radius) arrays of the image disks.
    """
    m = np.asarray(m, dtype=complex)
    center = np.asarray(center, dtype=complex)
    radius = np.asarray(radius, dtype=float)
    if anticonformal:
        center = np.conj(center)
    a, b, c, d = m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1]
    det = a * d - b * c
    small = np.abs(c) <= 1e-15 * np.maximum(np.abs(a), np.abs(d))
    with np.errstate(divide="ignore", invalid="ignore"):
        pole = -d / c
        q = center - pole
        denom = np.abs(q) ** 2 - radius ** 2
        k = -det / c ** 2
        ic = a / c + k * np.conj(q) / denom
        ir = np.abs(k) * radius / np.abs(denom)
    lin_c = (a * center + b) / d
    lin_r = np.abs(a / d) * radius
    return np.where(small, lin_c, ic), np.where(small, lin_r, ir)


def circle_intersections(c1, r1, c2, r2):
    """Intersection points of circle pairs (broadcast); nan where they miss."""
    c1, c2 = np.asarray(c1, dtype=complex), np.asarray(c2, dtype=complex)
    r1, r2 = np.asarray(r1, dtype=float), np.asarray(r2, dtype=float)
    dvec = c2 - c1
    dist = np.abs(dvec)
    with np.errstate(divide="ignore", invalid="ignore"):
        a = (dist ** 2 + r1 ** 2 - r2 ** 2) / (2 * dist)
        h = np.sqrt(r1 ** 2 - a ** 2)
        unit = dvec / dist
    ok = (dist > 0) & (dist <= r1 + r2) & (dist >= np.abs(r1 - r2))
    base = c1 + a * unit
    p1 = np.where(ok, base + 1j * h * unit, np.nan)
    p2 = np.where(ok, base - 1j * h * unit, np.nan)
    return p1, p2


def line_circle_intersections(p, n, c, r):
    """Intersections of lines (point p, unit normal n) with circles (broadcast)."""
    p, n, c = (np.asarray(x, dtype=complex) for x in (p, n, c))
    tang = 1j * n
    # z = p + s * tang; |z - c| = r
    q = p - c
    b = (q * np.conj(tang)).real
    disc = b * b - (np.abs(q) ** 2 - r ** 2)
    with np.errstate(invalid="ignore"):
        root = np.sqrt(disc)
    ok = disc >= 0
    return (np.where(ok, p + (-b + root) * tang, np.nan),
            np.where(ok, p + (-b - root) * tang, np.nan))


def intersection_points(cs: "CircleSet", other: "CircleSet | None" = None, max_pairs: int = 250_000):
    """All pairwise intersection points of members of ``cs`` (or of cs with other)."""
    pts = []
    if other is None:
        n = len(cs.centers)
        if 0 < n and n * n <= max_pairs:
            i, j = np.triu_indices(n, 1)
            pts += circle_intersections(cs.centers[i], cs.radii[i], cs.centers[j], cs.radii[j])
        if len(cs.line_points) and n and n * len(cs.line_points) <= max_pairs:
            pts += line_circle_intersections(cs.line_points[:, None], cs.line_normals[:, None],
                                             cs.centers[None, :], cs.radii[None, :])
    else:
        n, m = len(cs.centers), len(other.centers)
        if n and m and n * m <= max_pairs:
            pts += circle_intersections(cs.centers[:, None], cs.radii[:, None],
                                        other.centers[None, :], other.radii[None, :])
        if len(cs.line_points) and m:
            pts += line_circle_intersections(cs.line_points[:, None], cs.line_normals[:, None],
                                             other.centers[None, :], other.radii[None, :])
    if not pts:
        return np.zeros(0, dtype=complex)
    out = np.concatenate([np.ravel(p) for p in pts])
    return out[np.isfinite(out)]
