"""Beltrami coefficients, regions, the compatibility law and invariant extension.

A field is a callable ``mu(z)`` on one model (disk or half-plane) with a
known bound ``sup_norm < 1``.  Fields also report their discontinuity curves
(``edges``) so adaptive quadrature can refine along them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .circles import CircleSet, disk_image
from .fundomain import FundamentalDomainView
from .group import OrbitTable
from .moebius import (
    CAYLEY, CAYLEY_INV, DISK, HALFPLANE, MoebiusMap, cayley, cayley_inv,
    cayley_inv_derivative,
)


# -- regions ---------------------------------------------------------------

class Region:
    model: str = DISK

    def contains(self, z) -> np.ndarray:
        raise NotImplementedError

    def edges(self) -> CircleSet:
        return CircleSet()

    def bounding_disk(self):
        return None

    def describe(self) -> str:
        return type(self).__name__


@dataclass(frozen=True)
class Everywhere(Region):
    model: str = DISK

    def contains(self, z):
        return np.ones(np.shape(z), bool)


@dataclass(frozen=True)
class Ball(Region):
    center: complex
    radius: float
    model: str = DISK

    def contains(self, z):
        return np.abs(np.asarray(z) - self.center) < self.radius

    def edges(self):
        return CircleSet.circles([self.center], [self.radius])

    def bounding_disk(self):
        return complex(self.center), float(self.radius)

    def describe(self):
        return f"ball({self.center:.6g}, {self.radius:.6g})"


@dataclass(frozen=True)
class BallUnion(Region):
    centers: tuple
    radius: float
    model: str = HALFPLANE

    def contains(self, z):
        z = np.asarray(z)
        c = np.asarray(self.centers, dtype=complex)
        if c.size == 0:
            return np.zeros(z.shape, bool)
        return (np.abs(z[..., None] - c) < self.radius).any(axis=-1)

    def edges(self):
        return CircleSet.circles(list(self.centers), [self.radius] * len(self.centers))

    def bounding_disk(self):
        c = np.asarray(self.centers, dtype=complex)
        mid = (c.real.min() + c.real.max()) / 2 + 1j * (c.imag.min() + c.imag.max()) / 2
        return complex(mid), float(np.abs(c - mid).max() + self.radius)

    def describe(self):
        return f"union of {len(self.centers)} balls of radius {self.radius:.6g}"


@dataclass(frozen=True)
class DomainRegion(Region):
    """Characteristic function of the truncated Dirichlet domain F_T."""

    view: FundamentalDomainView
    model: str = DISK

    def contains(self, z):
        return np.asarray(self.view.membership(z, self.model))

    def edges(self):
        return self.view.edges_in(self.model)

    def describe(self):
        return f"F (depth {self.view.depth})"


@dataclass(frozen=True)
class Intersection(Region):
    parts: tuple

    @property
    def model(self):
        return self.parts[0].model

    def contains(self, z):
        out = self.parts[0].contains(z)
        for p in self.parts[1:]:
            out = out & p.contains(z)
        return out

    def edges(self):
        out = CircleSet()
        for p in self.parts:
            out = out + p.edges()
        return out

    def bounding_disk(self):
        disks = [p.bounding_disk() for p in self.parts if p.bounding_disk() is not None]
        return min(disks, key=lambda d: d[1]) if disks else None

    def describe(self):
        return " & ".join(p.describe() for p in self.parts)


# -- fields ----------------------------------------------------------------

class BeltramiField:
    model: str = DISK
    sup_norm: float = 0.0

    def __call__(self, z) -> np.ndarray:
        raise NotImplementedError

    def evaluate(self, z):
        out = self(np.asarray(z, dtype=complex))
        return complex(out) if np.ndim(out) == 0 else out

    def edges(self) -> CircleSet:
        return CircleSet()

    def support_disk(self):
        """A disk (center, radius) containing the support, if bounded."""
        return None

    @property
    def is_zero(self) -> bool:
        return self.sup_norm == 0.0

    def describe(self) -> str:
        return type(self).__name__


def _check_norm(c):
    if abs(c) >= 1:
        raise ValueError(f"Beltrami coefficients need sup norm < 1, got {abs(c)}")


@dataclass(frozen=True)
class ZeroField(BeltramiField):
    model: str = DISK
    modulus_piecewise_constant = True

    @property
    def sup_norm(self):
        return 0.0

    def __call__(self, z):
        return np.zeros(np.shape(z), complex)

    def support_disk(self):
        return 0j, 0.0

    def describe(self):
        return "zero"


@dataclass(frozen=True)
class ConstantField(BeltramiField):
    """The same value c at every point of the model."""

    c: complex
    model: str = DISK
    modulus_piecewise_constant = True

    def __post_init__(self):
        _check_norm(self.c)

    @property
    def sup_norm(self):
        return abs(self.c)

    def __call__(self, z):
        return np.full(np.shape(z), complex(self.c))

    def describe(self):
        return f"constant({self.c})"


@dataclass(frozen=True)
class ConstantOnRegion(BeltramiField):
    c: complex
    region: Region
    model: str = DISK
    modulus_piecewise_constant = True

    def __post_init__(self):
        _check_norm(self.c)

    @property
    def sup_norm(self):
        return abs(self.c)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.where(self.region.contains(z), complex(self.c), 0j)

    def edges(self):
        return self.region.edges()

    def support_disk(self):
        return self.region.bounding_disk()

    def describe(self):
        return f"{self.c} on {self.region.describe()}"


@dataclass(frozen=True)
class PowerDecay(BeltramiField):
    """z -> c (1 - |z|^2)^alpha on the disk."""

    c: complex
    alpha: float
    model: str = DISK

    def __post_init__(self):
        _check_norm(self.c)
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.model != DISK:
            raise ValueError("power_decay lives on the disk")

    @property
    def sup_norm(self):
        return abs(self.c)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self.c * np.maximum(1.0 - np.abs(z) ** 2, 0.0) ** self.alpha

    def describe(self):
        return f"power_decay({self.c}, {self.alpha})"


@dataclass(frozen=True, eq=False)
class GridField(BeltramiField):
    """Piecewise-linear interpolation of scattered samples, zero outside their hull."""

    points: np.ndarray
    values: np.ndarray
    model: str = DISK

    def __post_init__(self):
        from scipy.interpolate import LinearNDInterpolator
        if np.abs(self.values).max(initial=0.0) >= 1:
            raise ValueError("sampled values must have modulus < 1")
        pts = np.column_stack([self.points.real, self.points.imag])
        object.__setattr__(self, "_interp", LinearNDInterpolator(pts, self.values, fill_value=0.0))

    @classmethod
    def from_file(cls, path, model: str = DISK) -> "GridField":
        data = np.loadtxt(path, ndmin=2)
        if data.shape[1] != 4:
            raise ValueError("grid files have four columns: x y Re(mu) Im(mu)")
        return cls(data[:, 0] + 1j * data[:, 1], data[:, 2] + 1j * data[:, 3], model)

    @property
    def sup_norm(self):
        return float(np.abs(self.values).max(initial=0.0))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self._interp(z.real, z.imag).astype(complex)

    def support_disk(self):
        mid = self.points.mean()
        return complex(mid), float(np.abs(self.points - mid).max())

    def describe(self):
        return f"grid({len(self.points)} samples)"


def _cocycle(mats, z):
    """conj(h'(z))/h'(z) for det-1 matrices h, i.e. (cz+d)^2 / conj(cz+d)^2."""
    q = mats[..., 1, 0] * z + mats[..., 1, 1]
    return (q / np.conj(q)) ** 2


class InvariantExtension(BeltramiField):
    """Group-compatible extension of a field given on the fundamental domain.

    At a point z located in the tile gamma(F) the value is
    ``mu_F(w) * conj(h'(z)) / h'(z)`` with ``h = gamma^-1`` and ``w = h(z)``,
    which makes the compatibility law hold for table elements.  With
    ``literal=True`` the derivative factor is dropped.  Points whose pullback
    misses F_T (beyond the enumerated tiles) evaluate to 0 and are counted in
    ``truncation_events``.
    """

    def __init__(self, base: BeltramiField, table: OrbitTable,
                 view: FundamentalDomainView | None = None, literal: bool = False):
        self.base = base
        self.table = table
        self.view = view or FundamentalDomainView(table)
        self.literal = literal
        self.model = base.model
        if self.model == DISK:
            self.mats = table.disk_matrices
        elif table.model == HALFPLANE:
            self.mats = table.matrices
        else:
            self.mats = np.array([CAYLEY_INV @ m @ CAYLEY for m in table.matrices])
            self.mats = self.mats / np.sqrt(np.linalg.det(self.mats))[:, None, None]
        self.inverse_mats = np.stack([
            np.stack([self.mats[:, 1, 1], -self.mats[:, 0, 1]], -1),
            np.stack([-self.mats[:, 1, 0], self.mats[:, 0, 0]], -1)], -2)
        self.truncation_events = 0
        self.frontier_events = 0
        self._edges = None
        self.modulus_piecewise_constant = getattr(base, "modulus_piecewise_constant", False)

    @property
    def sup_norm(self):
        return self.base.sup_norm

    def locate(self, z):
        # points whose tile is not enumerated come back as -1
        return self.view.locate(z, self.model, fallback=False)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        if self.base.is_zero:
            return np.zeros(z.shape, complex)
        flat = z.ravel()
        idx, flags = self.locate(flat)
        known = idx >= 0
        h = self.inverse_mats[np.where(known, idx, 0)]
        w = (h[:, 0, 0] * flat + h[:, 0, 1]) / (h[:, 1, 0] * flat + h[:, 1, 1])
        inside = np.asarray(self.view.membership(w, self.model)) & known
        val = np.where(inside, self.base(w), 0j)
        if not self.literal:
            val = val * _cocycle(h, flat)
        self.truncation_events += int((~inside).sum())
        self.frontier_events += int(flags.sum())
        return val.reshape(z.shape)

    def _base_inside_F(self) -> bool:
        sd = self.base.support_disk()
        if sd is None:
            return False
        c, r = sd
        if self.model == HALFPLANE:
            if c.imag - r <= 0:
                return False
            c, r = disk_image(CAYLEY, c, r)
        vc, vr = self.view.centers, self.view.radii
        return bool(np.all(np.abs(c - vc) >= vr + r)) and abs(c) + r < 1

    def edges(self) -> CircleSet:
        if self._edges is None:
            base_edges = self.base.edges()
            if not self._base_inside_F():
                base_edges = base_edges + self.view.edges_in(self.model)
            self._edges = base_edges.image(self.mats) if len(base_edges) else CircleSet()
        return self._edges

    def support_disk(self):
        return None

    def describe(self):
        return f"invariant extension of [{self.base.describe()}] (depth {self.table.max_word_len})"


class CayleyPullback(BeltramiField):
    """Transport of a half-plane field to the disk through kappa(z)=(z-i)/(z+i)."""

    def __init__(self, field_h: BeltramiField):
        if field_h.model != HALFPLANE:
            raise ValueError("cayley_pullback expects a half-plane field")
        self.source = field_h
        self.model = DISK
        self._edges = None
        self.modulus_piecewise_constant = getattr(field_h, "modulus_piecewise_constant", False)

    @property
    def sup_norm(self):
        return self.source.sup_norm

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        dk = cayley_inv_derivative(w)
        return self.source(cayley_inv(w)) * np.conj(dk) / dk

    def edges(self):
        if self._edges is None:
            self._edges = self.source.edges().image(CAYLEY)
        return self._edges

    def describe(self):
        return f"cayley pullback of [{self.source.describe()}]"


class CayleyPushforward(BeltramiField):
    """Inverse of CayleyPullback: a disk field seen on the half-plane."""

    def __init__(self, field_d: BeltramiField):
        if field_d.model != DISK:
            raise ValueError("cayley_pushforward expects a disk field")
        self.source = field_d
        self.model = HALFPLANE

    @property
    def sup_norm(self):
        return self.source.sup_norm

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        dk = 2j / (z + 1j) ** 2
        return self.source(cayley(z)) * np.conj(dk) / dk

    def edges(self):
        return self.source.edges().image(CAYLEY_INV)


def cayley_pullback(field_h: BeltramiField) -> CayleyPullback:
    return CayleyPullback(field_h)


def invariant_extension(base: BeltramiField, table: OrbitTable, literal: bool = False,
                        view: FundamentalDomainView | None = None) -> InvariantExtension:
    return InvariantExtension(base, table, view=view, literal=literal)


def compatibility_residual(mu: BeltramiField, g: MoebiusMap, z):
    """|mu(z) - mu(g(z)) conj(g'(z)) / g'(z)|."""
    z = np.asarray(z, dtype=complex)
    gp = g.derivative(z)
    out = np.abs(mu(z) - mu(g(z)) * np.conj(gp) / gp)
    return float(out) if out.ndim == 0 else out


def locate(z, table_or_view, model: str | None = None):
    """Word of the tile containing z (argmin |g^-1 z|) and a frontier flag."""
    view = table_or_view if isinstance(table_or_view, FundamentalDomainView) \
        else FundamentalDomainView(table_or_view)
    model = model or view.model
    idx, flag = view.locate(z, model)
    if np.ndim(idx) == 0:
        return view.table.words[idx], flag
    return [view.table.words[i] for i in np.ravel(idx)], flag


def sector_field(c: complex, view: FundamentalDomainView, cusp_points: Sequence[float],
                 ball_radius: float = 1.0) -> ConstantOnRegion:
    """The half-plane field c on B* = (union of B(zeta_n, R)) intersected with F."""
    region = Intersection((BallUnion(tuple(complex(x) for x in cusp_points), ball_radius, HALFPLANE),
                           DomainRegion(view, HALFPLANE)))
    return ConstantOnRegion(c, region, HALFPLANE)


@dataclass(frozen=True)
class UnitDensity(BeltramiField):
    """Constant density 1 on a region; used for area computations only."""

    region: Region = field(default_factory=Everywhere)
    model: str = DISK
    modulus_piecewise_constant = True

    @property
    def sup_norm(self):
        return 1.0

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.where(self.region.contains(z), 1.0 + 0j, 0j)

    def edges(self):
        return self.region.edges()
