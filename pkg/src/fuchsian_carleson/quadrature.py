"""Adaptive integration of |mu|^2 * weight over boundary caps B(xi, r).

The cap is parametrized by the distance to the model boundary ``d`` (disk:
``1 - |z|``, half-plane: ``Im z``) and a normalized transverse coordinate
``t in [-1, 1]``.  The range of ``d`` is cut into dyadic layers
``[r 2^-(k+1), r 2^-k]``; each layer is integrated by adaptive cell
refinement with a 16-point Gauss stencil, and the sequence of layer
increments decides convergence or divergence at the boundary.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .beltrami import BeltramiField, DomainRegion, Region
from .circles import CircleSet, disk_image, intersection_points
from .fundomain import FundamentalDomainView
from .moebius import DISK, HALFPLANE

WEIGHTS = {
    "disk_carleson": DISK,
    "halfplane_carleson": HALFPLANE,
    "halfplane_area": HALFPLANE,
}

DIVERGENCE_THRESHOLD = 0.75
DIVERGENCE_RUN = 4

_GX, _GW = np.polynomial.legendre.leggauss(8)
_PX, _PW = np.polynomial.legendre.leggauss(6)
_T_GRID = np.linspace(-1.0, 1.0, 9)


@dataclass(frozen=True)
class CarlesonQuery:
    xi: complex
    r: float
    weight: str = "disk_carleson"
    restriction: Region | None = None

    def __post_init__(self):
        if self.weight not in WEIGHTS:
            raise ValueError(f"unknown weight {self.weight!r}; choose from {sorted(WEIGHTS)}")
        xi = complex(self.xi)
        object.__setattr__(self, "xi", xi)
        if self.model == DISK:
            if abs(abs(xi) - 1) > 1e-10:
                raise ValueError(f"xi={xi} is not on the unit circle")
            if not 0 < self.r <= 2:
                raise ValueError("disk caps need 0 < r <= 2")
        else:
            if abs(xi.imag) > 1e-10:
                raise ValueError(f"xi={xi} is not on the real axis")
            object.__setattr__(self, "xi", complex(xi.real, 0.0))
            if not 0 < self.r <= 1:
                raise ValueError("half-plane caps need 0 < r <= 1")
        if self.restriction is not None and self.restriction.model != self.model:
            raise ValueError("restriction lives in a different model")

    @property
    def model(self) -> str:
        return WEIGHTS[self.weight]


@dataclass
class IntegralResult:
    value: float
    error_estimate: float
    refinement_levels: int
    diverged: bool
    growth_per_level: float
    increments: tuple = ()
    n_evaluations: int = 0
    budget_exhausted: bool = False

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "error_estimate": self.error_estimate,
            "refinement_levels": self.refinement_levels,
            "diverged": self.diverged,
            "growth_per_level": self.growth_per_level,
        }


# -- sweep engine ----------------------------------------------------------
#
# A region is swept by one-parameter families of curves ("lines") indexed by
# u, each parametrized by t in [-1, 1].  Two families occur:
#   circular:   z = C + s(u) exp(i (phi0 + alpha(u) t))
#   horizontal: z = x0 + beta(u) t + i u
# Edge curves (circles and straight lines) cross each line at points known in
# closed form, so the transverse integral is split there and every piece sees
# a constant indicator.  The u-integral is adaptive Gauss-Legendre with
# breakpoints where a line becomes tangent to an edge.

@dataclass
class _Sweep:
    kind: str
    center: complex
    jw: Callable                # u -> jacobian * weight depending on u only
    density: Callable           # z -> |mu|^2
    indicator: Callable | None  # z -> bool, constant between edge crossings
    edges: CircleSet
    constant_density: bool = False
    point_weight: Callable | None = None
    radius: Callable | None = None   # circular: s(u)
    half_angle: Callable | None = None  # circular: alpha(u)
    phi0: float = 0.0
    half_width: Callable | None = None  # horizontal: beta(u)
    gap: Callable | None = None         # circular: s(u) - D computed without cancellation

    def points(self, u, t):
        if self.kind == "circular":
            return self.center + self.radius(u) * np.exp(1j * (self.phi0 + self.half_angle(u) * t))
        return self.center.real + self.half_width(u) * t + 1j * u

    def relevant_edges(self, u) -> CircleSet:
        """Edges meeting at least one of the lines u."""
        e = self.edges
        if self.kind == "circular":
            lv = self.radius(u)
            D = np.abs(e.centers - self.center)
            lo, hi = np.abs(D - e.radii), D + e.radii
        else:
            lv = u
            lo, hi = e.centers.imag - e.radii, e.centers.imag + e.radii
        m = (hi >= lv.min() - 1e-15) & (lo <= lv.max() + 1e-15)
        return e.select(m)

    def crossings(self, u, e: CircleSet | None = None):
        """Transverse parameters t in (-1, 1) where line u meets an edge (nan-padded)."""
        u = np.asarray(u, float)[:, None]
        e = self.edges if e is None else e
        cols = []
        if self.kind == "circular":
            s = self.radius(u)
            alpha = self.half_angle(u)
            q = e.centers[None, :] - self.center
            D = np.abs(q)
            R = e.radii[None, :]
            delta = self.gap(u, D) if self.gap is not None else s - D
            # half-angle 2 arcsin(sqrt((R-delta)(R+delta) / (4 s D))): no cancellation
            # for small circles close to the swept ring
            with np.errstate(divide="ignore", invalid="ignore"):
                h2 = (R - delta) * (R + delta) / (4 * s * D)
            ang = 2 * np.arcsin(np.sqrt(np.where((h2 >= 0) & (h2 <= 1), h2, np.nan)))
            base = np.angle(q)
            phis = [base + ang, base - ang]
            if len(e.line_points):
                with np.errstate(divide="ignore", invalid="ignore"):
                    lam = ((e.line_points - self.center) * np.conj(e.line_normals)).real[None, :] / s
                lang = np.arccos(np.where(np.abs(lam) <= 1, lam, np.nan))
                nb = np.angle(e.line_normals)[None, :]
                phis += [nb + lang, nb - lang]
            for ph in phis:
                w = np.angle(np.exp(1j * (ph - self.phi0)))
                with np.errstate(divide="ignore", invalid="ignore"):
                    cols.append(w / alpha)
        else:
            beta = self.half_width(u)
            dy = u - e.centers.imag[None, :]
            h = np.sqrt(np.where(e.radii[None, :] ** 2 >= dy * dy, e.radii[None, :] ** 2 - dy * dy, np.nan))
            x0 = self.center.real
            with np.errstate(divide="ignore", invalid="ignore"):
                cols.append((e.centers.real[None, :] + h - x0) / beta)
                cols.append((e.centers.real[None, :] - h - x0) / beta)
                if len(e.line_points):
                    nx, ny = e.line_normals.real, e.line_normals.imag
                    px, py = e.line_points.real, e.line_points.imag
                    xl = np.where(np.abs(nx) > 1e-15, px - (u - py) * ny / nx, np.nan)
                    cols.append((xl - x0) / beta)
        if not cols:
            return np.zeros((len(u), 0))
        t = np.concatenate(cols, axis=1)
        return np.where(np.abs(t) < 1, t, np.nan)

    corners: np.ndarray | None = None   # points where the integrand has kinks

    def corner_levels(self):
        if self.corners is None or len(self.corners) == 0:
            return np.zeros(0)
        if self.kind == "circular":
            return np.abs(self.corners - self.center)
        return self.corners.imag

    def tangency_levels(self):
        e = self.edges
        if self.kind == "circular":
            D = np.abs(e.centers - self.center)
            lv = [D + e.radii, np.abs(D - e.radii)]
            lv.append(np.abs(((e.line_points - self.center) * np.conj(e.line_normals)).real))
        else:
            lv = [e.centers.imag + e.radii, e.centers.imag - e.radii]
        return np.concatenate(lv)

    def inner(self, u, chunk_entries: int = 2_000_000):
        """Transverse integral at each u, times jw(u)."""
        u = np.asarray(u, float)
        if len(self.edges) == 0:
            return self._inner(u, self.edges)
        out = np.empty(len(u))
        step = max(16, chunk_entries // (2 * len(self.edges) + 16))
        for i in range(0, len(u), step):
            uu = u[i:i + step]
            out[i:i + step] = self._inner(uu, self.relevant_edges(uu))
        return out

    def _inner(self, u, edges: CircleSet):
        n = len(u)
        cr = self.crossings(u, edges) if len(edges) else np.zeros((n, 0))
        grid = np.broadcast_to(_T_GRID, (n, len(_T_GRID)))
        bps = np.concatenate([grid, np.where(np.isnan(cr), 1.0, cr)], axis=1)
        bps.sort(axis=1)
        a, b = bps[:, :-1], bps[:, 1:]
        keep = b - a > 1e-15
        row = np.broadcast_to(np.arange(n)[:, None], a.shape)[keep]
        a, b = a[keep], b[keep]
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        live = np.ones(len(a), bool)
        if self.indicator is not None:
            live = np.asarray(self.indicator(self.points(u[row], mid)), bool)
        vals = np.zeros(len(a))
        if live.any():
            ur, al, hl = u[row[live]], mid[live], half[live]
            if self.constant_density and self.point_weight is None:
                vals[live] = 2 * hl * self.density(self.points(ur, al))
            else:
                tt = al[:, None] + hl[:, None] * _PX
                z = self.points(ur[:, None], tt)
                f = self.density(z)
                if self.point_weight is not None:
                    f = f * self.point_weight(z)
                vals[live] = hl * (f @ _PW)
        out = np.bincount(row, vals, minlength=n)
        return out * self.jw(u)


def _gauss(sweep: _Sweep, A, B, a, b):
    """Gauss rule on [a, b] in s, where u = A + (B - A)(1 - cos(pi s)) / 2.

    Tangency levels sit at the ends of [A, B], where the inner integral has
    square-root behaviour; the cosine map makes it smooth in s.
    """
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    s = mid[:, None] + half[:, None] * _GX
    width = (B - A)[:, None]
    u = A[:, None] + 0.5 * width * (1.0 - np.cos(np.pi * s))
    du = 0.5 * np.pi * width * np.sin(np.pi * s)
    g = sweep.inner(u.ravel()).reshape(u.shape) * du
    return half * (g @ _GW), u.size


def _sweep_integral(sweep: _Sweep, lo: float, hi: float, tol: float, extra_breaks=(),
                    max_rounds: int = 60, max_intervals: int = 20_000):
    """Adaptive integral of sweep.inner over [lo, hi] to absolute tolerance tol.

    Intervals are bisected in breadth-first rounds, so the result does not
    depend on any scheduling.  Returns (value, error, n_lines, exhausted).
    """
    brk = np.concatenate([[lo, hi], np.asarray(extra_breaks, float),
                          sweep.tangency_levels() if len(sweep.edges) else [],
                          sweep.corner_levels()])
    brk = brk[np.isfinite(brk) & (brk >= lo) & (brk <= hi)]
    brk = np.unique(brk)
    if len(brk) > 1:
        gaps = np.diff(brk)
        brk = np.concatenate([[brk[0]], brk[1:][gaps > 1e-13 * max(hi, 1e-300)]])
        brk[-1] = hi
    # each piece [A, B] between breakpoints is refined in its own s in [0, 1]
    A, B = brk[:-1], brk[1:]
    a, b = np.zeros(len(A)), np.ones(len(A))
    total = hi - lo
    Q, n_lines = _gauss(sweep, A, B, a, b)
    parts, errs = [], []
    exhausted = False
    for rnd in range(max_rounds):
        if len(a) == 0:
            break
        m = 0.5 * (a + b)
        ca = np.concatenate([a, m])
        cb = np.concatenate([m, b])
        Qc, n = _gauss(sweep, np.concatenate([A, A]), np.concatenate([B, B]), ca, cb)
        n_lines += n
        k = len(a)
        S = Qc[:k] + Qc[k:]
        diff = np.abs(Q - S)
        accept = diff <= tol * (b - a) * (B - A) / total
        if rnd == max_rounds - 1 or 2 * int((~accept).sum()) > max_intervals:
            exhausted = not accept.all()
            accept[:] = True
        parts.append(S[accept])
        errs.append(diff[accept])
        todo = ~accept
        A = np.concatenate([A[todo], A[todo]])
        B = np.concatenate([B[todo], B[todo]])
        a = np.concatenate([a[todo], m[todo]])
        b = np.concatenate([m[todo], b[todo]])
        Q = np.concatenate([Qc[:k][todo], Qc[k:][todo]])
        order = np.lexsort((a, A))
        A, B, a, b, Q = A[order], B[order], a[order], b[order], Q[order]
    value = math.fsum(np.concatenate(parts)) if parts else 0.0
    err = math.fsum(np.concatenate(errs)) if errs else 0.0
    return value, err, n_lines, exhausted


# -- caps ------------------------------------------------------------------

def _cap_sweep(field: BeltramiField, query: CarlesonQuery) -> _Sweep:
    r, xi = query.r, query.xi
    restriction = query.restriction
    edges = field.edges()
    if restriction is not None:
        edges = edges + restriction.edges()
    edges = edges.near_disk(xi, r * 1.01)
    rim = CircleSet.circles([xi], [r])
    corners = np.concatenate([intersection_points(edges), intersection_points(edges, rim)])
    corners = corners[np.abs(corners - xi) <= r * (1 + 1e-12)]
    indicator = None if restriction is None else restriction.contains
    const = bool(getattr(field, "modulus_piecewise_constant", False))
    dens = lambda z: np.abs(field(z)) ** 2
    if query.model == DISK:
        def alpha(s):
            s = np.asarray(s, float)
            with np.errstate(divide="ignore", invalid="ignore"):
                cosa = (1.0 + s * s - r * r) / (2.0 * s)
            return np.arccos(np.clip(np.nan_to_num(cosa, nan=-1.0, neginf=-1.0), -1.0, 1.0))
        # u is the distance d = 1 - |z| to the boundary circle
        radius = lambda d: 1.0 - d
        sweep = _Sweep("circular", 0j, None, dens, indicator, edges, const,
                       radius=radius, half_angle=lambda d: alpha(1.0 - d),
                       phi0=float(np.angle(xi)), corners=corners,
                       gap=lambda d, D: (1.0 - D) - d)
        sweep.jw = lambda d: (1.0 - d) * alpha(1.0 - d) / (d * (2.0 - d))
        # levels come out as radii; convert to distances from the boundary
        levels, clevels = sweep.tangency_levels, sweep.corner_levels
        sweep.tangency_levels = lambda: 1.0 - levels()
        sweep.corner_levels = lambda: 1.0 - clevels()
        return sweep
    w = {"halfplane_carleson": lambda y: 1.0 / y,
         "halfplane_area": lambda y: 0.25 / (y * y)}[query.weight]
    beta = lambda y: np.sqrt(np.maximum(r * r - y * y, 0.0))
    return _Sweep("horizontal", xi, lambda y: beta(y) * w(y), dens, indicator, edges, const,
                  half_width=beta, corners=corners)


def _deepest_level(edges: CircleSet, model: str) -> float:
    """Smallest boundary distance reached by any edge curve (inf without edges)."""
    if len(edges.line_points):
        return 0.0
    if not len(edges.centers):
        return math.inf
    if model == DISK:
        return float(max(0.0, (1.0 - np.abs(edges.centers) - edges.radii).min()))
    return float(max(0.0, (edges.centers.imag - edges.radii).min()))


def _closed_edge_levels(edges: CircleSet, model: str):
    """Boundary-distance ranges of edge circles lying inside the model."""
    c, R = edges.centers, edges.radii
    if model == DISK:
        lo, hi = 1.0 - np.abs(c) - R, 1.0 - np.abs(c) + R
    else:
        lo, hi = c.imag - R, c.imag + R
    inside = lo > 0
    return lo[inside], hi[inside]


def box_integral(field: BeltramiField, query: CarlesonQuery, tol: float = 1e-6,
                 max_levels: int = 48, min_levels: int = 4,
                 divergence_threshold: float = DIVERGENCE_THRESHOLD) -> IntegralResult:
    """Integral of |mu|^2 * weight over B(xi, r) in the model (times the restriction)."""
    if field.model != query.model:
        raise ValueError(f"field lives on the {field.model}, query on the {query.model}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if field.is_zero:
        return IntegralResult(0.0, 0.0, 0, False, 0.0, ())
    top = min(query.r, 1.0) if query.model == DISK else query.r
    sweep = _cap_sweep(field, query)
    kinks = [2.0 - query.r] if query.model == DISK and query.r > 1 else []
    fedges = field.edges().near_disk(query.xi, query.r * 1.01)
    deepest = _deepest_level(fedges, query.model)
    closed_lo, closed_hi = _closed_edge_levels(fedges, query.model)
    increments, errors = [], []
    n_eval, exhausted = 0, False
    diverged, tail = False, 0.0
    growth = 0.0
    for k in range(max_levels):
        lo = top * 2.0 ** -(k + 1)
        hi = top * 2.0 ** -k
        # geometric allocation, floored at 1e-6 tol: over max_levels layers the floors add
        # < 5e-5 tol, and deep layers are not refined below the roundoff of 1 - d
        layer_tol = 0.5 * tol * max(2.0 ** -(k + 1), 1e-6)
        val, err, n, ex = _sweep_integral(sweep, lo, hi, layer_tol, kinks)
        increments.append(val)
        errors.append(err)
        n_eval += n
        exhausted |= ex
        if k >= 1:
            prev = increments[-2]
            growth = val / prev if prev > 0 else (0.0 if val == 0 else math.inf)
        ratios = [increments[i] / increments[i - 1] if increments[i - 1] > 0 else
                  (0.0 if increments[i] == 0 else math.inf)
                  for i in range(max(1, len(increments) - DIVERGENCE_RUN), len(increments))]
        if len(ratios) == DIVERGENCE_RUN and all(q >= divergence_threshold for q in ratios) \
                and val > 1e-300:
            diverged = True
            break
        if k + 1 >= min_levels:
            if val == 0.0:
                # empty layers end the sweep only if no field edge reaches deeper
                if increments[-2] == 0.0 and deepest >= lo:
                    tail = 0.0
                    break
                continue
            # never stop inside a closed edge curve (an orbit image cut by the layer)
            if np.any((closed_lo < lo) & (closed_hi > lo)):
                continue
            # orbit images can skip layers, so compare with the last nonzero layer
            prev = next((x for x in reversed(increments[:-1]) if x > 0), 0.0)
            q = val / prev if prev > 0 else math.inf
            if q < divergence_threshold:
                tail = val * q / (1.0 - q)
                if tail <= 0.25 * tol:
                    break
    else:
        tail = math.inf if growth >= divergence_threshold else \
            increments[-1] * growth / max(1.0 - growth, 1e-12)
    # the geometric tail of the remaining layers is added as an extrapolation
    value = math.fsum(increments) + (tail if math.isfinite(tail) and not diverged else 0.0)
    err = math.fsum(errors) + (tail if not diverged else math.inf)
    return IntegralResult(value, err, len(increments), diverged, growth,
                          tuple(increments), n_eval, exhausted)


def restricted_integral(field: BeltramiField, query: CarlesonQuery,
                        view: FundamentalDomainView | None = None, tol: float = 1e-6,
                        **kw) -> IntegralResult:
    """box_integral with the fundamental-domain indicator multiplied in."""
    if view is not None:
        region = DomainRegion(view, query.model)
        query = CarlesonQuery(query.xi, query.r, query.weight, region)
    elif query.restriction is None:
        raise ValueError("restricted_integral needs a fundamental domain or a restriction")
    return box_integral(field, query, tol, **kw)


# -- cusp closed forms -----------------------------------------------------

def inner_integral(r, r_a: float, r_b: float):
    """Angular integral of 1/(4 r sin^2 theta) across the sector between two
    geodesics tangent at a cusp, with radii r_a and r_b.

    Vectorized in ``r``; requires 0 <= r <= 2 min(r_a, r_b).  At r = 0 the
    limit (1/8)(1/r_a + 1/r_b) is returned.
    """
    r = np.asarray(r, dtype=float)
    if r_a <= 0 or r_b <= 0:
        raise ValueError("side radii must be positive")
    if np.any(r < 0) or np.any(r > 2 * min(r_a, r_b) * (1 + 1e-12)):
        raise ValueError("r must lie in [0, 2 min(r_a, r_b)]; beyond that the sector is empty")
    xa = np.minimum(r / (2 * r_a), 1.0)
    xb = np.minimum(r / (2 * r_b), 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        val = (xa / np.sqrt(1 - xa * xa) + xb / np.sqrt(1 - xb * xb)) / (4 * r)
    val = np.where(r == 0, 0.125 * (1 / r_a + 1 / r_b), val)
    return float(val) if val.ndim == 0 else val


def cusp_sector_integral(r_a: float, r_b: float, R: float) -> float:
    """Hyperbolic area (density 1/(4 y^2)) of the cusp sector within distance R."""
    if R > 2 * min(r_a, r_b):
        raise ValueError("R exceeds 2 min(r_a, r_b): the sector closes before R")
    if R <= 0:
        return 0.0
    # integrable endpoint singularity when R = 2 min(r_a, r_b); quad handles it
    val, _ = integrate.quad(lambda r: inner_integral(r, r_a, r_b), 0.0, R,
                            epsabs=1e-14, epsrel=1e-12, limit=200)
    return float(val)


def cusp_area_bound(r_a: float, r_b: float, R_max: float = 1.0) -> float:
    """inner_integral(R_max) * R_max, an upper bound for the sector area since
    the inner integral increases with r."""
    bound = inner_integral(R_max, r_a, r_b) * R_max
    if R_max < 2 * min(r_a, r_b):
        assert cusp_sector_integral(r_a, r_b, R_max) <= bound * (1 + 1e-12)
    return float(bound)


# -- orbit decomposition ---------------------------------------------------

@dataclass
class OrbitCheck:
    lhs: float
    rhs: float
    residual: float
    truncation_increment: float
    lhs_result: IntegralResult
    terms: list = dc_field(default_factory=list)
    rhs_by_length: list = dc_field(default_factory=list)
    rhs_error: float = 0.0

    def to_dict(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "residual": self.residual,
                "truncation_increment": self.truncation_increment,
                "lhs_error": self.lhs_result.error_estimate, "rhs_error": self.rhs_error,
                "rhs_by_length": self.rhs_by_length}


def _orbit_term(base: BeltramiField, m: np.ndarray, query: CarlesonQuery, center: complex,
                radius: float, tol: float):
    """Integral over the support disk K of |mu_F|^2 |g'| / (1 - |z|^2) on g^-1(B)."""
    ic, ir = disk_image(m, center, radius)
    dist = abs(complex(ic) - query.xi)
    if dist >= float(ir) + query.r:
        return 0.0, 0.0, 0
    inside = dist + float(ir) <= query.r
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    xi, r = query.xi, query.r

    dens = lambda z: np.abs(base(z)) ** 2
    weight = lambda z: 1.0 / (np.abs(c * z + d) ** 2 * (1.0 - np.abs(z) ** 2))
    indicator = None
    if not inside:
        indicator = lambda z: np.abs((a * z + b) / (c * z + d) - xi) < r
    edges = base.edges()
    # the support circle is the integration boundary, not an interior edge
    keep = ~((np.abs(edges.centers - center) < 1e-12) & (np.abs(edges.radii - radius) < 1e-12))
    edges = edges.select(keep)
    if not inside:
        inv = np.array([[d, -b], [-c, a]])
        edges = edges + CircleSet.circles([xi], [r]).image(inv)
    edges = edges.near_disk(center, radius)
    rim = CircleSet.circles([center], [radius])
    corners = np.concatenate([intersection_points(edges), intersection_points(edges, rim)])
    sweep = _Sweep("circular", complex(center), lambda rho: np.pi * rho, dens, indicator, edges,
                   bool(getattr(base, "modulus_piecewise_constant", False)), weight,
                   radius=lambda rho: rho, half_angle=lambda rho: np.full(np.shape(rho), np.pi),
                   corners=corners)
    val, err, n, _ = _sweep_integral(sweep, 0.0, radius, tol)
    return val, err, n


def orbit_decomposition_check(field, query: CarlesonQuery, table=None, tol: float = 1e-6,
                              lhs_tol: float | None = None) -> OrbitCheck:
    """Compare the cap integral of an invariant extension with the sum over
    group elements of integrals over the base support pulled back by g."""
    from .beltrami import InvariantExtension
    if query.model != DISK or query.weight != "disk_carleson":
        raise ValueError("the orbit decomposition is checked on the disk")
    if field.is_zero:
        zero = IntegralResult(0.0, 0.0, 0, False, 0.0)
        return OrbitCheck(0.0, 0.0, 0.0, 0.0, zero)
    if isinstance(field, InvariantExtension):
        base, mats = field.base, field.mats
        lengths = field.table.word_lengths
    else:
        if table is not None:
            raise ValueError("pass the invariant extension of a base field, not a raw field")
        base, mats, lengths = field, np.eye(2, dtype=complex)[None], np.zeros(1, int)
    sd = base.support_disk()
    if sd is None or base.model != DISK:
        raise ValueError("the base field needs a bounded support disk on the disk model")
    lhs = box_integral(field, query, lhs_tol or tol)
    center, radius = sd
    terms, errs = [], []
    n_terms = len(mats)
    for i in range(n_terms):
        v, e, _ = _orbit_term(base, mats[i], query, center, radius, tol / n_terms)
        terms.append(v)
        errs.append(e)
    terms = np.array(terms)
    by_len = [math.fsum(terms[lengths == L]) for L in range(int(lengths.max()) + 1)]
    rhs = math.fsum(terms)
    return OrbitCheck(lhs.value, rhs, abs(lhs.value - rhs), by_len[-1], lhs,
                      terms.tolist(), by_len, math.fsum(errs))


# -- Carleson norm estimates -------------------------------------------------

def dyadic_radii(k_max: int = 5, r_max: float = 1.0) -> list:
    return [r_max * 2.0 ** -k for k in range(k_max + 1)]


@dataclass
class CarlesonRecord:
    xi: complex
    r: float
    value: float
    ratio: float
    diverged: bool
    error_estimate: float
    levels: int

    def to_dict(self) -> dict:
        return {"xi": [self.xi.real, self.xi.imag], "r": self.r, "value": self.value,
                "ratio": self.ratio, "diverged": self.diverged,
                "error_estimate": self.error_estimate, "levels": self.levels}


@dataclass
class CarlesonReport:
    records: list
    sup_ratio: float
    argmax: tuple | None
    restriction: str
    depth: int | None
    weight: str
    truncation_events: int = 0

    @property
    def any_diverged(self) -> bool:
        return any(r.diverged for r in self.records)

    def to_dict(self) -> dict:
        return {
            "weight": self.weight,
            "restriction": self.restriction,
            "depth": self.depth,
            "sup_ratio": self.sup_ratio,
            "argmax": None if self.argmax is None else
            {"xi": [self.argmax[0].real, self.argmax[0].imag], "r": self.argmax[1]},
            "any_diverged": self.any_diverged,
            "truncation_events": self.truncation_events,
            "records": [r.to_dict() for r in self.records],
        }


def _run_query(args):
    field, query, tol = args
    before = getattr(field, "truncation_events", 0)
    res = box_integral(field, query, tol)
    return res, getattr(field, "truncation_events", 0) - before


def run_queries(field: BeltramiField, queries: Sequence[CarlesonQuery], tol: float = 1e-6,
                workers: int = 1) -> tuple:
    """Evaluate many queries; results and the summed truncation counter are
    independent of the worker count."""
    jobs = [(field, q, tol) for q in queries]
    if workers <= 1 or len(jobs) <= 1:
        out = [_run_query(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            out = list(ex.map(_run_query, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    results = [o[0] for o in out]
    return results, sum(o[1] for o in out)


def carleson_norm_estimate(field: BeltramiField, xi_samples, r_grid=None,
                           restriction: Region | None = None, tol: float = 1e-6,
                           weight: str | None = None, workers: int = 1,
                           depth: int | None = None) -> CarlesonReport:
    """Sup over the sample grid of I(xi, r) / r."""
    weight = weight or ("disk_carleson" if field.model == DISK else "halfplane_carleson")
    r_grid = list(dyadic_radii() if r_grid is None else r_grid)
    queries = [CarlesonQuery(complex(x), float(r), weight, restriction)
               for x in np.atleast_1d(xi_samples) for r in r_grid]
    results, events = run_queries(field, queries, tol, workers)
    records = [CarlesonRecord(q.xi, q.r, res.value, res.value / q.r if not res.diverged else math.inf,
                              res.diverged, res.error_estimate, res.refinement_levels)
               for q, res in zip(queries, results)]
    if records:
        best = max(range(len(records)), key=lambda i: (records[i].ratio, -i))
        sup, argmax = records[best].ratio, (records[best].xi, records[best].r)
    else:
        sup, argmax = 0.0, None
    if sup == 0.0:
        argmax = None
    desc = "none" if restriction is None else restriction.describe()
    return CarlesonReport(records, sup, argmax, desc, depth, weight, events)
