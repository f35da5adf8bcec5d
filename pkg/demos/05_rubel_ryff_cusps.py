"""
Cusps of a Rubel-Ryff group
============================

The plane minus {0, +-2, +-4, ..., +-2^(n-1)} is covered by the
half-plane; the covering group is generated by reflecting in the disks
D*_n and then across the imaginary axis.  Every puncture shows up as a
cusp of the Dirichlet domain at i, with two tangent sides.  The
hyperbolic area of F near each cusp is bounded by the closed form, and
the bound decays geometrically in the level N of the cusp +-2^N.
"""
import math

from fuchsian_carleson import CarlesonQuery, FundamentalDomainView, box_integral, enumerate_group, rubel_ryff_generators
from fuchsian_carleson.beltrami import DomainRegion, UnitDensity
from fuchsian_carleson.moebius import HALFPLANE
from fuchsian_carleson.quadrature import cusp_area_bound

n_max = 6
gens = rubel_ryff_generators(n_max)
for k, g in enumerate(gens.generators[:3], 1):
    print(f"g{k}: trace {g.trace.real:+.0f}, {g.classify()}")

view = FundamentalDomainView(enumerate_group(gens, 2))
cusps = [cp for cp in view.infinite_boundary().cusps if math.isfinite(cp.halfplane_point)]
print(f"{len(cusps)} cusps (expected {2 * n_max - 1})")

unit = UnitDensity(DomainRegion(view, HALFPLANE), HALFPLANE)
by_level = {}
for cp in sorted(cusps, key=lambda c: c.halfplane_point.real):
    ra, rb = cp.halfplane_radii
    area = box_integral(unit, CarlesonQuery(cp.halfplane_point, 1.0, "halfplane_area"), 1e-6).value
    bound = cusp_area_bound(ra, rb, 1.0)
    x = cp.halfplane_point.real
    level = 0 if abs(x) < 1e-9 else round(math.log2(abs(x)))
    by_level[level] = by_level.get(level, 0.0) + area
    print(f"  cusp {x:+6.0f}: sides {ra:g}, {rb:g}  area {area:.6f} <= {bound:.6f}")

levels = sorted(by_level)
print("increments by level:", ["%.4g" % by_level[N] for N in levels])
print("ratios:", ["%.3f" % (by_level[b] / by_level[a]) for a, b in zip(levels[1:], levels[2:])])
