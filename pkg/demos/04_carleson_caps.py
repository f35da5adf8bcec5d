"""
Cap integrals and divergence at the boundary
=============================================

For a cap B(xi, r) the density |mu|^2/(1-|z|^2) is integrated layer by
layer towards the circle.  A constant coefficient gives layers that do
not shrink, i.e. a logarithmic divergence; mu = c (1-|z|^2)^(1/2) gives
a bounded measure whose cap integral is c^2 times the Euclidean area of
the lens.  Near a cusp of the half-plane domain the sector between two
tangent sides has a closed-form area.
"""
import numpy as np

from fuchsian_carleson import (
    CarlesonQuery, ConstantField, PowerDecay, box_integral, carleson_norm_estimate,
    cusp_area_bound, cusp_sector_integral, inner_integral,
)

q = CarlesonQuery(1j, 0.5)
res = box_integral(ConstantField(0.5), q)
print(f"constant field: diverged={res.diverged}, layer growth {res.growth_per_level:.3f}")
print("  first layers:", ["%.4f" % x for x in res.increments[:6]])

c = 0.5
res = box_integral(PowerDecay(c, 0.5), q, 1e-8)
print(f"power decay:    value {res.value:.10f} in {res.refinement_levels} layers")

xi = np.exp(2j * np.pi * np.arange(8) / 8)
rep = carleson_norm_estimate(PowerDecay(c, 0.5), xi, [1.0, 0.5, 0.25, 0.125])
print(f"sup over caps of I/r = {rep.sup_ratio:.4f}  (2 pi c^2 = {2 * np.pi * c * c:.4f})")

# cusp sectors: the angular integral tends to (1/8)(1/r_a + 1/r_b)
for r in (1.0, 1e-2, 1e-6):
    print(f"inner integral at r={r:g}: {inner_integral(r, 1.0, 2.0):.10f}")
print("limit (1/8)(1 + 1/2) =", 0.125 * 1.5)
print(f"sector area {cusp_sector_integral(1.0, 2.0, 1.0):.6f} <= bound {cusp_area_bound(1.0, 2.0, 1.0):.6f}")
