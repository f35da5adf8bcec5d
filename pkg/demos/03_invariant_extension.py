"""
Extending a Beltrami coefficient from the fundamental domain
=============================================================

A coefficient given on F is spread over the tiles g(F) with the cocycle
conj(h'(z))/h'(z), h = g^-1.  That factor is what makes
mu(z) = mu(g z) conj(g'(z)) / g'(z) hold; dropping it breaks the law.
The cap integral of the extension then splits into pulled-back integrals
over F, one per group element.
"""
import numpy as np

from fuchsian_carleson import (
    CarlesonQuery, ConstantOnRegion, FundamentalDomainView, compatibility_residual, enumerate_group,
    invariant_extension, orbit_decomposition_check, schottky_pair_generators,
)
from fuchsian_carleson.beltrami import Ball

table = enumerate_group(schottky_pair_generators([((-3.0, 1.0), (3.0, 1.0)), ((-10.0, 2.0), (10.0, 2.0))]), 4)
view = FundamentalDomainView(table)
base = ConstantOnRegion(0.4 + 0.2j, Ball(0.1j, 0.3))

mu = invariant_extension(base, table, view=view)
literal = invariant_extension(base, table, view=view, literal=True)

g = table.disk_map(table.index_of_word((1,)))
z = np.array([0.05 + 0.1j, -0.1 + 0.15j, 0.12j])
print("compatibility residual, cocycle extension:", compatibility_residual(mu, g, z).max())
print("compatibility residual, literal copy:     ", compatibility_residual(literal, g, z).max())

# change of variables over the orbit: the two sides agree to quadrature accuracy
q = CarlesonQuery(np.exp(0.3j), 1.0)
chk = orbit_decomposition_check(mu, q, tol=1e-6)
print(f"cap integral {chk.lhs:.10f}, sum over {len(chk.terms)} elements {chk.rhs:.10f}, residual {chk.residual:.1e}")
