"""
Moebius maps, the Cayley transform and the hyperbolic metric
=============================================================

Maps are stored as normalized 2x2 matrices.  The metric has density
1/(1-|z|^2) on the disk and 1/(2y) on the half-plane, so the Cayley
transform kappa(z) = (z-i)/(z+i) is an isometry between them.
"""
import numpy as np

from fuchsian_carleson import (
    DISK, HALFPLANE, MoebiusMap, cayley, classify, compose, hyperbolic_distance, inverse,
    negation_reflection, reflection_in_circle,
)

# reflection across the imaginary axis followed by reflection in |z-1| = 1
# is a holomorphic map of the upper half-plane (matrices are up to sign)
tau = negation_reflection()
g = compose(tau, reflection_in_circle(1.0, 1.0))
print("tau o sigma_1 =", np.round(g.matrix.real, 12).tolist(), "->", classify(g))
g2 = compose(tau, reflection_in_circle(3.0, 1.0))
print("tau o sigma_2 =", np.round(g2.matrix.real, 12).tolist(), "->", classify(g2))

# the parabolic one fixes 0 and pushes points along horocycles
z = 0.3 + 0.8j
print("g(0) =", g(0.0), "  g^-1(g(z)) - z =", abs(inverse(g)(g(z)) - z))

# distances agree on both sides of the Cayley transform
a, b = 1j, 4j
print("d_H(i, 4i)           =", hyperbolic_distance(a, b, HALFPLANE), "(ln 4 / 2 =", np.log(4) / 2, ")")
print("d_D(kappa i, kappa 4i) =", hyperbolic_distance(cayley(a), cayley(b), DISK))

# disk automorphisms preserve the metric
w = 0.4 + 0.2j
m = MoebiusMap.from_matrix(np.array([[1, -w], [-np.conj(w), 1]]) / np.sqrt(1 - abs(w) ** 2), model=DISK)
p, q = 0.1 - 0.5j, -0.6 + 0.3j
print("d(p, q) =", hyperbolic_distance(p, q), "  d(mp, mq) =", hyperbolic_distance(m(p), m(q)))
