"""
Homogeneity of real sets
=========================

C(E) = inf over x in E and 0 < t <= diam E of |E n (x-t, x+t)| / (2t),
on a log-spaced grid of t.  An interval gives 1.  The level-L
middle-thirds sets lose measure like (2/3)^L and so does their constant.
Finite point sets are thickened by eps; as eps shrinks the constant of
the thickened puncture set goes to 0.
"""
from fuchsian_carleson import IntervalUnion, cantor_set, homogeneity_constant, puncture_set
from fuchsian_carleson.denjoy import homogeneity_trend

print("[0, 1]:", homogeneity_constant(IntervalUnion.from_intervals([(0.0, 1.0)])))
print("[0, 1] u [2, 3]:", homogeneity_constant(IntervalUnion.from_intervals([(0.0, 1.0), (2.0, 3.0)])))

for L in (2, 4, 6, 8, 10, 12):
    E = cantor_set(L)
    print(f"cantor level {L:2d}: constant {homogeneity_constant(E):.5f}, length {E.total_length:.5f}")

pts = puncture_set(6)
for eps, c in homogeneity_trend(pts, [1e-1, 1e-2, 1e-3, 1e-4]):
    print(f"punctures, eps={eps:g}: {c:.3e}")
