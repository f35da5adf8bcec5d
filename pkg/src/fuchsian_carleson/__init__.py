"""Fuchsian groups, Dirichlet domains and Carleson estimates for group-compatible Beltrami coefficients."""
from .moebius import (
    MoebiusMap, ModelPoint, compose, apply, inverse, derivative, reflection_in_circle,
    negation_reflection, cayley, cayley_inv, hyperbolic_distance, classify, DISK, HALFPLANE, PLANE,
)
from .group import (
    GeneratorSet, OrbitTable, enumerate_group, poincare_partial_sums, rubel_ryff_generators,
    schottky_pair_generators, cyclic_generators, limit_set_sample,
)
from .fundomain import FundamentalDomainView
from .beltrami import (
    ZeroField, ConstantField, ConstantOnRegion, PowerDecay, GridField, InvariantExtension,
    invariant_extension, cayley_pullback, compatibility_residual, locate,
)
from .quadrature import (
    CarlesonQuery, IntegralResult, CarlesonReport, box_integral, restricted_integral,
    inner_integral, cusp_sector_integral, cusp_area_bound, orbit_decomposition_check,
    carleson_norm_estimate,
)
from .denjoy import IntervalUnion, cantor_set, homogeneity_constant, limit_set_homogeneity, puncture_set

__version__ = "0.1.0"
