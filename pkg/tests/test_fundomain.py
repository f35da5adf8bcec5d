import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from fuchsian_carleson.beltrami import locate
from fuchsian_carleson.fundomain import FundamentalDomainView
from fuchsian_carleson.group import (
    GeneratorSet, cyclic_generators, enumerate_group, rubel_ryff_generators, schottky_pair_generators,
)
from fuchsian_carleson.moebius import DISK, HALFPLANE, MoebiusMap, cayley, cayley_inv

from conftest import random_disk_points


def dilation_view(depth=3):
    return FundamentalDomainView(enumerate_group(cyclic_generators(MoebiusMap(2, 0, 0, 0.5, model=HALFPLANE)), depth))


def trivial_view():
    return FundamentalDomainView(enumerate_group(GeneratorSet((), (), HALFPLANE), 3))


@pytest.fixture(scope="module")
def schottky6():
    return FundamentalDomainView(enumerate_group(schottky_pair_generators([((-3, 1), (3, 1))]), 6))


@pytest.fixture(scope="module")
def rr3():
    return FundamentalDomainView(enumerate_group(rubel_ryff_generators(3), 4))


def test_membership_examples():
    v = dilation_view()
    assert v.membership(0j)
    assert v.membership(1j, HALFPLANE)
    assert not v.membership(4j, HALFPLANE)


def test_membership_matches_annulus_on_random_points(rng):
    # F of z -> 4z with base point i is the annulus 1/2 <= |z| <= 2
    v = dilation_view()
    z = np.exp(rng.uniform(-4, 4, 10_000)) * np.exp(1j * rng.uniform(0.01, math.pi - 0.01, 10_000))
    expected = (np.abs(z) >= 0.5) & (np.abs(z) <= 2)
    margin = np.abs(np.log(np.abs(z)) - np.log(2) * np.sign(np.log(np.abs(z)))) > 1e-9
    assert np.array_equal(v.membership(z, HALFPLANE)[margin], expected[margin])


def test_trivial_group_domain():
    v = trivial_view()
    assert v.sides() == []
    ib = v.infinite_boundary()
    assert ib.n_arcs == 1 and abs(ib.free_measure - 2 * math.pi) < 1e-15
    assert abs(v.tile_boundary_length(()) - 2 * math.pi) < 1e-6
    assert abs(v.length_sum_partials().partial_sums[-1] - 2 * math.pi) < 1e-6
    with pytest.raises(ValueError):
        v.infinite_boundary(resolution=0)


def test_dilation_has_two_bisector_sides():
    sides = dilation_view().sides()
    assert len(sides) == 2
    # the bisectors are the images of |z| = 2 and |z| = 1/2
    for s in sides:
        zh = cayley_inv(s.points(9)[1:-1])
        assert np.allclose(np.abs(zh), np.abs(zh[0]), rtol=1e-9)
        assert min(abs(abs(zh[0]) - 2), abs(abs(zh[0]) - 0.5)) < 1e-9


def test_dilation_identity_tile_length_matches_arc_length_quadrature():
    def disk_length(curve, dcurve, a, b):
        speed = lambda t: abs(2j / (curve(t) + 1j) ** 2 * dcurve(t))
        return integrate.quad(speed, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)[0]

    total = 0.0
    for R in (2.0, 0.5):
        total += disk_length(lambda t: R * np.exp(1j * t), lambda t: 1j * R * np.exp(1j * t), 0, math.pi)
    for a, b in ((0.5, 2.0), (-2.0, -0.5)):
        total += disk_length(lambda t: complex(t), lambda t: 1.0, a, b)
    assert abs(dilation_view().tile_boundary_length(()) - total) < 1e-4 * total


def test_tile_length_matches_fine_polyline(rr3):
    v = rr3
    i = next(k for k, w in enumerate(v.table.words) if len(w) == 2)
    m = v.table.disk_matrices[i]
    total = 0.0
    for C, R, a, b in v.boundary_curves():
        p = C + R * np.exp(1j * np.linspace(a, b, 200_001))
        w = (m[0, 0] * p + m[0, 1]) / (m[1, 0] * p + m[1, 1])
        total += np.abs(np.diff(w)).sum()
    assert abs(v.tile_boundary_length(i) - total) < 1e-4 * total


def test_schottky_pair_free_arcs_and_length_decay(schottky6):
    v = schottky6
    assert v.infinite_boundary().n_arcs == 2
    assert len(v.sides()) == 2
    ls = v.length_sum_partials()
    inc = ls.increments
    assert inc[-1] / inc[0] < 0.5
    assert all(inc[k + 1] < inc[k] for k in range(1, len(inc) - 1))


def test_rubel_ryff_sides_are_tangent_at_cusps():
    v = FundamentalDomainView(enumerate_group(rubel_ryff_generators(2), 4))
    ib = v.infinite_boundary()
    assert ib.cusps
    zero = [c for c in ib.cusps if abs(c.halfplane_point) < 1e-9]
    assert zero, "the parabolic fixed point 0 is a cusp"
    for c in ib.cusps:
        assert c.tangency_gap < 1e-8
        m = v.table.disk_map(v.table.index_of_word(c.parabolic_word))
        assert m.classify() == "parabolic"
        assert abs(m(c.point) - c.point) < 1e-8


def test_rubel_ryff_free_measure_shrinks_with_more_disks():
    m = [FundamentalDomainView(enumerate_group(rubel_ryff_generators(n), 3)).infinite_boundary().free_measure
         for n in (2, 3, 4)]
    assert m[0] > m[1] > m[2]


def test_sides_orthogonal_to_unit_circle(rr3, schottky6):
    for v in (rr3, schottky6, dilation_view()):
        for s in v.sides():
            assert s.orthogonality_gap < 1e-9 * max(1.0, s.radius ** 2)


def test_tiles_are_disjoint(rr3, rng):
    v = rr3
    w = random_disk_points(rng, 400, 0.99)
    w = w[v.membership(w)]
    m = v.table.disk_map(v.table.index_of_word((1,)))
    z = m(w)
    # interior points of F leave F under a generator (boundary ties aside)
    inside = v.membership(z)
    ratio = np.min(np.abs(w[:, None] - v.centers[None]) / v.radii[None], axis=1)
    assert not inside[ratio > 1 + 1e-9].any()


def test_monotone_refinement(rng):
    gens = rubel_ryff_generators(3)
    coarse = FundamentalDomainView(enumerate_group(gens, 2))
    fine = FundamentalDomainView(enumerate_group(gens, 4))
    z = random_disk_points(rng, 5000, 0.999)
    assert not (fine.membership(z) & ~coarse.membership(z)).any()


def test_tiling_consistency(schottky6, rng):
    v = schottky6
    z = random_disk_points(rng, 3000, 0.9)
    idx, flags = v.locate(z)
    m = v.table.disk_matrices[idx]
    # g^-1 applied through the adjugate of a det-1 matrix
    w = (m[:, 1, 1] * z - m[:, 0, 1]) / (-m[:, 1, 0] * z + m[:, 0, 0])
    assert v.membership(w).all()


def test_locate_examples(rr3):
    v = rr3
    word, flag = locate(0.05 + 0.02j, v, DISK)
    assert word == () and not flag
    g1 = v.table.disk_map(v.table.index_of_word((1,)))
    w = 0.1 + 0.3j
    assert v.membership(w)
    word, _ = locate(g1(w), v, DISK)
    assert word == (1,)
    # images of F under longest words sit on the frontier; one letter more is beyond the table
    gens = v.table.generators
    deep = [v.table.disk_map(v.table.index_of_word((1, 2, -1, 3)))(w)]
    beyond = enumerate_group(gens, 5)
    k = beyond.index_of_word((1, 2, -1, 3, 2))
    deep.append(beyond.disk_map(k)(w))
    idx, flags = v.locate(np.array(deep), fallback=False)
    assert flags.all()
    assert v.table.words[idx[0]] == (1, 2, -1, 3) and idx[1] == -1


@given(st.floats(0.0, 0.9), st.floats(0, 2 * math.pi))
def test_locate_agrees_with_argmin(r, t):
    v = FundamentalDomainView(enumerate_group(schottky_pair_generators([((-3, 1), (3, 1)), ((-10, 2), (10, 2))]), 4))
    z = r * np.exp(1j * t)
    idx, _ = v.locate(np.array([z]))
    m = v.table.disk_matrices
    w = (m[:, 1, 1] * z - m[:, 0, 1]) / (-m[:, 1, 0] * z + m[:, 0, 0])
    best = np.abs(w).min()
    assert abs(np.abs(w[idx[0]]) - best) <= 1e-12
