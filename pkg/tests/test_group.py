import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fuchsian_carleson.group import (
    GeneratorSet, TruncationError, cyclic_generators, enumerate_group, limit_set_disk,
    limit_set_sample, poincare_partial_sums, rubel_ryff_disks, rubel_ryff_generators,
    schottky_pair_generators,
)
from fuchsian_carleson.moebius import HALFPLANE, MoebiusMap, matrix_distance


def brute_force_count(gens: GeneratorSet, L: int, tol: float = 1e-9) -> int:
    """Distinct elements among all words of length <= L, by plain matrix products."""
    letters = []
    for g in gens.generators:
        m = np.array(g.matrix)
        letters += [m, np.linalg.inv(m)]
    found = [np.eye(2, dtype=complex)]
    for k in range(1, L + 1):
        for word in itertools.product(range(len(letters)), repeat=k):
            m = np.eye(2, dtype=complex)
            for i in word:
                m = m @ letters[i]
            m = m / np.sqrt(np.linalg.det(m))
            if all(matrix_distance(m, f) >= tol for f in found):
                found.append(m)
    return len(found)


def test_trivial_group_table():
    t = enumerate_group(GeneratorSet((), (), HALFPLANE), 5)
    assert len(t) == 1 and t.words == [()]
    assert t.heights[0] == 1.0
    assert poincare_partial_sums(t).height_sums == [1.0]


def test_cyclic_group_has_2L_plus_1_entries():
    t = enumerate_group(cyclic_generators(MoebiusMap(2, 0, 0, 0.5, model=HALFPLANE)), 7)
    assert len(t) == 15
    assert sorted(len(w) for w in t.words) == [0] + sorted(list(range(1, 8)) * 2)


def test_dilation_heights_match_closed_form():
    # z -> 4z moves i to 4^k i, whose disk image has modulus (4^k-1)/(4^k+1)
    t = enumerate_group(cyclic_generators(MoebiusMap(2, 0, 0, 0.5, model=HALFPLANE)), 6)
    k = np.array([abs(sum(w)) for w in t.words])
    assert np.allclose(t.heights, 2.0 / (4.0 ** k + 1.0), rtol=1e-12, atol=0)
    ps = poincare_partial_sums(t)
    inc = ps.increments
    assert all(inc[i + 1] < 0.3 * inc[i] for i in range(1, len(inc) - 1))
    assert ps.height_sums[-1] < 1.0 + 2 * sum(2.0 / (4.0 ** j + 1) for j in range(1, 60))


@pytest.mark.parametrize("n_max,L", [(2, 2), (2, 3), (3, 3)])
def test_rubel_ryff_counts_match_brute_force(n_max, L):
    gens = rubel_ryff_generators(n_max)
    assert len(enumerate_group(gens, L)) == brute_force_count(gens, L)


def test_rubel_ryff_generators_match_expansions():
    gens = rubel_ryff_generators(3)
    assert rubel_ryff_disks(3) == [(1.0, 1.0), (3.0, 1.0), (6.0, 2.0)]
    g1, g2, g3 = gens.generators
    assert matrix_distance(g1.matrix, np.array([[-1, 0], [1, -1]])) < 1e-12
    assert matrix_distance(g2.matrix, np.array([[-3, 8], [1, -3]])) < 1e-12
    assert g1.classify() == "parabolic" and g1(0.0) == 0.0
    assert g2.classify() == "hyperbolic"
    for g in gens.generators:
        assert np.allclose(g.matrix.imag, 0) and abs(g.det - 1) < 1e-12


def test_rubel_ryff_maps_exterior_into_mirror_disk():
    # tau o sigma_n sends points outside D*_n to points inside the mirror disk -D*_n
    for (c, r), g in zip(rubel_ryff_disks(4), rubel_ryff_generators(4).generators):
        for z in (c + 3 * r * 1j, c + 2.5 * r, c - 1.7 * r + 0.4j * r):
            w = g(z)
            assert abs(w + c) < r
            assert w.imag >= 0


@given(st.floats(-50, 50), st.floats(1e-3, 50))
def test_rubel_ryff_preserves_upper_halfplane(x, y):
    for g in rubel_ryff_generators(5).generators:
        assert g(complex(x, y)).imag > 0


def test_schottky_pair_examples():
    g = schottky_pair_generators([((-3.0, 1.0), (3.0, 1.0))]).generators[0]
    assert g.classify() == "hyperbolic" and abs(g.trace.real) > 2
    # exterior of the first circle goes inside the second one
    for z in (10j, -3 + 2j, 0.5 + 0.1j):
        assert abs(g(z) - 3) < 1
    assert len(schottky_pair_generators([])) == 0
    with pytest.raises(ValueError):
        schottky_pair_generators([((0.0, 3.0), (0.5, 1.0))])


def test_generator_set_rejects_identity_and_duplicates():
    g = MoebiusMap(2, 0, 0, 0.5, model=HALFPLANE)
    with pytest.raises(ValueError):
        GeneratorSet((MoebiusMap(1, 0, 0, 1, model=HALFPLANE),))
    with pytest.raises(ValueError):
        GeneratorSet((g, MoebiusMap(-2, 0, 0, -0.5, model=HALFPLANE)))


def test_entry_budget_raises_with_partial_table():
    with pytest.raises(TruncationError) as err:
        enumerate_group(rubel_ryff_generators(3), 6, max_entries=50)
    assert len(err.value.table) == 50 and err.value.table.truncated
    t = enumerate_group(rubel_ryff_generators(3), 6, max_entries=50, allow_partial=True)
    assert t.truncated


def test_table_invariants():
    t = enumerate_group(rubel_ryff_generators(3), 4)
    gens = t.generators
    rng = np.random.default_rng(3)
    for i in rng.choice(len(t), 100):
        assert matrix_distance(gens.evaluate(t.words[i]).matrix, t.matrices[i]) < 1e-9
    assert sum(len(w) == 0 for w in t.words) == 1
    assert np.all(np.diff(t.heights) <= 0)
    assert np.all((t.heights > 0) & (t.heights <= 1))
    # no two entries coincide
    for i in range(len(t)):
        d = [matrix_distance(t.matrices[i], t.matrices[j]) for j in range(i)]
        assert not d or min(d) >= t.dedup_tol
    # reduced words only
    assert all(w[j] != -w[j + 1] for w in t.words for j in range(len(w) - 1))


def test_closure_at_depth():
    t = enumerate_group(schottky_pair_generators([((-3, 1), (3, 1)), ((-10, 2), (10, 2))]), 4)
    for i, j in itertools.product(range(len(t)), repeat=2):
        if len(t.words[i]) + len(t.words[j]) <= 4:
            assert t.index_of(t.matrices[i] @ t.matrices[j]) is not None


def test_height_cutoff_prunes():
    gens = rubel_ryff_generators(3)
    full = enumerate_group(gens, 4)
    cut = enumerate_group(gens, 4, height_cutoff=0.05)
    assert len(cut) < len(full)
    # generators are always kept; longer words only above the cutoff
    assert np.all(cut.heights[cut.word_lengths > 1] > 0.05)


def test_poincare_sums_monotone_and_comparable():
    t = enumerate_group(rubel_ryff_generators(3), 4)
    ps = poincare_partial_sums(t)
    assert np.all(np.diff(ps.height_sums) >= 0)
    for h, e in zip(ps.height_sums, ps.exp_sums):
        assert 0.5 * h <= e <= h + 1e-12


def test_limit_set_examples():
    trivial = enumerate_group(GeneratorSet((), (), HALFPLANE), 3)
    seeds = np.array([-1.0, 0.5, 2.0])
    assert np.allclose(limit_set_sample(trivial, seeds), seeds)
    t = enumerate_group(cyclic_generators(MoebiusMap(2, 0, 0, 0.5, model=HALFPLANE)), 10)
    pts = limit_set_sample(t, [1.0])
    # orbit 4^k accumulates at the fixed points 0 and infinity
    assert pts.real.min() < 1e-5 and pts.real.max() > 1e5
    disk = limit_set_disk(enumerate_group(rubel_ryff_generators(3), 3), [0.5, -1.5, 7.0])
    assert np.all(np.abs(np.abs(disk) - 1) < 1e-9)
