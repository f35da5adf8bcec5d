"""Acceptance criteria 1-9 at their stated tolerances.

Each test records its outcome; the conftest hook prints one line per
criterion after the run.
"""
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest

from conftest import random_automorphisms, random_disk_points, sector_area_quadrature
from fuchsian_carleson.beltrami import (
    Ball, ConstantField, ConstantOnRegion, PowerDecay, cayley_pullback, compatibility_residual,
    invariant_extension, sector_field,
)
from fuchsian_carleson.config import load_config
from fuchsian_carleson.denjoy import (
    IntervalUnion, cantor_set, homogeneity_constant, homogeneity_trend, puncture_set,
)
from fuchsian_carleson.fundomain import FundamentalDomainView
from fuchsian_carleson.group import enumerate_group, rubel_ryff_generators, schottky_pair_generators
from fuchsian_carleson.harness import cmd_verify_sec4
from fuchsian_carleson.moebius import (
    MoebiusMap, compose, hyperbolic_distance, inverse, matrix_distance,
)
from fuchsian_carleson.quadrature import (
    CarlesonQuery, box_integral, carleson_norm_estimate, cusp_sector_integral, dyadic_radii,
    inner_integral, orbit_decomposition_check,
)

TWO_PAIRS = [((-3.0, 1.0), (3.0, 1.0)), ((-10.0, 2.0), (10.0, 2.0))]


@pytest.fixture
def record(request):
    store = request.config._acceptance

    def rec(n, name, ok, info=""):
        store.setdefault(n, []).append((name, bool(ok), info))
        return ok
    return rec


@pytest.fixture(scope="module")
def sec4_report():
    cfg = load_config(None, {"sec4.n_max": 7, "sec4.depth": 2, "sec4.diagnostic_depths": [1],
                             "sec4.n_xi_global": 2, "sec4.r_global": [0.5]})
    rep = cmd_verify_sec4(cfg)
    return {r.name: r for r in rep.records}


# 1 -------------------------------------------------------------------------

def random_sl2(rng, n):
    m = rng.normal(size=(n, 2, 2)) + 1j * rng.normal(size=(n, 2, 2))
    m /= np.sqrt(np.linalg.det(m))[:, None, None]
    return [MoebiusMap.from_matrix(x) for x in m]


def fd_derivative(f, z, h=1e-3):
    # fourth-order central difference
    return (8 * (f(z + h) - f(z - h)) - (f(z + 2 * h) - f(z - 2 * h))) / (12 * h)


def test_criterion_1_moebius_algebra(record):
    rng = np.random.default_rng(1)
    t0 = time.perf_counter()
    n = 1000
    F, G, H = (random_sl2(rng, n) for _ in range(3))
    assoc = max(matrix_distance(compose(f, compose(g, h)).matrix, compose(compose(f, g), h).matrix)
                for f, g, h in zip(F, G, H))
    inv = max(matrix_distance(compose(f, inverse(f)).matrix, np.eye(2)) for f in F)
    A, B = random_automorphisms(rng, n), random_automorphisms(rng, n)
    z, w = random_disk_points(rng, n, 0.9), random_disk_points(rng, n, 0.9)
    roundtrip = max(abs(inverse(a)(a(zz)) - zz) for a, zz in zip(A, z))
    chain = fd = 0.0
    for a, b, zz in zip(A, B, z):
        ab = compose(a, b)
        d = ab.derivative(zz)
        chain = max(chain, abs(d - a.derivative(b(zz)) * b.derivative(zz)) / abs(d))
        fd = max(fd, abs(d - fd_derivative(ab, zz)) / abs(d))
    iso = max(abs(hyperbolic_distance(a(p), a(q)) - hyperbolic_distance(p, q)) / max(1.0, hyperbolic_distance(p, q))
              for a, p, q in zip(A, z, w))
    elapsed = time.perf_counter() - t0
    errs = {"assoc": assoc, "inverse": max(inv, roundtrip), "chain": chain, "finite_diff": fd, "isometry": iso}
    ok = max(errs.values()) < 1e-8 and elapsed < 10
    record(1, "moebius algebra", ok, ", ".join(f"{k}={v:.1e}" for k, v in errs.items()) + f", {elapsed:.1f} s")
    assert ok, errs


# 2 -------------------------------------------------------------------------

def test_criterion_2_cusp_closed_form(record):
    rng = np.random.default_rng(2)
    pairs = rng.uniform(0.2, 5.0, size=(10, 2))
    lim_err = max(abs(inner_integral(1e-6, a, b) - (a ** -1 + b ** -1) / 8) / ((a ** -1 + b ** -1) / 8)
                  for a, b in pairs)
    quad_err = 0.0
    for a, b in pairs:
        R = min(a, b)
        exact = cusp_sector_integral(a, b, R)
        quad_err = max(quad_err, abs(exact - sector_area_quadrature(a, b, R)) / exact)
    ok = lim_err < 1e-6 and quad_err < 1e-5
    record(2, "cusp closed form", ok, f"limit rel err {lim_err:.1e}, sector vs 2-D quadrature {quad_err:.1e}")
    assert ok


# 3 -------------------------------------------------------------------------

def test_criterion_3_orbit_change_of_variables(record):
    t0 = time.perf_counter()
    table = enumerate_group(schottky_pair_generators(TWO_PAIRS), 6)
    view = FundamentalDomainView(table)
    mu = invariant_extension(ConstantOnRegion(0.4 + 0.2j, Ball(0.1j, 0.3)), table, view=view)
    tol = 1e-6
    worst, lhs = 0.0, []
    for angle, r in ((0.3, 1.0), (math.pi / 2, 0.8)):
        chk = orbit_decomposition_check(mu, CarlesonQuery(np.exp(1j * angle), r), tol=tol)
        worst = max(worst, chk.residual)
        lhs.append(chk.lhs)
    elapsed = time.perf_counter() - t0
    ok = worst <= 5 * tol and min(lhs) > 0 and elapsed < 120
    record(3, "orbit change of variables", ok,
           f"{len(table)} entries, max |lhs-rhs| {worst:.1e} <= {5 * tol:.0e}, {elapsed:.1f} s")
    assert ok


# 4 -------------------------------------------------------------------------

def _pairs_in_tiles(mu, table, rng, n, max_len=2):
    """n random (g, z) with z and g(z) both in enumerated tiles."""
    short = np.flatnonzero(table.word_lengths <= max_len)
    out = []
    while len(out) < n:
        z = random_disk_points(rng, n, 1.0)
        gi = rng.choice(short, n)
        for i, zz in zip(gi, z):
            g = table.disk_map(int(i))
            if mu.view.locate(np.array([zz, g(zz)]), fallback=False)[0].min() >= 0:
                out.append((g, zz))
    return out[:n]


def test_criterion_4_compatibility(record):
    rng = np.random.default_rng(4)
    table = enumerate_group(schottky_pair_generators(TWO_PAIRS), 5)
    view = FundamentalDomainView(table)
    mu = invariant_extension(ConstantOnRegion(0.4 + 0.2j, Ball(0.1j, 0.3)), table, view=view)
    res_s = max(compatibility_residual(mu, g, z) for g, z in _pairs_in_tiles(mu, table, rng, 1000))
    rr = enumerate_group(rubel_ryff_generators(3), 3)
    rview = FundamentalDomainView(rr)
    mu_h = invariant_extension(sector_field(0.5, rview, [0.0, 2.0, -2.0], 1.0), rr, view=rview)
    mu0 = cayley_pullback(mu_h)
    rr_pairs = _pairs_in_tiles(mu_h, rr, rng, 1000)
    res_r = max(compatibility_residual(mu0, g, z) for g, z in rr_pairs)
    ok = max(res_s, res_r) < 1e-9
    record(4, "compatibility law", ok, f"schottky ball {res_s:.1e}, sector on rubel-ryff {res_r:.1e}")
    assert ok


# 5 -------------------------------------------------------------------------

def test_criterion_5_divergence_detection(record):
    xi = np.exp(2j * np.pi * (np.arange(16) + 0.5) / 16)
    radii = dyadic_radii(3, 1.0)
    const = carleson_norm_estimate(ConstantField(0.5), xi, radii)
    c = 0.5
    decay = carleson_norm_estimate(PowerDecay(c, 0.5), xi, radii)
    all_flagged = all(r.diverged for r in const.records)
    none_flagged = not any(r.diverged for r in decay.records)
    ok = all_flagged and none_flagged and decay.sup_ratio <= 2 * math.pi * c * c
    record(5, "divergence detection", ok,
           f"constant flagged {sum(r.diverged for r in const.records)}/{len(const.records)}, "
           f"power decay flagged {sum(r.diverged for r in decay.records)}, "
           f"sup ratio {decay.sup_ratio:.4f} <= {2 * math.pi * c * c:.4f}")
    assert ok


# 6 -------------------------------------------------------------------------

def test_criterion_6_rubel_ryff_construction(record, sec4_report):
    g1, g2 = rubel_ryff_generators(7).generators[:2]
    mats = (matrix_distance(g1.matrix, np.array([[-1, 0], [1, -1]])) < 1e-12
            and matrix_distance(g2.matrix, np.array([[-3, 8], [1, -3]])) < 1e-12)
    gens = (mats and g1.classify() == "parabolic" and abs(abs(g1.trace) - 2) < 1e-12
            and abs(g1(0.0)) < 1e-12 and g2.classify() == "hyperbolic")
    rows = sec4_report["cusp_areas"].values["cusps"]
    areas_ok = len(rows) == 13 and all(r["area"] <= r["bound"] * (1 + 1e-9) + r["error_estimate"] for r in rows)
    ps = sec4_report["area_partial_sums"].values
    ratios = ps["ratios"]
    decay_ok = ps["levels"] == list(range(7)) and all(q <= 0.8 for q in ratios)
    ok = gens and areas_ok and decay_ok
    record(6, "rubel-ryff construction", ok,
           f"generators {'ok' if gens else 'wrong'}, max area/bound {max(r['ratio'] for r in rows):.3f}, "
           f"increment ratios N<=6 max {max(ratios):.3f}")
    assert ok


# 7 -------------------------------------------------------------------------

def test_criterion_7_restricted_sup_stability(record, sec4_report):
    v = sec4_report["disk_restricted_bound"].values
    sups, change = v["sup_ratios"], v["relative_change"]
    ok = all(math.isfinite(s) for s in sups) and change < 0.1 \
        and sec4_report["cusp_carleson_bound"].status == "pass"
    record(7, "restricted sup stability", ok,
           f"sup ratios {sups[0]:.6g} -> {sups[1]:.6g} at depths {v['depths']}, change {change:.2%}")
    assert ok


# 8 -------------------------------------------------------------------------

def test_criterion_8_unit_interval_and_punctures(record):
    unit = homogeneity_constant(IntervalUnion.from_intervals([(0.0, 1.0)]))
    trend = [c for _, c in homogeneity_trend(puncture_set(5), [0.1, 0.01, 0.001])]
    ok1 = unit == 1.0
    ok2 = trend[0] > trend[1] > trend[2]
    record(8, "[0,1] homogeneity", ok1, f"{unit!r}")
    record(8, "puncture set trend", ok2, ", ".join(f"{c:.2e}" for c in trend))
    assert ok1 and ok2


@pytest.mark.xfail(strict=True, reason="the level-L middle-thirds approximations have measure (2/3)^L "
                                       "and their constant decays at the same rate")
def test_criterion_8_cantor_stabilization(record):
    c8, c12 = (homogeneity_constant(cantor_set(L)) for L in (8, 12))
    change = abs(c12 - c8) / c12
    record(8, "cantor levels 8 vs 12", change < 0.05,
           f"{c8:.4g} vs {c12:.4g}, change {change:.2f}; unattainable, expected failure")
    assert change < 0.05


# 9 -------------------------------------------------------------------------

LIGHT_SEC4 = """
[sec4]
n_max = 4
depth = 2
diagnostic_depths = [1]
n_xi_global = 2
r_global = [0.5]

[query]
k_max = 3
"""


def test_criterion_9_determinism(record, tmp_path):
    cfg = tmp_path / "sec4.toml"
    cfg.write_text(LIGHT_SEC4)
    outs = []
    for workers in (1, 8):
        d = tmp_path / f"w{workers}"
        res = subprocess.run([sys.executable, "-m", "fuchsian_carleson", "verify-sec4", "--config", str(cfg),
                              "--workers", str(workers), "--out", str(d)],
                             capture_output=True, timeout=600)
        assert res.returncode == 0, res.stderr.decode()
        outs.append((d / "verify-sec4.json").read_bytes())
    same = outs[0] == outs[1]
    rep = json.loads(outs[0])
    ok = same and rep["exit_code"] == 0
    record(9, "determinism", ok, f"workers 1 vs 8 byte-identical: {same}, {len(outs[0])} bytes")
    assert ok
