import math

import numpy as np
import pytest
from hypothesis import settings
from scipy import integrate

from fuchsian_carleson.moebius import DISK, MoebiusMap

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def disk_automorphism(w: complex, theta: float) -> MoebiusMap:
    """z -> e^{i theta} (z - w) / (1 - conj(w) z)."""
    s = 1.0 / np.sqrt(1.0 - abs(w) ** 2)
    e = np.exp(0.5j * theta)
    m = np.array([[e, -e * w], [-np.conj(w) / e, 1 / e]]) * s
    return MoebiusMap.from_matrix(m, model=DISK)


def random_disk_points(rng, n, rmax=0.95):
    r = rmax * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))


def random_automorphisms(rng, n, rmax=0.8):
    ws = random_disk_points(rng, n, rmax)
    return [disk_automorphism(w, t) for w, t in zip(ws, 2 * np.pi * rng.random(n))]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def sector_area_quadrature(r_a, r_b, R):
    """Area with density 1/(4y^2) of {|z| < R} between the circles |z + r_a| = r_a and |z - r_b| = r_b."""
    def inner(x):
        if x >= 0:
            lo = math.sqrt(max(2 * r_b * x - x * x, 0.0))
        else:
            lo = math.sqrt(max(-2 * r_a * x - x * x, 0.0))
        hi = math.sqrt(max(R * R - x * x, 0.0))
        return 0.25 * (1 / lo - 1 / hi) if lo > 0 else math.inf
    a, b = -R * R / (2 * r_a), R * R / (2 * r_b)
    val = 0.0
    for lo, hi in ((a, 0.0), (0.0, b)):
        val += integrate.quad(inner, lo, hi, epsabs=1e-13, epsrel=1e-12, limit=400)[0]
    return val


# -- acceptance summary: one line per criterion after the run ---------------

def pytest_configure(config):
    config._acceptance = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        parts = results[n]
        ok = all(p[1] for p in parts)
        detail = "; ".join(f"{name}: {'pass' if good else 'FAIL'} ({info})" for name, good, info in parts)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
