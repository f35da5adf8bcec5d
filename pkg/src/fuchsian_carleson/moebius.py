"""Möbius and anti-Möbius maps on the disk, the upper half-plane and the plane.

Maps are stored as 2x2 complex matrices normalized to determinant one, with an
orientation flag.  A conformal map acts as ``z -> (az+b)/(cz+d)``, an
anticonformal one as ``z -> (a conj(z)+b)/(c conj(z)+d)``.

The hyperbolic metric uses the densities ``1/(1-|z|^2)`` on the disk and
``1/(2 Im z)`` on the half-plane (half the curvature -1 metric), so that the
area element of the half-plane is ``dx dy / (4 y^2)``.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Union

import numpy as np

DISK = "disk"
HALFPLANE = "halfplane"
PLANE = "plane"
MODELS = (DISK, HALFPLANE, PLANE)

CONFORMAL = "conformal"
ANTICONFORMAL = "anticonformal"

DET_TOL = 1e-12
POLE_TOL = 1e-14
PARABOLIC_TOL = 1e-9


class PointAtInfinity(ArithmeticError):
    """Raised when a map is evaluated at its pole."""


class ModelMismatch(ValueError):
    pass


class NotHolomorphic(ValueError):
    """Raised when a derivative of an anticonformal map is requested."""


@dataclass(frozen=True)
class ModelPoint:
    value: complex
    model: str = DISK

    def __post_init__(self):
        if self.model not in (DISK, HALFPLANE):
            raise ValueError(f"unknown model {self.model!r}")
        z = complex(self.value)
        object.__setattr__(self, "value", z)
        if self.model == DISK and abs(z) >= 1 + 1e-12:
            raise ValueError(f"{z} is not in the disk")
        if self.model == HALFPLANE and z.imag <= -1e-12:
            raise ValueError(f"{z} is not in the upper half-plane")


def _canonical(m: np.ndarray) -> np.ndarray:
    """Scale to det 1 and fix the sign so the first nonzero entry points 'up'."""
    det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    if abs(det) < 1e-300:
        raise ValueError("singular matrix")
    m = m / cmath.sqrt(det)
    scale = np.abs(m).max()
    for x in m.ravel():
        if abs(x) > 1e-12 * scale:
            if x.real < -1e-14 * scale or (abs(x.real) <= 1e-14 * scale and x.imag < 0):
                m = -m
            break
    return m


@dataclass(frozen=True, eq=False)
class MoebiusMap:
    a: complex
    b: complex
    c: complex
    d: complex
    orientation: str = CONFORMAL
    model: str = PLANE

    def __post_init__(self):
        if self.orientation not in (CONFORMAL, ANTICONFORMAL):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}")
        m = _canonical(np.array([[self.a, self.b], [self.c, self.d]], dtype=complex))
        for name, v in zip("abcd", m.ravel()):
            object.__setattr__(self, name, complex(v))

    @classmethod
    def from_matrix(cls, m, orientation=CONFORMAL, model=PLANE) -> "MoebiusMap":
        m = np.asarray(m, dtype=complex)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1], orientation, model)

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> complex:
        return self.a + self.d

    @property
    def is_conformal(self) -> bool:
        return self.orientation == CONFORMAL

    def __call__(self, z):
        """Evaluate; arrays give ``inf`` at the pole, scalars raise."""
        scalar = np.isscalar(z) or isinstance(z, ModelPoint)
        if isinstance(z, ModelPoint):
            z = z.value
        z = np.asarray(z, dtype=complex)
        if not self.is_conformal:
            z = np.conj(z)
        num = self.a * z + self.b
        den = self.c * z + self.d
        if scalar:
            if abs(den) <= POLE_TOL * max(1.0, abs(num)):
                raise PointAtInfinity(f"{complex(z)} is the pole")
            return complex(num / den)
        with np.errstate(divide="ignore", invalid="ignore"):
            w = num / den
        return np.where(np.abs(den) <= POLE_TOL * np.maximum(1.0, np.abs(num)), np.inf, w)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return compose(self, other)

    def inverse(self) -> "MoebiusMap":
        adj = np.array([[self.d, -self.b], [-self.c, self.a]])
        if not self.is_conformal:
            adj = np.conj(adj)
        return MoebiusMap.from_matrix(adj, self.orientation, self.model)

    def derivative(self, z):
        if not self.is_conformal:
            raise NotHolomorphic("anticonformal maps are not complex-differentiable")
        z = np.asarray(z, dtype=complex)
        out = 1.0 / (self.c * z + self.d) ** 2
        return complex(out) if out.ndim == 0 else out

    def distance(self, other: "MoebiusMap") -> float:
        """Projective matrix distance, relative to the entry scale."""
        return matrix_distance(self.matrix, other.matrix) + (
            0.0 if self.orientation == other.orientation else np.inf)

    def is_identity(self, tol: float = 1e-12) -> bool:
        return self.is_conformal and matrix_distance(self.matrix, np.eye(2)) < tol

    def classify(self, tol: float = PARABOLIC_TOL) -> str:
        if not self.is_conformal:
            raise NotHolomorphic("classification applies to conformal maps only")
        if self.is_identity(1e-12):
            return "identity"
        t = self.trace
        if abs(t.imag) > tol:
            return "loxodromic"
        t = abs(t.real)
        if abs(t - 2.0) <= tol:
            return "parabolic"
        return "elliptic" if t < 2.0 else "hyperbolic"

    def fixed_points(self) -> tuple:
        """Fixed points of a conformal map (``inf`` when c == 0)."""
        a, b, c, d = self.a, self.b, self.c, self.d
        if abs(c) < 1e-14 * max(abs(a), abs(d), 1.0):
            return (complex(np.inf),) if abs(a - d) < 1e-14 else (b / (d - a), complex(np.inf))
        disc = cmath.sqrt((a + d) ** 2 - 4.0)
        if abs(disc) < 1e-7:
            return ((a - d) / (2 * c),)
        return ((a - d + disc) / (2 * c), (a - d - disc) / (2 * c))

    def with_model(self, model: str) -> "MoebiusMap":
        return MoebiusMap(self.a, self.b, self.c, self.d, self.orientation, model)

    def __repr__(self):
        fmt = lambda x: f"{x.real:.6g}{x.imag:+.6g}j" if x.imag else f"{x.real:.6g}"
        return (f"MoebiusMap([[{fmt(self.a)}, {fmt(self.b)}], [{fmt(self.c)}, {fmt(self.d)}]], "
                f"{self.orientation}, {self.model})")


def matrix_distance(m1, m2) -> float:
    m1 = np.asarray(m1, dtype=complex)
    m2 = np.asarray(m2, dtype=complex)
    scale = max(1.0, np.abs(m1).max(), np.abs(m2).max())
    return float(min(np.abs(m1 - m2).max(), np.abs(m1 + m2).max()) / scale)


def identity(model: str = PLANE) -> MoebiusMap:
    return MoebiusMap(1, 0, 0, 1, CONFORMAL, model)


def compose(f: MoebiusMap, g: MoebiusMap) -> MoebiusMap:
    """Return ``f o g``."""
    if f.model != g.model:
        raise ModelMismatch(f"cannot compose {f.model} map with {g.model} map")
    gm = g.matrix if f.is_conformal else np.conj(g.matrix)
    orientation = CONFORMAL if f.is_conformal == g.is_conformal else ANTICONFORMAL
    return MoebiusMap.from_matrix(f.matrix @ gm, orientation, f.model)


def apply(f: MoebiusMap, z):
    if isinstance(z, ModelPoint):
        return ModelPoint(f(z.value), z.model)
    return f(z)


def inverse(f: MoebiusMap) -> MoebiusMap:
    return f.inverse()


def derivative(f: MoebiusMap, z):
    return f.derivative(z)


def reflection_in_circle(center: float, radius: float, model: str = HALFPLANE) -> MoebiusMap:
    """Inversion ``z -> c + r^2 / (conj(z) - c)`` in the circle |z - c| = r."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    c = complex(center)
    m = [[c, radius ** 2 - abs(c) ** 2], [1.0, -np.conj(c)]]
    return MoebiusMap.from_matrix(m, ANTICONFORMAL, model)


def negation_reflection(model: str = HALFPLANE) -> MoebiusMap:
    """The reflection ``z -> -conj(z)`` in the imaginary axis."""
    return MoebiusMap(-1, 0, 0, 1, ANTICONFORMAL, model)


# Cayley transform kappa(z) = (z - i)/(z + i) from the half-plane to the disk.
CAYLEY = np.array([[1.0, -1j], [1.0, 1j]])
CAYLEY_INV = np.array([[1j, 1j], [-1.0, 1.0]])


def cayley(z):
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        w = (z - 1j) / (z + 1j)
    w = np.where(np.isinf(z), 1.0 + 0j, w)
    return complex(w) if w.ndim == 0 else w


def cayley_inv(w):
    w = np.asarray(w, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = 1j * (1 + w) / (1 - w)
    z = np.where(w == 1, complex(np.inf), z)
    return complex(z) if z.ndim == 0 else z


def cayley_inv_derivative(w):
    """Derivative of the inverse Cayley transform, ``2i/(1-w)^2``."""
    w = np.asarray(w, dtype=complex)
    out = 2j / (1 - w) ** 2
    return complex(out) if out.ndim == 0 else out


def to_disk_matrix(m) -> np.ndarray:
    """Conjugate half-plane matrices (..., 2, 2) to the disk: K m K^-1."""
    return CAYLEY @ np.asarray(m, dtype=complex) @ CAYLEY_INV


def to_disk(f: MoebiusMap) -> MoebiusMap:
    if f.model != HALFPLANE:
        raise ModelMismatch("to_disk expects a half-plane map")
    right = CAYLEY_INV if f.is_conformal else np.conj(CAYLEY_INV)
    return MoebiusMap.from_matrix(CAYLEY @ f.matrix @ right, f.orientation, DISK)


def to_halfplane(f: MoebiusMap) -> MoebiusMap:
    if f.model != DISK:
        raise ModelMismatch("to_halfplane expects a disk map")
    right = CAYLEY if f.is_conformal else np.conj(CAYLEY)
    return MoebiusMap.from_matrix(CAYLEY_INV @ f.matrix @ right, f.orientation, HALFPLANE)


def hyperbolic_distance(z, w, model: str = DISK):
    """Distance for the metric with density 1/(1-|z|^2) (disk) or 1/(2 Im z)."""
    if isinstance(z, ModelPoint):
        model = z.model
        z = z.value
    if isinstance(w, ModelPoint):
        if w.model != model:
            raise ModelMismatch("points live in different models")
        w = w.value
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if model == DISK:
        delta = np.abs(z - w) / np.abs(1 - np.conj(z) * w)
    elif model == HALFPLANE:
        delta = np.abs(z - w) / np.abs(z - np.conj(w))
    else:
        raise ModelMismatch("the plane carries no hyperbolic metric")
    out = np.arctanh(np.minimum(delta, 1.0))
    return float(out) if out.ndim == 0 else out


def classify(f: MoebiusMap) -> str:
    return f.classify()


Pointlike = Union[complex, ModelPoint]
