"""Generator sets, breadth-first word enumeration and orbit diagnostics."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .moebius import (
    DISK, HALFPLANE, MoebiusMap, cayley, compose, identity, matrix_distance,
    negation_reflection, reflection_in_circle, to_disk_matrix,
)

DEDUP_TOL = 1e-9


class TruncationError(RuntimeError):
    """Entry budget exhausted; ``table`` holds the partial enumeration."""

    def __init__(self, msg, table):
        super().__init__(msg)
        self.table = table


@dataclass(frozen=True)
class GeneratorSet:
    generators: tuple
    labels: tuple = ()
    model: str = HALFPLANE

    def __post_init__(self):
        gens = tuple(self.generators)
        labels = tuple(self.labels) or tuple(f"g{i + 1}" for i in range(len(gens)))
        if len(labels) != len(gens):
            raise ValueError("one label per generator")
        for g in gens:
            if not g.is_conformal:
                raise ValueError("generators must be conformal")
            if g.model != self.model:
                raise ValueError(f"generator model {g.model} != {self.model}")
            if g.is_identity(1e-12):
                raise ValueError("identity is not allowed as a generator")
        for i in range(len(gens)):
            for j in range(i):
                if matrix_distance(gens[i].matrix, gens[j].matrix) < DEDUP_TOL:
                    raise ValueError(f"generators {labels[j]} and {labels[i]} coincide")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return len(self.generators)

    def letters(self) -> list:
        """Signed indices +k / -k with their matrices (k is 1-based)."""
        out = []
        for k, g in enumerate(self.generators, start=1):
            out.append((k, g.matrix))
            out.append((-k, g.inverse().matrix))
        return out

    def word_label(self, word) -> str:
        if not word:
            return "id"
        return "".join(self.labels[abs(k) - 1] + ("^-1" if k < 0 else "") for k in word)

    def evaluate(self, word) -> MoebiusMap:
        m = identity(self.model)
        for k in word:
            g = self.generators[abs(k) - 1]
            m = compose(m, g if k > 0 else g.inverse())
        return m


@dataclass(frozen=True)
class OrbitEntry:
    word: tuple
    map: MoebiusMap
    base_image: complex
    height: float


def _base_point(model):
    return 0j if model == DISK else 1j


def _disk_stack(mats, model):
    return mats if model == DISK else to_disk_matrix(mats)


def _normalize_stack(m):
    det = m[:, 0, 0] * m[:, 1, 1] - m[:, 0, 1] * m[:, 1, 0]
    return m / np.sqrt(det)[:, None, None]


@dataclass
class OrbitTable:
    """Finite truncation of a group, sorted by descending height."""

    generators: GeneratorSet
    words: list
    matrices: np.ndarray           # (M, 2, 2), source model, det 1
    max_word_len: int
    height_cutoff: float = 0.0
    dedup_tol: float = DEDUP_TOL
    truncated: bool = False
    disk_matrices: np.ndarray = field(init=False, repr=False)
    heights: np.ndarray = field(init=False, repr=False)
    base_images: np.ndarray = field(init=False, repr=False)
    word_lengths: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.disk_matrices = _normalize_stack(_disk_stack(self.matrices, self.model))
        self.word_lengths = np.array([len(w) for w in self.words], dtype=int)
        b = _base_point(self.model)
        m = self.matrices
        self.base_images = (m[:, 0, 0] * b + m[:, 0, 1]) / (m[:, 1, 0] * b + m[:, 1, 1])
        disk_base = self.disk_matrices[:, 0, 1] / self.disk_matrices[:, 1, 1]
        self.heights = 1.0 - np.abs(disk_base)
        order = np.lexsort((self.word_lengths, -self.heights))
        self.words = [self.words[i] for i in order]
        for name in ("matrices", "disk_matrices", "word_lengths", "base_images", "heights"):
            setattr(self, name, getattr(self, name)[order])

    @property
    def model(self) -> str:
        return self.generators.model

    def __len__(self):
        return len(self.words)

    def __getitem__(self, i) -> OrbitEntry:
        return OrbitEntry(self.words[i], self.map(i), complex(self.base_images[i]), float(self.heights[i]))

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    def map(self, i) -> MoebiusMap:
        return MoebiusMap.from_matrix(self.matrices[i], model=self.model)

    def disk_map(self, i) -> MoebiusMap:
        return MoebiusMap.from_matrix(self.disk_matrices[i], model=DISK)

    @property
    def identity_index(self) -> int:
        return self.words.index(())

    @property
    def frontier(self) -> np.ndarray:
        return self.word_lengths >= self.max_word_len

    def counts_per_length(self) -> list:
        return np.bincount(self.word_lengths, minlength=self.max_word_len + 1).tolist()

    def index_of(self, m, tol: float | None = None) -> int | None:
        """Index of the entry equal (projectively) to matrix ``m``, else None."""
        tol = self.dedup_tol if tol is None else tol
        m = np.asarray(m, dtype=complex)
        m = m / np.sqrt(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
        scale = np.maximum(1.0, np.abs(self.matrices).reshape(len(self), -1).max(axis=1))
        diff = np.minimum(np.abs(self.matrices - m).reshape(len(self), -1).max(axis=1),
                          np.abs(self.matrices + m).reshape(len(self), -1).max(axis=1)) / scale
        i = int(np.argmin(diff))
        return i if diff[i] < tol else None

    def index_of_word(self, word) -> int | None:
        try:
            return self.words.index(tuple(word))
        except ValueError:
            return None

    def summary(self) -> dict:
        return {
            "entries": len(self),
            "counts_per_length": self.counts_per_length(),
            "min_height": float(self.heights.min()),
            "max_word_len": self.max_word_len,
            "height_cutoff": self.height_cutoff,
            "truncated": self.truncated,
        }


class _Dedup:
    """Bucket disk base images on a grid; compare matrices within a bucket."""

    def __init__(self, tol, cell=1e-7):
        self.tol = tol
        self.cell = cell
        self.buckets = {}
        self.mats = []

    def _key(self, w):
        return (math.floor(w.real / self.cell), math.floor(w.imag / self.cell))

    def seen(self, m, w) -> bool:
        kx, ky = self._key(w)
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for j in self.buckets.get((kx + dx, ky + dy), ()):
                    if matrix_distance(self.mats[j], m) < self.tol:
                        return True
        return False

    def add(self, m, w):
        self.buckets.setdefault(self._key(w), []).append(len(self.mats))
        self.mats.append(m)


def enumerate_group(gens: GeneratorSet, max_word_len: int, height_cutoff: float = 0.0,
                    dedup_tol: float = DEDUP_TOL, max_entries: int = 250_000,
                    allow_partial: bool = False) -> OrbitTable:
    """Breadth-first enumeration of reduced words up to ``max_word_len``.

    Words are extended on the right (``w -> w x``); an element is kept the
    first time it appears, so each entry carries a shortest word.  Entries with
    height at or below ``height_cutoff`` are neither stored nor extended.
    """
    if max_word_len < 0:
        raise ValueError("max_word_len must be >= 0")
    model = gens.model
    letters = gens.letters()
    letter_ids = np.array([k for k, _ in letters])
    letter_mats = np.array([m for _, m in letters])
    b = _base_point(model)

    words = [()]
    mats = [np.eye(2, dtype=complex)]
    dedup = _Dedup(dedup_tol)
    dedup.add(mats[0], 0j)
    frontier = [0]
    truncated = False
    for _ in range(max_word_len):
        if not frontier or not len(letters):
            break
        fm = np.array([mats[i] for i in frontier])
        cand = _normalize_stack(np.einsum("fij,ljk->flik", fm, letter_mats).reshape(-1, 2, 2))
        dm = _normalize_stack(_disk_stack(cand, model))
        disk_base = dm[:, 0, 1] / dm[:, 1, 1]
        heights = 1.0 - np.abs(disk_base)
        new_frontier = []
        n_letters = len(letters)
        for idx in range(len(cand)):
            parent = frontier[idx // n_letters]
            k = int(letter_ids[idx % n_letters])
            pw = words[parent]
            if pw and pw[-1] == -k:
                continue
            if parent != 0 and heights[idx] <= height_cutoff:
                continue
            if dedup.seen(cand[idx], disk_base[idx]):
                continue
            if len(words) >= max_entries:
                truncated = True
                break
            dedup.add(cand[idx], disk_base[idx])
            words.append(pw + (k,))
            mats.append(cand[idx])
            new_frontier.append(len(words) - 1)
        frontier = new_frontier
        if truncated:
            break
    table = OrbitTable(gens, words, np.array(mats), max_word_len, height_cutoff, dedup_tol, truncated)
    if truncated and not allow_partial:
        raise TruncationError(f"entry budget {max_entries} exceeded", table)
    return table


@dataclass(frozen=True)
class PoincareSums:
    word_lengths: list
    height_sums: list
    exp_sums: list

    @property
    def increments(self) -> list:
        s = self.height_sums
        return [s[0]] + [s[i] - s[i - 1] for i in range(1, len(s))]


def poincare_partial_sums(table: OrbitTable, exponent: float = 1.0) -> PoincareSums:
    """Cumulative sums of height**s and exp(-2 s rho(0, g0)) by word length.

    With rho(0, w) = artanh|w| one has exp(-2 rho) = (1-|w|)/(1+|w|), which lies
    between half the height and the height.
    """
    r = 1.0 - table.heights
    h = table.heights ** exponent
    e = ((1.0 - r) / (1.0 + r)) ** exponent
    L = int(table.word_lengths.max()) if len(table) else 0
    hs, es = [], []
    for k in range(L + 1):
        sel = table.word_lengths <= k
        hs.append(math.fsum(h[sel]))
        es.append(math.fsum(e[sel]))
    return PoincareSums(list(range(L + 1)), hs, es)


def rubel_ryff_disks(n_max: int) -> list:
    """(center, radius) of the disks with diameters [0,2] and [2^(n-1), 2^n]."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    out = [(1.0, 1.0)]
    for n in range(2, n_max + 1):
        out.append((3.0 * 2.0 ** (n - 2), 2.0 ** (n - 2)))
    return out


def rubel_ryff_generators(n_max: int) -> GeneratorSet:
    """The half-plane generators tau o sigma_n, n = 1..n_max."""
    tau = negation_reflection(HALFPLANE)
    gens = [compose(tau, reflection_in_circle(c, r, HALFPLANE)) for c, r in rubel_ryff_disks(n_max)]
    return GeneratorSet(tuple(gens), tuple(f"g{n}" for n in range(1, n_max + 1)), HALFPLANE)


def _check_disjoint(circles):
    for i in range(len(circles)):
        for j in range(i):
            (c1, r1), (c2, r2) = circles[i], circles[j]
            if abs(c1 - c2) <= r1 + r2:
                raise ValueError(f"circles {circles[j]} and {circles[i]} overlap or touch")


def schottky_pair_generators(pairs: Sequence, model: str = HALFPLANE) -> GeneratorSet:
    """One hyperbolic generator per pair ((cA, rA), (cB, rB)) of real-centred circles.

    The generator maps the exterior of circle A onto the interior of circle B.
    In the disk model the circles are interpreted in the half-plane and the
    generators conjugated by the Cayley transform.
    """
    circles = [tuple(map(float, c)) for p in pairs for c in p]
    for c, r in circles:
        if r <= 0:
            raise ValueError("radii must be positive")
    _check_disjoint(circles)
    gens = []
    for (ca, ra), (cb, rb) in pairs:
        h = MoebiusMap(rb / ra, cb - ca * rb / ra, 0, 1, model=HALFPLANE)
        flip = MoebiusMap(-1, 2 * cb, 0, 1, orientation="anticonformal", model=HALFPLANE)
        g = compose(reflection_in_circle(cb, rb, HALFPLANE), compose(flip, h))
        gens.append(g)
    gs = GeneratorSet(tuple(gens), tuple(f"s{i + 1}" for i in range(len(gens))), HALFPLANE)
    if model == DISK:
        from .moebius import to_disk
        return GeneratorSet(tuple(to_disk(g) for g in gs.generators), gs.labels, DISK)
    return gs


def cyclic_generators(m: MoebiusMap) -> GeneratorSet:
    return GeneratorSet((m,), ("g",), m.model)


def limit_set_sample(table: OrbitTable, seeds, resolution: float = 1e-9) -> np.ndarray:
    """Images of boundary seeds under every table element, deduplicated.

    Points at infinity (half-plane model) are dropped.  Returned sorted by
    real part (half-plane) or by angle (disk).
    """
    seeds = np.atleast_1d(np.asarray(seeds, dtype=complex))
    m = table.matrices
    z = seeds[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        pts = ((m[:, 0, 0, None] * z + m[:, 0, 1, None]) / (m[:, 1, 0, None] * z + m[:, 1, 1, None])).ravel()
    pts = pts[np.isfinite(pts)]
    if table.model == HALFPLANE:
        pts = pts.real.astype(complex)
        key = pts.real
    else:
        pts = pts / np.abs(pts)
        key = np.mod(np.angle(pts), 2 * np.pi)
    order = np.argsort(key, kind="stable")
    pts, key = pts[order], key[order]
    keep = np.ones(len(pts), bool)
    if len(pts) > 1:
        keep[1:] = np.abs(np.diff(pts)) > resolution
    return pts[keep]


def limit_set_disk(table: OrbitTable, seeds) -> np.ndarray:
    pts = limit_set_sample(table, seeds)
    return cayley(pts) if table.model == HALFPLANE else pts
