"""Run configuration: a TOML file merged over per-command defaults.

Schema (all sections optional; unknown keys are rejected)::

    seed = 0                 # seeds every random sample
    workers = 1              # process pool size for query grids
    out = "reports"          # output directory (omit to print only)
    format = "json"          # json | text (stdout rendering)

    [group]
    kind = "schottky"        # trivial | cyclic | schottky | rubel_ryff
    model = "halfplane"      # schottky generators: halfplane | disk
    pairs = [[[-3.0, 1.0], [3.0, 1.0]]]   # ((center, radius), (center, radius)) per generator
    n_max = 5                # rubel_ryff
    dilation = 2.0           # cyclic: z -> dilation * z on the half-plane
    depth = 6                # maximal word length
    height_cutoff = 0.0

    [field]
    kind = "ball"            # zero | constant | power_decay | ball | sector | grid
    c = [0.4, 0.2]           # complex value as [re, im] (or a real number)
    alpha = 0.5              # power_decay exponent
    center = [0.0, 0.1]      # ball centre (disk)
    radius_fraction = 0.5    # ball radius as a fraction of the distance to the sides of F
    radius = 0.0             # explicit ball radius (overrides the fraction when > 0)
    ball_radius = 1.0        # sector: radius of the balls around the cusps
    path = ""                # grid: 4-column text file x y re im
    model = "disk"           # constant / grid model
    extend = true            # extend a compactly supported field invariantly

    [query]
    xi = "boundary"          # boundary (F at infinity) | uniform | cusps
    n_xi = 16                # uniform samples (randomly rotated by the seed)
    n_per_arc = 3            # boundary: samples per free arc
    r_max = 1.0
    k_max = 5                # dyadic radii r_max 2^-k, k = 0..k_max
    restriction = "none"     # none | domain

    [tolerance]
    quadrature = 1e-6
    orbit_factor = 5.0

    [thm13]
    orbit_queries = [[0.3, 1.0], [1.5707963267948966, 0.8]]   # (angle, r)
    length_depth = 4
    length_points = 128
    n_xi_global = 8

    [sec4]
    n_max = 7
    depth = 2
    c = 0.5
    ball_radius = 1.0
    decay_ratio = 0.8
    stability = 0.1
    diagnostic_depths = [1, 2]
    n_xi_global = 4
    r_global = [0.5, 0.25]
    global_tol = 1e-4        # the global trend is a diagnostic; a looser tolerance keeps it cheap

    [denjoy]
    set = "cantor"           # cantor | intervals | punctures | limit_set
    levels = [8, 12]
    fraction = 0.3333333333333333
    intervals = [[0.0, 1.0]]
    n_max = 5
    eps = [0.1, 0.01, 0.001]
    stabilization = 0.05

    [render]
    grid = 160
    max_tiles = 400
"""
from __future__ import annotations

import copy
import math
import sys

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class ConfigError(ValueError):
    pass


DEFAULTS = {
    "seed": 0,
    "workers": 1,
    "out": None,
    "format": "json",
    "group": {
        "kind": "schottky",
        "model": "halfplane",
        "pairs": [[[-3.0, 1.0], [3.0, 1.0]]],
        "n_max": 5,
        "dilation": 2.0,
        "depth": 6,
        "height_cutoff": 0.0,
    },
    "field": {
        "kind": "ball",
        "c": [0.4, 0.2],
        "alpha": 0.5,
        "center": [0.0, 0.1],
        "radius_fraction": 0.5,
        "radius": 0.0,
        "ball_radius": 1.0,
        "path": "",
        "model": "disk",
        "extend": True,
    },
    "query": {
        "xi": "boundary",
        "n_xi": 16,
        "n_per_arc": 3,
        "r_max": 1.0,
        "k_max": 5,
        "restriction": "none",
    },
    "tolerance": {"quadrature": 1e-6, "orbit_factor": 5.0},
    "thm13": {
        "orbit_queries": [[0.3, 1.0], [math.pi / 2, 0.8]],
        "length_depth": 4,
        "length_points": 128,
        "n_xi_global": 8,
    },
    "sec4": {
        "n_max": 7,
        "depth": 2,
        "c": 0.5,
        "ball_radius": 1.0,
        "decay_ratio": 0.8,
        "stability": 0.1,
        "diagnostic_depths": [1, 2],
        "n_xi_global": 4,
        "r_global": [0.5, 0.25],
        "global_tol": 1e-4,
    },
    "denjoy": {
        "set": "cantor",
        "levels": [8, 12],
        "fraction": 1.0 / 3.0,
        "intervals": [[0.0, 1.0]],
        "n_max": 5,
        "eps": [0.1, 0.01, 0.001],
        "stabilization": 0.05,
    },
    "render": {"grid": 160, "max_tiles": 400},
}

_CHOICES = {
    ("format",): ("json", "text"),
    ("group", "kind"): ("trivial", "cyclic", "schottky", "rubel_ryff"),
    ("group", "model"): ("halfplane", "disk"),
    ("field", "kind"): ("zero", "constant", "power_decay", "ball", "sector", "grid"),
    ("field", "model"): ("halfplane", "disk"),
    ("query", "xi"): ("boundary", "uniform", "cusps"),
    ("query", "restriction"): ("none", "domain"),
    ("denjoy", "set"): ("cantor", "intervals", "punctures", "limit_set"),
}


def _merge(base: dict, over: dict, path=()) -> dict:
    out = copy.deepcopy(base)
    for k, v in over.items():
        if k not in base:
            raise ConfigError(f"unknown config key {'.'.join(path + (k,))!r}")
        if isinstance(base[k], dict):
            if not isinstance(v, dict):
                raise ConfigError(f"{'.'.join(path + (k,))} must be a table")
            out[k] = _merge(base[k], v, path + (k,))
        else:
            out[k] = v
    return out


def _positive(cfg, *path, integer=False, allow_zero=False):
    v = cfg
    for p in path:
        v = v[p]
    name = ".".join(path)
    if integer and (not isinstance(v, int) or isinstance(v, bool)):
        raise ConfigError(f"{name} must be an integer")
    if not isinstance(v, (int, float)) or isinstance(v, bool):
        raise ConfigError(f"{name} must be a number")
    if v < 0 or (v == 0 and not allow_zero):
        raise ConfigError(f"{name} must be positive")


def validate(cfg: dict) -> dict:
    for path, choices in _CHOICES.items():
        v = cfg
        for p in path:
            v = v[p]
        if v not in choices:
            raise ConfigError(f"{'.'.join(path)} = {v!r}; choose from {list(choices)}")
    _positive(cfg, "group", "depth", integer=True)
    _positive(cfg, "group", "n_max", integer=True)
    _positive(cfg, "group", "height_cutoff", allow_zero=True)
    _positive(cfg, "tolerance", "quadrature")
    _positive(cfg, "tolerance", "orbit_factor")
    _positive(cfg, "workers", integer=True)
    _positive(cfg, "seed", integer=True, allow_zero=True)
    _positive(cfg, "query", "r_max")
    _positive(cfg, "query", "k_max", integer=True, allow_zero=True)
    _positive(cfg, "query", "n_xi", integer=True)
    _positive(cfg, "sec4", "n_max", integer=True)
    _positive(cfg, "sec4", "depth", integer=True)
    _positive(cfg, "sec4", "ball_radius")
    _positive(cfg, "sec4", "global_tol")
    _positive(cfg, "render", "grid", integer=True)
    if cfg["group"]["kind"] == "schottky" and not cfg["group"]["pairs"]:
        raise ConfigError("group.pairs must list at least one pair")
    if any(not isinstance(d, int) or d < 1 for d in cfg["sec4"]["diagnostic_depths"]):
        raise ConfigError("sec4.diagnostic_depths must be integers >= 1")
    if cfg["field"]["kind"] == "grid" and not cfg["field"]["path"]:
        raise ConfigError("field.path is required for a grid field")
    if not 0 < cfg["denjoy"]["fraction"] < 1:
        raise ConfigError("denjoy.fraction must lie in (0, 1)")
    if any(e <= 0 for e in cfg["denjoy"]["eps"]):
        raise ConfigError("denjoy.eps values must be positive")
    c = as_complex(cfg["field"]["c"])
    if abs(c) >= 1:
        raise ConfigError("field.c must have modulus < 1")
    return cfg


def as_complex(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise ConfigError(f"complex values are [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return complex(v)
    raise ConfigError(f"cannot read {v!r} as a complex number")


def load_config(path: str | None = None, overrides: dict | None = None) -> dict:
    raw = {}
    if path:
        try:
            with open(path, "rb") as fh:
                raw = tomllib.load(fh)
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"bad TOML in {path}: {exc}") from exc
    cfg = _merge(DEFAULTS, raw)
    for dotted, v in (overrides or {}).items():
        if v is None:
            continue
        node = cfg
        *head, last = dotted.split(".")
        for p in head:
            node = node[p]
        node[last] = v
    return validate(cfg)
