"""Plain SVG figures: the fundamental domain and its tiles, a field heatmap,
and a limit-set scatter, all in the disk model."""
from __future__ import annotations

import math
import os

import numpy as np

from .fundomain import FundamentalDomainView
from .group import limit_set_sample
from .harness import DIAGNOSTIC, Report, _limit_seeds, build_field, build_table
from .moebius import HALFPLANE, cayley

SIZE = 600
PAD = 20
_PALETTE = ["#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666"]


def _xy(z):
    s = (SIZE - 2 * PAD) / 2
    return PAD + s * (1 + z.real), PAD + s * (1 - z.imag)


def _polyline(pts, stroke, width=1.0, fill="none", opacity=1.0) -> str:
    pts = pts[np.isfinite(pts) & (np.abs(pts) <= 1 + 1e-9)]
    if len(pts) < 2:
        return ""
    coords = " ".join("{:.2f},{:.2f}".format(*_xy(z)) for z in pts)
    return (f'<polyline points="{coords}" fill="{fill}" stroke="{stroke}" '
            f'stroke-width="{width}" stroke-opacity="{opacity}"/>')


def _circle(z, r_px, fill) -> str:
    x, y = _xy(z)
    return f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r_px}" fill="{fill}"/>'


def _document(body: list, title: str) -> str:
    s = (SIZE - 2 * PAD) / 2
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
            f'viewBox="0 0 {SIZE} {SIZE}">\n<title>{title}</title>\n'
            f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>\n'
            f'<circle cx="{SIZE / 2}" cy="{SIZE / 2}" r="{s}" fill="none" stroke="black" stroke-width="1.5"/>\n')
    return head + "\n".join(b for b in body if b) + "\n</svg>\n"


def _apply(m, z):
    return (m[0, 0] * z + m[0, 1]) / (m[1, 0] * z + m[1, 1])


def domain_svg(view: FundamentalDomainView, max_tiles: int = 400) -> str:
    table = view.table
    body = []
    sides = view.sides()
    curves = [s.points(48) for s in sides]
    n = min(len(table), max_tiles)
    for i in range(n):
        k = int(table.word_lengths[i])
        if k == 0:
            continue
        m = table.disk_matrices[i]
        color = _PALETTE[(k - 1) % len(_PALETTE)]
        for pts in curves:
            body.append(_polyline(_apply(m, pts), color, 0.6, opacity=0.8))
    for pts in curves:
        body.append(_polyline(pts, "black", 2.0))
    ib = view.infinite_boundary()
    for a, b in ib.arcs:
        body.append(_polyline(np.exp(1j * np.linspace(a, b, 96)), "#0050c8", 4.0))
    for cp in ib.cusps:
        body.append(_circle(cp.point, 4, "#c80000"))
    return _document(body, f"Dirichlet domain, depth {view.depth}")


def field_svg(mu, grid: int = 160) -> str:
    xs = np.linspace(-1, 1, grid + 1)
    mid = (xs[:-1] + xs[1:]) / 2
    X, Y = np.meshgrid(mid, mid)
    Z = X + 1j * Y
    inside = np.abs(Z) < 1
    vals = np.zeros(Z.shape)
    vals[inside] = np.abs(mu(Z[inside])) ** 2
    top = max(float(vals.max()), 1e-300)
    cell = (SIZE - 2 * PAD) / grid
    body = []
    for iy in range(grid):
        for ix in range(grid):
            if not inside[iy, ix] or vals[iy, ix] <= 0:
                continue
            g = int(round(255 * (1 - vals[iy, ix] / top)))
            x, y = _xy(complex(xs[ix], xs[grid - iy]))
            body.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{cell:.2f}" height="{cell:.2f}" '
                        f'fill="rgb(255,{g},{g})"/>')
    return _document(body, f"|mu|^2 (max {top:.4g})")


def limit_set_svg(points) -> str:
    body = [_circle(z, 1.2, "black") for z in np.asarray(points, dtype=complex)]
    return _document(body, "limit set sample")


def cmd_render(cfg: dict) -> Report:
    rep = Report("render", cfg)
    out = cfg["out"] or "figures"
    os.makedirs(out, exist_ok=True)
    table = build_table(cfg["group"])
    view = FundamentalDomainView(table)
    files = {}
    files["domain.svg"] = domain_svg(view, int(cfg["render"]["max_tiles"]))
    mu = build_field(cfg, table, view)
    files["field.svg"] = field_svg(mu, int(cfg["render"]["grid"]))
    pts = limit_set_sample(table, _limit_seeds(table))
    if table.model == HALFPLANE:
        pts = cayley(pts[np.isfinite(pts)])
    files["limit_set.svg"] = limit_set_svg(pts)
    for name, text in files.items():
        with open(os.path.join(out, name), "w") as fh:
            fh.write(text)
    rep.add("figures", DIAGNOSTIC, table.max_word_len, "SVG figures written to the output directory",
            {"files": sorted(files), "n_sides": len(view.sides()), "n_tiles": min(len(table), cfg["render"]["max_tiles"]),
             "n_limit_points": int(len(pts)), "field_sup": float(mu.sup_norm) if math.isfinite(mu.sup_norm) else None})
    return rep
