"""Figures written next to the CLI's reports.  Matplotlib is imported lazily."""

from __future__ import annotations

import math

from .geometry import project
from .lattice import SurfaceContext, divisors


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "k3bn"  # stable ids for identical inputs
    return plt


def _save(fig, path):
    fig.savefig(path, metadata={"Date": None} if str(path).endswith(".svg") else None)


def plot_stability_plane(ctx: SurfaceContext, path, *, v=None, segment=None, marks=(), c_max: int = 6):
    """Parabola, Gamma boundary, short root projections, and optional overlays."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 5))
    pts = [project(v)] if v is not None and v[2] else []
    if segment is not None:
        pts += [segment.a, segment.b]
    pts += [project(u) for u in marks if u[2]]
    ymax = max([abs(float(p.y)) for p in pts] + [0.5]) * 1.3
    n = 400
    ys = [-ymax + 2 * ymax * i / n for i in range(n + 1)]
    g1 = ctx.g - 1
    ax.plot([g1 * y * y for y in ys], ys, color="black", lw=1, label="parabola")
    ax.plot([ctx.g * y * y for y in ys], ys, color="grey", lw=0.8, ls="--", label="Gamma boundary")
    xmax = max([float(p.x) for p in pts] + [1.2]) * 1.2
    roots = []
    for c0 in range(-c_max, c_max + 1):
        for r0 in divisors(g1 * c0 * c0 + 1):
            s0 = (g1 * c0 * c0 + 1) // r0
            x, y = r0 / s0, c0 / s0
            if x <= xmax and abs(y) <= ymax:
                roots.append((x, y))
    if roots:
        ax.scatter(*zip(*roots), s=8, color="tab:red", label="root projections", zorder=3)
    if segment is not None:
        ax.plot([float(segment.a.x), float(segment.b.x)], [float(segment.a.y), float(segment.b.y)],
                color="tab:blue", lw=2, label="segment")
    if v is not None and v[2]:
        p = project(v)
        ax.scatter([float(p.x)], [float(p.y)], marker="*", s=80, color="tab:green", label="v", zorder=4)
    if marks:
        mp = [project(u) for u in marks if u[2]]
        ax.scatter([float(p.x) for p in mp], [float(p.y) for p in mp], marker="x", color="tab:purple",
                   label="witnesses", zorder=4)
    ax.set_xlim(0, xmax)
    ax.set_ylim(-ymax, ymax)
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_title(f"stability plane, g = {ctx.g}")
    ax.legend(loc="upper left", fontsize=7)
    _save(fig, path)
    plt.close(fig)


def plot_model_polygon(ctx: SurfaceContext, pd, path):
    """Model polygon 0, z1, z2 with the auxiliary points z1', z1^{+d}, z2'."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4))
    outline = [(0, 0), pd.z1, pd.z2]
    ax.plot([float(p[0]) for p in outline] + [0], [float(p[1]) for p in outline] + [0],
            color="black", lw=1)
    labelled = {"z1": pd.z1, "z2": pd.z2, "z1'": pd.z1p, "z2'": pd.z2p, f"z1+{pd.d}": pd.z1_plus()}
    for name, p in labelled.items():
        ax.scatter([float(p[0])], [float(p[1])], s=14)
        ax.annotate(name, (float(p[0]), float(p[1])), textcoords="offset points", xytext=(4, 4), fontsize=8)
    ax.set_xlabel("r - s")
    ax.set_ylabel("c")
    ax.set_title(f"model polygon, g = {ctx.g}")
    _save(fig, path)
    plt.close(fig)


def plot_scan(rows, path):
    """Grid of (g, m) cells coloured by whether a vector was found."""
    plt = _pyplot()
    gs = sorted({r.g for r in rows})
    ms = sorted({r.m for r in rows})
    if not gs or not ms:
        return
    grid = [[math.nan] * len(gs) for _ in ms]
    for row in rows:
        grid[ms.index(row.m)][gs.index(row.g)] = 1.0 if row.v is not None else 0.0
    fig, ax = plt.subplots(figsize=(max(4, len(gs) * 0.4), max(3, len(ms) * 0.4)))
    ax.imshow(grid, origin="lower", cmap="RdYlGn", vmin=0, vmax=1,
              extent=(gs[0] - 0.5, gs[-1] + 0.5, ms[0] - 0.5, ms[-1] + 0.5), aspect="auto")
    ax.set_xlabel("g")
    ax.set_ylabel("m")
    ax.set_title("vector found (green) / none (red)")
    _save(fig, path)
    plt.close(fig)
