"""Figure rendering for rank-2 fans and divisor polytopes.

Display-only: geometry is converted to floats here and nowhere else.
Figures are written to files (Agg backend); nothing is shown interactively.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .divisors import DivisorPolytope
from .fans import Fan


def _unit(ray):
    norm = math.hypot(*ray)
    return (ray[0] / norm, ray[1] / norm)


def draw_fan(fan: Fan, path, highlight=(), title=None):
    """Render a rank-2 fan: shaded maximal cones, labelled rays.

    Rays whose indices appear in ``highlight`` are drawn emphasized (used for
    subdivision output).  Raises ValueError for ranks other than 2.
    """
    if fan.rank != 2:
        raise ValueError("fan figures are rendered for rank 2 only")
    fig, ax = plt.subplots(figsize=(5, 5))
    for c in fan.max_cones:
        if len(c) != 2:
            continue
        u, v = _unit(fan.rays[c[0]]), _unit(fan.rays[c[1]])
        a0 = math.atan2(u[1], u[0])
        a1 = math.atan2(v[1], v[0])
        if (a1 - a0) % (2 * math.pi) > math.pi:
            a0, a1 = a1, a0
        sweep = (a1 - a0) % (2 * math.pi)
        arc = [a0 + sweep * k / 24 for k in range(25)]
        xs = [0.0] + [1.15 * math.cos(a) for a in arc]
        ys = [0.0] + [1.15 * math.sin(a) for a in arc]
        ax.fill(xs, ys, alpha=0.15, color="tab:blue", linewidth=0)
    highlight = set(highlight)
    for i, ray in enumerate(fan.rays):
        u = _unit(ray)
        color = "tab:red" if i in highlight else "black"
        width = 2.0 if i in highlight else 1.2
        ax.annotate(
            "",
            xy=u,
            xytext=(0, 0),
            arrowprops={"arrowstyle": "->", "color": color, "lw": width},
        )
        ax.text(1.22 * u[0], 1.22 * u[1], f"{i}: {tuple(ray)}", fontsize=8,
                ha="center", va="center", color=color)
    ax.set_xlim(-1.5, 1.5)
    ax.set_ylim(-1.5, 1.5)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def draw_polytope(polytope: DivisorPolytope, path, interior=None, title=None):
    """Render a rank-2 divisor polytope with its lattice points."""
    if polytope.rank != 2:
        raise ValueError("polytope figures are rendered for rank 2 only")
    verts = polytope.vertices()
    if not verts:
        raise ValueError("the polytope has no vertices to draw")
    cx = sum(float(v[0]) for v in verts) / len(verts)
    cy = sum(float(v[1]) for v in verts) / len(verts)
    ordered = sorted(verts, key=lambda v: math.atan2(float(v[1]) - cy, float(v[0]) - cx))
    xs = [float(v[0]) for v in ordered] + [float(ordered[0][0])]
    ys = [float(v[1]) for v in ordered] + [float(ordered[0][1])]
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.fill(xs, ys, alpha=0.2, color="tab:green")
    ax.plot(xs, ys, color="tab:green")
    lo_x = math.floor(min(xs)) - 1
    hi_x = math.ceil(max(xs)) + 1
    lo_y = math.floor(min(ys)) - 1
    hi_y = math.ceil(max(ys)) + 1
    for x in range(lo_x, hi_x + 1):
        for y in range(lo_y, hi_y + 1):
            inside = polytope.contains((x, y))
            ax.plot([x], [y], marker=".", color="black" if inside else "lightgray",
                    markersize=5 if inside else 3)
    if interior is not None:
        ax.plot([float(interior[0])], [float(interior[1])], marker="*",
                color="tab:red", markersize=12)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title, fontsize=10)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path
