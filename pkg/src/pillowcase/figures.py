"""Static SVG rendering of surfaces and flip traces.

One panel per state: the inner face is drawn solid in its own chart with its
three neighbors developed across the gluings (dashed), vertices tinted by
orbit. For a trace the initial coordinates are re-glued and the recorded
edge sequence replayed, so a trace with N steps renders N+1 panels. Output
is pinned down (fixed hash salt, no date stamp) so the same input always
produces the same bytes.
"""

from __future__ import annotations

import math
from typing import IO

import matplotlib

matplotlib.use("Agg")

from matplotlib import pyplot as plt  # noqa: E402  (backend must be set first)

from .config import DEFAULT_TOL, Tolerances
from .glued import GluedTriangulation, flip_edge, glue
from .surface import MarkedTriple, to_marked_triangle

_ORBIT_COLORS = {1: "#1f77b4", 2: "#2ca02c", 3: "#d62728", 4: "#7f7f7f"}


def _draw_state(ax, g: GluedTriangulation) -> None:
    inner = g.faces[0]
    xs = [v.x for v in inner.verts] + [inner.verts[0].x]
    ys = [v.y for v in inner.verts] + [inner.verts[0].y]
    ax.fill(xs, ys, color="#c6dbef", zorder=1)
    ax.plot(xs, ys, color="black", linewidth=1.2, zorder=3)
    for si in range(3):
        a, t = g.develop((0, si))
        gi = g.partner((0, si))[0]
        pts = [v.scaled(a) + t for v in g.faces[gi].verts]
        ax.plot(
            [p.x for p in pts] + [pts[0].x],
            [p.y for p in pts] + [pts[0].y],
            color="black",
            linewidth=0.7,
            linestyle="--",
            zorder=2,
        )
        for p, label in zip(pts, g.faces[gi].labels):
            ax.plot([p.x], [p.y], "o", color=_ORBIT_COLORS[label], markersize=3, zorder=4)
        mid = inner.vertex(si) + g.side((0, si)).scaled(0.5)
        ax.annotate(
            str(g.edge_ids[(0, si)]),
            (mid.x, mid.y),
            fontsize=7,
            ha="center",
            va="center",
            zorder=5,
        )
    for v, label in zip(inner.verts, inner.labels):
        ax.plot([v.x], [v.y], "o", color=_ORBIT_COLORS[label], markersize=4, zorder=4)
    ax.set_aspect("equal")
    ax.set_axis_off()


def _draw_marked_surface(ax, t: MarkedTriple) -> None:
    m = to_marked_triangle(t)
    corners = list(m.vertices) + [m.vertices[0]]
    ax.plot(
        [v.x for v in corners], [v.y for v in corners], color="black", linewidth=1.2
    )
    marks = list(m.marks) + [m.marks[0]]
    ax.plot(
        [p.x for p in marks],
        [p.y for p in marks],
        color="#1f77b4",
        linewidth=0.8,
        linestyle="--",
    )
    for i, p in enumerate(m.marks, start=1):
        ax.plot([p.x], [p.y], "o", color="#d62728", markersize=4)
        ax.annotate(f"p{i}", (p.x, p.y), fontsize=8, xytext=(3, 3), textcoords="offset points")
    ax.set_aspect("equal")
    ax.set_axis_off()


def _save(fig, out: str | IO[str]) -> None:
    with matplotlib.rc_context({"svg.hashsalt": "pillowcase"}):
        fig.savefig(out, format="svg", metadata={"Date": None})
    plt.close(fig)


def render_surface(t: MarkedTriple, out: str | IO[str]) -> int:
    """Single-panel picture of the marked triangle; returns the panel count."""
    fig, ax = plt.subplots(figsize=(4.0, 4.0))
    _draw_marked_surface(ax, t)
    _save(fig, out)
    return 1


def render_trace(
    initial: MarkedTriple,
    edges: list[int],
    out: str | IO[str],
    tol: Tolerances = DEFAULT_TOL,
) -> int:
    """Replay a recorded flip sequence and render every intermediate state."""
    states = [glue(to_marked_triangle(initial), tol)]
    for e in edges:
        states.append(flip_edge(states[-1], e, tol))
    n = len(states)
    ncols = min(3, n)
    nrows = math.ceil(n / ncols)
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(3.2 * ncols, 3.2 * nrows), squeeze=False
    )
    for idx, state in enumerate(states):
        ax = axes[idx // ncols][idx % ncols]
        _draw_state(ax, state)
        ax.set_title("initial" if idx == 0 else f"after edge {edges[idx - 1]}", fontsize=8)
    for idx in range(n, nrows * ncols):
        axes[idx // ncols][idx % ncols].set_visible(False)
    _save(fig, out)
    return n
