"""Figures written to files (SVG or PNG, chosen by extension).

Rendering only: coordinates come from already computed exact data and are
converted to floats here, never fed back into any computation.
"""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .model import PolygonSurface, StaircaseModel, build_staircase  # noqa: E402

_COLORS = {"parabolic": "#4477aa", "hyperbolic": "#cc6677", "unresolved": "#999933"}


def _xy(v):
    return float(v.x), float(v.y)


def _draw_polygon(ax, poly, **kw):
    pts = [_xy(v) for v in poly] + [_xy(poly[0])]
    ax.plot([p[0] for p in pts], [p[1] for p in pts], **kw)


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, bbox_inches="tight")
    plt.close(fig)
    return path


def plot_trace(surface: PolygonSurface, outcome, path, title: str = "") -> Path:
    """One panel per polygon with the recorded segments drawn on top."""
    k = len(surface.polygons)
    fig, axes = plt.subplots(1, k, figsize=(4 * k, 4), squeeze=False)
    for p, ax in enumerate(axes[0]):
        _draw_polygon(ax, surface.polygons[p], color="black", lw=1)
        for seg in outcome.segments:
            if seg.polygon != p:
                continue
            (x0, y0), (x1, y1) = _xy(seg.start), _xy(seg.end)
            ax.plot([x0, x1], [y0, y1], color="#228833", lw=0.8)
        if outcome.segments and outcome.segments[0].polygon == p:
            ax.plot(*_xy(outcome.segments[0].start), "o", color="#228833", ms=4)
        ax.set_aspect("equal")
        ax.set_title(f"polygon {p}", fontsize=9)
        ax.axis("off")
    if title:
        fig.suptitle(title, fontsize=10)
    return _save(fig, path)


def plot_staircase(model: StaircaseModel, path) -> Path:
    """The staircase polygons with the diagonal directions D_i from the origin."""
    surf = build_staircase(model.ctx)
    fig, ax = plt.subplots(figsize=(5, 5))
    for poly in surf.polygons:
        _draw_polygon(ax, poly, color="black", lw=1)
    xmax = max(float(v.x) for poly in surf.polygons for v in poly)
    ymax = max(float(v.y) for poly in surf.polygons for v in poly)
    for i, D in enumerate(model.diagonals):
        x, y = _xy(D)
        s = min(xmax / x if x else float("inf"), ymax / y if y else float("inf"))
        ax.plot([0, x * s], [0, y * s], color="#aaaaaa", lw=0.6, ls="--")
        ax.annotate(f"D{i}", (x * s, y * s), fontsize=7)
    ax.set_aspect("equal")
    ax.set_title(f"staircase, N = {model.N}", fontsize=10)
    return _save(fig, path)


def plot_survey(result: dict, path) -> Path:
    """Class counts and the distribution of expansion lengths."""
    recs = result["records"]
    stats = result["stats"]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.5))
    names = ["parabolic", "hyperbolic", "unresolved"]
    ax1.bar(names, [stats[n] for n in names], color=[_COLORS[n] for n in names])
    ax1.set_title(f"N = {stats['N']}, H = {stats['height']}: {stats['total']} directions", fontsize=10)
    for name in names:
        steps = Counter(r.steps for r in recs if r.cls == name)
        if steps:
            xs = sorted(steps)
            ax2.plot(xs, [steps[x] for x in xs], "o-", ms=3, color=_COLORS[name], label=name)
    ax2.set_xlabel("expansion steps")
    ax2.set_ylabel("directions")
    ax2.set_xscale("symlog")
    ax2.legend(fontsize=8)
    return _save(fig, path)
