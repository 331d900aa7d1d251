"""PNG pictures of polyominoes, tiered trees and coefficient comparisons."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .polyomino import LabelledPolyomino, bounce_path, path_points  # noqa: E402
from .trees import RootedTieredTree  # noqa: E402

__all__ = ["plot_polyomino", "plot_tree", "plot_coefficients"]

_COLOURS = {"red": "#c0392b", "green": "#27ae60", "black": "#111111"}


def plot_polyomino(P: LabelledPolyomino, path: str | Path, bounce: bool = True) -> Path:
    fig, ax = plt.subplots(figsize=(0.6 * P.m + 1, 0.6 * P.n + 1))
    for x in range(P.m + 1):
        ax.plot([x, x], [0, P.n], color="#dddddd", lw=0.5)
    for y in range(P.n + 1):
        ax.plot([0, P.m], [y, y], color="#dddddd", lw=0.5)
    for steps, colour in ((P.red, "red"), (P.green, "green")):
        xs, ys = zip(*path_points(steps))
        ax.plot(xs, ys, color=_COLOURS[colour], lw=2.5)
    for (x, y), value in P.labels:
        ax.text(x + 0.5, y + 0.5, str(value), ha="center", va="center", color=_COLOURS[P.colour((x, y))], fontsize=11)
    if bounce:
        xs, ys = zip(*bounce_path(P))
        ax.plot(xs, ys, color="#2c3e50", lw=1.5, ls=":")
    ax.set_aspect("equal")
    ax.axis("off")
    return _save(fig, path)


def plot_tree(T: RootedTieredTree, path: str | Path) -> Path:
    """Vertices drawn on horizontal lines, one per level."""
    by_level: dict = {}
    for v in sorted(range(T.size), key=lambda v: (T.levels[v], T.labels[v], v)):
        by_level.setdefault(T.levels[v], []).append(v)
    pos = {}
    for lv, vs in by_level.items():
        for k, v in enumerate(vs):
            pos[v] = (k - (len(vs) - 1) / 2, lv)
    fig, ax = plt.subplots(figsize=(max(3, 1.2 * max(len(vs) for vs in by_level.values())), 1 + 0.9 * len(by_level)))
    for lv in by_level:
        ax.axhline(lv, color="#eeeeee", lw=0.8, zorder=0)
    for a, b in T.edges():
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color=_COLOURS["red"], lw=1.5, zorder=1)
    for v, (x, y) in pos.items():
        face = "#f5d76e" if v == T.root else "white"
        ax.scatter([x], [y], s=320, color=face, edgecolors="black", zorder=2)
        ax.text(x, y, str(T.labels[v]), ha="center", va="center", fontsize=10, zorder=3)
    ax.set_yticks(sorted(by_level))
    ax.set_xticks([])
    for side in ("top", "right", "bottom"):
        ax.spines[side].set_visible(False)
    return _save(fig, path)


def plot_coefficients(title: str, lhs: list[int], rhs: list[int], path: str | Path) -> Path:
    """Side-by-side bars of q-coefficients of two polynomials."""
    size = max(len(lhs), len(rhs), 1)
    lhs = list(lhs) + [0] * (size - len(lhs))
    rhs = list(rhs) + [0] * (size - len(rhs))
    xs = range(size)
    fig, ax = plt.subplots(figsize=(max(4, 0.5 * size + 2), 3))
    ax.bar([x - 0.2 for x in xs], lhs, width=0.4, label="lhs", color="#2980b9")
    ax.bar([x + 0.2 for x in xs], rhs, width=0.4, label="rhs", color="#e67e22")
    ax.set_xlabel("power of q")
    ax.set_ylabel("coefficient")
    ax.set_title(title, fontsize=9)
    ax.set_xticks(list(xs))
    ax.legend()
    return _save(fig, path)


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path
