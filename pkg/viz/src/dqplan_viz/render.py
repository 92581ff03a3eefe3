"""Static 3D figures from path exports.

Draws keep-out spheres, the exploration tree (when present), the
densified path polyline, and orientation arrows: at a configurable
sample stride, the chosen body axis is rotated by the sample quaternion
and drawn as a unit-direction arrow.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from mpl_toolkits.mplot3d.art3d import Line3DCollection

from .reader import PathDocument, SchemaError, load_path_document

BODY_AXES = {
    "x": (1.0, 0.0, 0.0),
    "y": (0.0, 1.0, 0.0),
    "z": (0.0, 0.0, 1.0),
}

# Renderer defaults are pinned so repeated renders of one export look alike.
STYLE = {
    "obstacle_color": "steelblue",
    "obstacle_alpha": 0.25,
    "tree_color": "#9ecae1",
    "tree_linewidth": 0.4,
    "tree_alpha": 0.5,
    "path_color": "crimson",
    "path_linewidth": 2.0,
    "arrow_color": "darkgreen",
    "start_color": "black",
    "goal_color": "gold",
    "elev": 22.0,
    "azim": -60.0,
    "dpi": 150,
}


@dataclass(frozen=True)
class RenderOptions:
    """Knobs for a render: arrow placement, tree visibility, output."""

    arrow_stride: int = 10
    arrow_axis: str = "x"
    show_tree: bool = False
    output: str = "path.png"
    figure_size: tuple[float, float] = (8.0, 7.0)
    arrow_length: float | None = None  # None: 4% of the scene diagonal

    def __post_init__(self) -> None:
        if self.arrow_stride < 1:
            raise ValueError(f"arrow_stride must be >= 1, got {self.arrow_stride}")
        if self.arrow_axis not in BODY_AXES:
            raise ValueError(f"arrow_axis must be one of {sorted(BODY_AXES)}")


def rotate_axis(rotation: tuple[float, float, float, float], axis: tuple[float, float, float]):
    """Rotate a body axis by a unit quaternion (w, x, y, z).

    The one piece of math this package owns; everything else is read
    from the export file.
    """
    w, x, y, z = rotation
    ax, ay, az = axis
    # q [0, v] q^* expanded
    tx = 2.0 * (y * az - z * ay)
    ty = 2.0 * (z * ax - x * az)
    tz = 2.0 * (x * ay - y * ax)
    return (
        ax + w * tx + y * tz - z * ty,
        ay + w * ty + z * tx - x * tz,
        az + w * tz + x * ty - y * tx,
    )


def arrow_indices(sample_count: int, stride: int) -> list[int]:
    """Every stride-th sample plus the final one (endpoint orientation
    always shown)."""
    indices = list(range(0, sample_count, stride))
    if indices[-1] != sample_count - 1:
        indices.append(sample_count - 1)
    return indices


def path_arrows(doc: PathDocument, options: RenderOptions):
    """(base point, unit direction) per drawn arrow, in sample order."""
    axis = BODY_AXES[options.arrow_axis]
    return [
        (doc.samples[i].translation, rotate_axis(doc.samples[i].rotation, axis))
        for i in arrow_indices(len(doc.samples), options.arrow_stride)
    ]


def _scene_bounds(doc: PathDocument):
    points = [doc.bounds_min, doc.bounds_max]
    points.extend(s.translation for s in doc.samples)
    for zone in doc.obstacles:
        c, r = zone.center, zone.radius
        points.append((c[0] - r, c[1] - r, c[2] - r))
        points.append((c[0] + r, c[1] + r, c[2] + r))
    arr = np.asarray(points)
    return arr.min(axis=0), arr.max(axis=0)


def _draw_scene(ax, doc: PathDocument, options: RenderOptions, limits=None) -> None:
    lo, hi = limits if limits is not None else _scene_bounds(doc)
    diagonal = float(np.linalg.norm(hi - lo))
    arrow_length = options.arrow_length if options.arrow_length is not None else 0.04 * diagonal

    u = np.linspace(0.0, 2.0 * math.pi, 24)
    v = np.linspace(0.0, math.pi, 14)
    cos_u, sin_u = np.cos(u), np.sin(u)
    sin_v, cos_v = np.sin(v), np.cos(v)
    for zone in doc.obstacles:
        cx, cy, cz = zone.center
        r = zone.radius
        xs = cx + r * np.outer(cos_u, sin_v)
        ys = cy + r * np.outer(sin_u, sin_v)
        zs = cz + r * np.outer(np.ones_like(u), cos_v)
        ax.plot_surface(
            xs, ys, zs,
            color=STYLE["obstacle_color"], alpha=STYLE["obstacle_alpha"],
            linewidth=0, shade=True,
        )

    if options.show_tree:
        if doc.tree is None:
            warnings.warn("export carries no tree snapshot; rendering the path only")
        elif doc.tree:
            ax.add_collection3d(
                Line3DCollection(
                    [np.asarray(edge) for edge in doc.tree],
                    colors=STYLE["tree_color"],
                    linewidths=STYLE["tree_linewidth"],
                    alpha=STYLE["tree_alpha"],
                )
            )

    track = np.asarray([s.translation for s in doc.samples])
    ax.plot(
        track[:, 0], track[:, 1], track[:, 2],
        color=STYLE["path_color"], linewidth=STYLE["path_linewidth"],
    )
    ax.scatter(*track[0], color=STYLE["start_color"], s=30, depthshade=False)
    ax.scatter(*track[-1], color=STYLE["goal_color"], s=40, marker="*", depthshade=False)

    arrows = path_arrows(doc, options)
    bases = np.asarray([a[0] for a in arrows])
    directions = np.asarray([a[1] for a in arrows])
    ax.quiver(
        bases[:, 0], bases[:, 1], bases[:, 2],
        directions[:, 0], directions[:, 1], directions[:, 2],
        length=arrow_length, normalize=True, color=STYLE["arrow_color"], linewidth=1.2,
    )

    ax.set_xlim(lo[0], hi[0])
    ax.set_ylim(lo[1], hi[1])
    ax.set_zlim(lo[2], hi[2])
    ax.set_box_aspect(tuple(np.maximum(hi - lo, 1e-9)))
    ax.view_init(elev=STYLE["elev"], azim=STYLE["azim"])
    ax.set_xlabel("x (m)")
    ax.set_ylabel("y (m)")
    ax.set_zlabel("z (m)")


def render(path_file, options: RenderOptions) -> str:
    """Render one export to a raster image; returns the output file name."""
    doc = load_path_document(path_file)
    fig = plt.figure(figsize=options.figure_size)
    ax = fig.add_subplot(111, projection="3d")
    _draw_scene(ax, doc, options)
    ax.set_title(f"{doc.scenario_name} [{doc.mode}] cost={doc.cost:.2f}")
    fig.tight_layout()
    fig.savefig(options.output, dpi=STYLE["dpi"])
    plt.close(fig)
    return options.output


def render_compare(path_file_a, path_file_b, options: RenderOptions) -> str:
    """Render two exports of the same scenario side by side with identical
    camera and axis limits.

    Raises:
        SchemaError: if the files do not share a scenario hash.
    """
    doc_a = load_path_document(path_file_a)
    doc_b = load_path_document(path_file_b)
    if doc_a.scenario_hash != doc_b.scenario_hash:
        raise SchemaError(
            "scenario hash mismatch: the two exports were not planned on the same scenario"
        )
    lo_a, hi_a = _scene_bounds(doc_a)
    lo_b, hi_b = _scene_bounds(doc_b)
    limits = (np.minimum(lo_a, lo_b), np.maximum(hi_a, hi_b))

    width, height = options.figure_size
    fig = plt.figure(figsize=(2.0 * width, height))
    for index, doc in enumerate((doc_a, doc_b), start=1):
        ax = fig.add_subplot(1, 2, index, projection="3d")
        _draw_scene(ax, doc, options, limits=limits)
        ax.set_title(f"{doc.scenario_name} [{doc.mode}] cost={doc.cost:.2f}")
    fig.tight_layout()
    fig.savefig(options.output, dpi=STYLE["dpi"])
    plt.close(fig)
    return options.output
