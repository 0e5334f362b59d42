"""Matplotlib figures for the report directory.

Every function draws into a new figure and saves a PNG; nothing is shown.
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from mpl_toolkits.mplot3d.art3d import Poly3DCollection  # noqa: E402

from .hyperbolic_tiler import geodesic_points  # noqa: E402


def _disk_axes(title):
    fig, ax = plt.subplots(figsize=(6, 6))
    ax.add_patch(plt.Circle((0, 0), 1, fill=False, color="0.6", lw=0.8))
    ax.set_xlim(-1.05, 1.05)
    ax.set_ylim(-1.05, 1.05)
    ax.set_aspect("equal")
    ax.axis("off")
    ax.set_title(title)
    return fig, ax


def _geodesic_polyline(points, closed=True):
    pts = list(points) + ([points[0]] if closed else [])
    xs, ys = [], []
    for p, q in zip(pts, pts[1:]):
        seg = geodesic_points(p, q, 12)
        xs.extend(z.real for z in seg)
        ys.extend(z.imag for z in seg)
    return xs, ys


def plot_tiling(tiles, path):
    fig, ax = _disk_axes(f"(pi/4, pi/4, pi/4) tiling, {len(tiles)} triangles")
    for t in tiles:
        xs, ys = _geodesic_polyline(t.corners)
        ax.fill(xs, ys, color="#dfe7f1" if len(t.word) % 2 else "#f4f4f4", lw=0)
        ax.plot(xs, ys, color="0.2", lw=0.3)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def plot_chart(chart, chains, path):
    fig, ax = _disk_axes("16-gon with Petrie geodesics")
    for pts, _ in chart.triangles:
        xs, ys = _geodesic_polyline(pts)
        ax.fill(xs, ys, color="#eef2f7", lw=0)
        ax.plot(xs, ys, color="#8899aa", lw=0.4)
    xs, ys = _geodesic_polyline(chart.boundary)
    ax.plot(xs, ys, color="k", lw=1.5)
    for ch in chains:
        for p, q in ch.segments:
            seg = geodesic_points(p, q, 8)
            ax.plot([z.real for z in seg], [z.imag for z in seg], color="#c0392b", lw=0.8, ls="--")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def plot_flat(flat, path):
    fig, ax = plt.subplots(figsize=(6, 6))
    pts = flat.boundary + flat.boundary[:1]
    ax.fill([p.real for p in pts], [p.imag for p in pts], color="#f7efe2", alpha=0.6)
    ax.plot([p.real for p in pts], [p.imag for p in pts], color="k", lw=1.2)
    ax.plot([0], [0], "o", color="#c0392b")
    cones = ", ".join(f"{k}: {v / math.pi:.3g}pi" for k, v in sorted(flat.meta["cones"].items()))
    ax.set_title(f"flat chart k = {tuple(flat.meta['k'])}\n{cones}", fontsize=9)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def plot_mesh(patch, path):
    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    polys = [[tuple(float(c) for c in p) for p in t] for t in patch.triangles]
    ax.add_collection3d(Poly3DCollection(polys, facecolor="#9db4d0", edgecolor="#334", lw=0.2, alpha=0.9))
    coords = [c for t in polys for p in t for c in p]
    lo, hi = min(coords), max(coords)
    ax.set_xlim(lo, hi)
    ax.set_ylim(lo, hi)
    ax.set_zlim(lo, hi)
    ax.set_title(f"periodic patch, {len(polys)} triangles")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def plot_weights(weights, path):
    """Bar chart of Weierstrass weights by place, scaled by place degree."""
    fig, ax = plt.subplots(figsize=(7, 3.5))
    labels = [w["place"].split(";")[0] for w in weights]
    ax.bar(range(len(weights)), [w["gap_weight"] * w["degree"] for w in weights], color="#5b7fa6")
    ax.set_xticks(range(len(weights)))
    ax.set_xticklabels(labels, rotation=30, ha="right", fontsize=7)
    ax.set_ylabel("weight x degree")
    ax.set_title("Weierstrass weights (total 24)")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
