"""Basins of attraction on planar grids and their PPM rendering."""

from __future__ import annotations

import colorsys
from dataclasses import dataclass
from pathlib import Path

from .bench import run_samples
from .config import SolverConfig, profile
from .corpus import Problem
from .gfun import StabilizerFn
from .numerics import norm2

CLUSTER_TOL = 1e-4


@dataclass
class BasinImage:
    width: int
    height: int
    x_range: tuple
    y_range: tuple
    labels: list  # rows, top row first; 0 = no convergence
    root_table: list
    iteration_counts: list

    def fraction(self, label: int) -> float:
        hits = sum(row.count(label) for row in self.labels)
        return hits / (self.width * self.height)

    @property
    def nonconvergent_fraction(self) -> float:
        return self.fraction(0)

    def pixel_center(self, row: int, col: int) -> tuple:
        return pixel_center(row, col, self.width, self.height, self.x_range, self.y_range)


def pixel_center(row, col, width, height, x_range, y_range):
    """Initial condition of a pixel; ``row`` 0 is the top edge (largest y)."""
    (x0, x1), (y0, y1) = x_range, y_range
    x = x0 + (col + 0.5) * (x1 - x0) / width
    y = y1 - (row + 0.5) * (y1 - y0) / height
    return (x, y)


def cluster_roots(points, tol):
    """Greedy clustering against representatives (not against every member).

    Returns ``(root_table, assignments)`` with 0-based indices.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    table = []
    assignments = []
    for p in points:
        p = tuple(p) if isinstance(p, (list, tuple)) else (p,)
        for idx, r in enumerate(table):
            if norm2([a - b for a, b in zip(p, r)]) <= tol:
                assignments.append(idx)
                break
        else:
            table.append(p)
            assignments.append(len(table) - 1)
    return table, assignments


def compute_basins(problem: Problem, cfg: SolverConfig | None = None, width: int = 200, height: int = 200,
                   x_range=(-2.0, 2.0), y_range=(-2.0, 2.0), tol: float = CLUSTER_TOL,
                   jobs: int = 1) -> BasinImage:
    """Solve from every pixel center, then label pixels by discovered root.

    Labels are assigned single-threaded in row-major order after all solves,
    so the image does not depend on ``jobs``.
    """
    if problem.dim != 2 or problem.kind != "system":
        raise ValueError(f"basins need a planar system, got {problem.id} ({problem.kind}, dim {problem.dim})")
    if cfg is None:
        cfg = profile("table3", "normal", StabilizerFn("tanh"))
    starts = [pixel_center(r, c, width, height, x_range, y_range)
              for r in range(height) for c in range(width)]
    (results,) = run_samples(problem, [cfg], starts, jobs)

    converged = [res[3] for res in results if res[0]]
    table, assign = cluster_roots(converged, tol)
    flat = []
    it = iter(assign)
    for res in results:
        flat.append(next(it) + 1 if res[0] else 0)
    labels = [flat[r * width:(r + 1) * width] for r in range(height)]
    counts = [[res[1] for res in results[r * width:(r + 1) * width]] for r in range(height)]
    return BasinImage(width, height, tuple(x_range), tuple(y_range), labels, table, counts)


def default_palette(n_roots: int) -> list:
    """Black for label 0, then evenly spaced saturated hues."""
    colors = [(0, 0, 0)]
    for i in range(n_roots):
        h = (i * 0.618033988749895) % 1.0
        r, g, b = colorsys.hsv_to_rgb(h, 0.85, 0.95)
        colors.append((round(r * 255), round(g * 255), round(b * 255)))
    return colors


def ppm_bytes(image: BasinImage, palette=None, shade: bool = False) -> bytes:
    n_roots = len(image.root_table)
    if palette is None:
        palette = default_palette(n_roots)
    if len(palette) < n_roots + 1:
        raise ValueError(f"palette has {len(palette)} colors, need {n_roots + 1}")
    header = f"P6\n{image.width} {image.height}\n255\n".encode("ascii")
    body = bytearray()
    top = max((c for row in image.iteration_counts for c in row), default=1) or 1
    for labels, counts in zip(image.labels, image.iteration_counts):
        for lab, cnt in zip(labels, counts):
            r, g, b = palette[lab]
            if shade and lab:
                k = 1.0 - 0.7 * cnt / top
                r, g, b = int(r * k), int(g * k), int(b * k)
            body += bytes((r, g, b))
    return header + bytes(body)


def render_ppm(image: BasinImage, palette=None, path=None, shade: bool = False) -> bytes:
    """Write the labels as a binary P6 image, top-left pixel first.

    ``shade`` darkens pixels by iteration count; off by default.
    """
    data = ppm_bytes(image, palette, shade)
    if path is not None:
        path = Path(path)
        try:
            path.write_bytes(data)
        except OSError as exc:
            raise OSError(f"cannot write image to {path}: {exc}") from exc
    return data
