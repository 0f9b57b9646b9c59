"""SVG pictures of the embedded power graph for q <= 3.

For q = 2 the picture is phi itself; for q = 3 points are projected by
(x, y, z) -> (x + 0.35 z, y + 0.35 z).  Output is plain text assembled in a
fixed order, so the same complex always gives the same bytes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cubes import CellComplex, cube_vertices, power_graph
from .resolution import cell_label

SCALE = 90
MARGIN = 60
DEPTH = 0.35


@dataclass(frozen=True)
class RenderScene:
    points: dict[tuple[int, ...], tuple[float, float]]  # composition -> plane point
    labels: dict[tuple[int, ...], str]
    edges: list[tuple[tuple[int, ...], tuple[int, ...]]]  # tail, head
    squares: list[list[tuple[float, float]]]  # corner polygons of the 2-cells


def project(p: tuple[int, ...]) -> tuple[float, float]:
    if len(p) == 1:
        return (float(p[0]), 0.0)
    if len(p) == 2:
        return (float(p[0]), float(p[1]))
    if len(p) == 3:
        x, y, z = p
        return (x + DEPTH * z, y + DEPTH * z)
    raise ValueError(f"cannot draw a {len(p)}-dimensional embedding")


def build_scene(cx: CellComplex) -> RenderScene:
    if cx.q > 3:
        raise ValueError(f"rendering needs q <= 3, got q = {cx.q}")
    tree = cx.tree
    points, labels = {}, {}
    for c in cx.cells[0]:
        points[c.sink] = project(cx.coords(c.sink))
        labels[c.sink] = str(cell_label(tree, c))
    edges = [(a, b) for a, b, _ in power_graph(tree, cx.r).edges]
    squares = []
    if len(cx.cells) > 2:
        for c in cx.cells[2]:
            v = cube_vertices(tree, c)  # bitmask order: 0, 1, 2, 3 -> go round as 0, 1, 3, 2
            squares.append([points[v[k]] for k in (0, 1, 3, 2)])
    return RenderScene(points, labels, edges, squares)


def _fmt(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(obj) -> str:
    scene = obj if isinstance(obj, RenderScene) else build_scene(obj)
    xs = [p[0] for p in scene.points.values()]
    ys = [p[1] for p in scene.points.values()]
    width = (max(xs) - min(xs)) * SCALE + 2 * MARGIN
    height = (max(ys) - min(ys)) * SCALE + 2 * MARGIN
    x0, y1 = min(xs), max(ys)

    def screen(p):
        # y grows upward in the picture, downward in SVG
        return _fmt((p[0] - x0) * SCALE + MARGIN), _fmt((y1 - p[1]) * SCALE + MARGIN)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="10" refY="5" markerWidth="7" markerHeight="7" '
        'orient="auto-start-reverse"><path d="M 0 0 L 10 5 L 0 10 z" fill="#222"/></marker>',
        "</defs>",
        '<g class="cells">',
    ]
    for poly in scene.squares:
        pts = " ".join(",".join(screen(p)) for p in poly)
        out.append(f'<polygon points="{pts}" fill="#c8d8ec" fill-opacity="0.6" stroke="none"/>')
    out.append("</g>")
    out.append('<g class="edges" stroke="#222" stroke-width="1.5">')
    shrink = 0.12  # stop short of the vertex dots
    for a, b in scene.edges:
        pa, pb = scene.points[a], scene.points[b]
        dx, dy = pb[0] - pa[0], pb[1] - pa[1]
        norm = (dx * dx + dy * dy) ** 0.5
        ux, uy = dx / norm * shrink, dy / norm * shrink
        (x1, y1_), (x2, y2) = screen((pa[0] + ux, pa[1] + uy)), screen((pb[0] - ux, pb[1] - uy))
        out.append(f'<line x1="{x1}" y1="{y1_}" x2="{x2}" y2="{y2}" marker-end="url(#arrow)"/>')
    out.append("</g>")
    out.append('<g class="vertices" font-family="serif" font-size="13">')
    for a in sorted(scene.points):
        x, y = screen(scene.points[a])
        out.append(f'<circle cx="{x}" cy="{y}" r="3.5" fill="#222"/>')
        out.append(f'<text x="{x}" y="{y}" dx="6" dy="-7">{scene.labels[a]}</text>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
