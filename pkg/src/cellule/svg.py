"""Static SVG picture of a rank-2 alcove window.

Exact coordinates are converted to floats only here, through the Euclidean
embedding fixed by the symmetrized Cartan matrix.
"""

from __future__ import annotations

import math

from .cells import LowestCell
from .coxeter import Element
from .errors import RankUnsupported

__all__ = ["window_elements", "render_svg"]

PALETTE = (
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
    "#b3de69", "#fccde5", "#bc80bd", "#ccebc5", "#ffed6f", "#e5c494",
)
GRAY = "#d9d9d9"
SCALE = 60.0


def _embedding(cartan) -> tuple[tuple[float, float], tuple[float, float]]:
    """Rows are the images of the fundamental coweight coordinates in R^2."""
    c01, c10 = cartan[0][1], cartan[1][0]
    # root lengths squared d_i with d_i C_ij symmetric
    d0, d1 = 1.0, (c01 / c10 if c10 else 1.0)
    # Gram of the simple coroots, then its inverse (Gram of the dual basis)
    g = [[4.0 * cartan[i][j] * (d0, d1)[i] / 2.0 / ((d0, d1)[i] * (d0, d1)[j]) for j in range(2)] for i in range(2)]
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    a, b, c = g[1][1] / det, -g[0][1] / det, g[0][0] / det
    # Cholesky of [[a, b], [b, c]]
    l00 = math.sqrt(a)
    l10 = b / l00
    l11 = math.sqrt(c - l10 * l10)
    return (l00, 0.0), (l10, l11)


def window_elements(LC: LowestCell, k: int) -> list[Element]:
    """Elements whose alcove satisfies -k <= k_alpha <= k - 1 for every positive root."""
    W = LC.W
    nroots = len(W.roots.roots)
    return [w for w in W.ball(nroots * k) if all(-k <= c <= k - 1 for c in w.key)]


def render_svg(LC: LowestCell, k: int = 2) -> str:
    W, G = LC.W, LC.geometry
    if W.rank != 2:
        raise RankUnsupported(f"plots need a rank-2 type, got rank {W.rank}")
    e0, e1 = _embedding(W.roots.cartan)

    def xy(p) -> tuple[float, float]:
        x = float(p[0]) * e0[0] + float(p[1]) * e1[0]
        y = float(p[0]) * e0[1] + float(p[1]) * e1[1]
        return round(x * SCALE, 3) + 0.0, round(-y * SCALE, 3) + 0.0

    elems = window_elements(LC, k)
    labels: dict[tuple, int] = {}
    polys, segments, points = [], {}, set()
    for w in elems:
        A = G.alcove_of(w)
        a = LC.assign_N(w)
        if a is None:
            fill = GRAY
        else:
            idx = labels.setdefault(a.label, len(labels))
            fill = PALETTE[idx % len(PALETTE)]
        pts = [xy(p) for p in A.vertices]
        cls = "alcove c0" if a is not None else "alcove"
        path = " ".join(f"{x},{y}" for x, y in pts)
        title = W.word_string(w)
        polys.append(f'<polygon class="{cls}" points="{path}" fill="{fill}"><title>{title}</title></polygon>')
        verts = A.vertices
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                p, q = verts[i], verts[j]
                for alpha in range(len(W.roots.roots)):
                    vp, vq = G.pair(alpha, p), G.pair(alpha, q)
                    if vp == vq and vp.denominator == 1:
                        key = (min(p, q), max(p, q))
                        segments[key] = G.hyperplane_weight((alpha, int(vp)))
        points.update(verts)
    top = G.max_m
    lines = []
    for (p, q), wt in sorted(segments.items()):
        (x1, y1), (x2, y2) = xy(p), xy(q)
        lines.append(
            f'<line class="wall weight-{wt}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke-width="{0.6 * wt:.1f}"/>'
        )
    marks = []
    for p in sorted(points):
        if G.m_value(p) == top:
            x, y = xy(p)
            marks.append(f'<circle class="special" cx="{x}" cy="{y}" r="3"/>')
    allxy = [xy(p) for p in points] or [(0.0, 0.0)]
    xs, ys = [c[0] for c in allxy], [c[1] for c in allxy]
    pad = 10
    vb = f"{min(xs) - pad:.3f} {min(ys) - pad:.3f} {max(xs) - min(xs) + 2 * pad:.3f} {max(ys) - min(ys) + 2 * pad:.3f}"
    weights = ",".join(f"{s}={x}" for s, x in zip(W.generators, W.weights))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{vb}">',
        f"<title>{W.descriptor.label} {weights} window {k}</title>",
        "<style>.wall{stroke:#333}.alcove{stroke:none}.special{fill:#c00}</style>",
        '<g id="alcoves">',
        *polys,
        "</g>",
        '<g id="walls">',
        *lines,
        "</g>",
        '<g id="special-points">',
        *marks,
        "</g>",
        "</svg>",
    ]
    return "\n".join(out) + "\n"

