"""Symmetric biplot maps as standalone SVG 1.1 documents."""
from dataclasses import dataclass
from xml.sax.saxutils import escape

import numpy as np

from ..errors import MissingAxis
from ..pipelines import DISPLAY_NAMES

PLOT_SIZE = 400.0
MARGIN = 0.1 * PLOT_SIZE
ROW_COLOR = "#1f4fbf"
COL_COLOR = "#c0271f"


@dataclass(frozen=True)
class BiplotSpec:
    title: str
    rows: tuple       # (label, x, y)
    cols: tuple
    x_caption: str
    y_caption: str


def biplot_spec(result, axes=(1, 2)):
    """Collect the points of a symmetric map on two 1-based axes."""
    a, b = axes
    n = len(result.dispersion)
    for ax in (a, b):
        if ax < 1 or ax > n:
            raise MissingAxis(f"axis {ax} not extracted ({result.method} has {n} axes)")
    F, G = result.row_coords, result.col_coords
    deltas = result.dispersion
    rows = tuple(
        (label, float(F[i, a - 1]), float(F[i, b - 1])) for i, label in enumerate(result.row_labels)
    )
    cols = tuple(
        (label, float(G[j, a - 1]), float(G[j, b - 1])) for j, label in enumerate(result.col_labels)
    )
    return BiplotSpec(
        title=f"{DISPLAY_NAMES[result.method]} map",
        rows=rows,
        cols=cols,
        x_caption=f"Axis {a} (δ={deltas[a - 1]:.3f})",
        y_caption=f"Axis {b} (δ={deltas[b - 1]:.3f})",
    )


def _num(v):
    text = f"{v:.2f}"
    return "0.00" if text == "-0.00" else text


def render_spec(spec):
    points = [(x, y) for _, x, y in spec.rows + spec.cols] + [(0.0, 0.0)]
    xs = np.array([p[0] for p in points])
    ys = np.array([p[1] for p in points])
    x_lo, x_hi = xs.min(), xs.max()
    y_lo, y_hi = ys.min(), ys.max()
    span = max(x_hi - x_lo, y_hi - y_lo)
    scale = PLOT_SIZE / span if span > 0 else 1.0
    width = (x_hi - x_lo) * scale + 2 * MARGIN
    height = (y_hi - y_lo) * scale + 2 * MARGIN

    def px(x):
        return MARGIN + (x - x_lo) * scale

    def py(y):
        return MARGIN + (y_hi - y) * scale

    ox, oy = px(0.0), py(0.0)
    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        f"<title>{escape(spec.title)}</title>",
        f'<rect class="background" x="0" y="0" width="{_num(width)}" '
        f'height="{_num(height)}" fill="white"/>',
        f'<line class="axis" x1="0" y1="{_num(oy)}" x2="{_num(width)}" y2="{_num(oy)}" '
        'stroke="#888888" stroke-dasharray="4,3"/>',
        f'<line class="axis" x1="{_num(ox)}" y1="0" x2="{_num(ox)}" y2="{_num(height)}" '
        'stroke="#888888" stroke-dasharray="4,3"/>',
        f'<text class="caption" x="{_num(width - 4)}" y="{_num(oy - 4)}" '
        f'text-anchor="end" font-size="11">{escape(spec.x_caption)}</text>',
        f'<text class="caption" x="{_num(ox + 4)}" y="12" font-size="11">'
        f"{escape(spec.y_caption)}</text>",
    ]
    for label, x, y in spec.rows:
        cx, cy = px(x), py(y)
        out.append(
            f'<circle class="row-point" cx="{_num(cx)}" cy="{_num(cy)}" r="3" fill="{ROW_COLOR}">'
            f"<title>{escape(label)}</title></circle>"
        )
        out.append(
            f'<text class="row-label" x="{_num(cx + 5)}" y="{_num(cy - 4)}" '
            f'font-size="10" fill="{ROW_COLOR}">{escape(label)}</text>'
        )
    for label, x, y in spec.cols:
        cx, cy = px(x), py(y)
        out.append(
            f'<rect class="col-point" x="{_num(cx - 3)}" y="{_num(cy - 3)}" width="6" '
            f'height="6" fill="{COL_COLOR}"><title>{escape(label)}</title></rect>'
        )
        out.append(
            f'<text class="col-label" x="{_num(cx + 5)}" y="{_num(cy + 12)}" '
            f'font-size="10" fill="{COL_COLOR}">{escape(label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_biplot(result, axes=(1, 2)):
    """SVG symmetric map of rows ``(f_a, f_b)`` and columns ``(g_a, g_b)``.

    Both axes share one scale: the wider coordinate range spans 400 px, with
    a 10% margin around the plot.  Rows are blue circles, columns red squares.
    """
    return render_spec(biplot_spec(result, axes))
