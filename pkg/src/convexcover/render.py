"""Deterministic SVG pictures of instances, covers and arrangements."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

from .arrangement import Arrangement
from .exact_geom import ConvexPolygon, Point, PolygonWithHoles

_PIECE_FILLS = (
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
    "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
)


def _num(x: Fraction) -> str:
    """Decimal with 12 significant digits, no trailing zeros."""
    s = format(float(x), ".12g")
    return "0" if s == "-0" else s


def _path_of(ring: Sequence[Point]) -> str:
    parts = [f"M {_num(ring[0].x)} {_num(ring[0].y)}"]
    for p in ring[1:]:
        parts.append(f"L {_num(p.x)} {_num(p.y)}")
    parts.append("Z")
    return " ".join(parts)


def render_svg(poly: PolygonWithHoles,
               pieces: Sequence[ConvexPolygon] = (),
               arrangement: Optional[Arrangement] = None,
               width: int = 640) -> str:
    """Standalone SVG: region in grey, pieces tinted, overlay optional.

    The y axis is flipped so the picture matches the usual orientation.
    Output is a pure function of the inputs.
    """
    xs = [p.x for p in poly.outer]
    ys = [p.y for p in poly.outer]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span_x, span_y = x1 - x0, y1 - y0
    pad = max(span_x, span_y) / 20 or Fraction(1)
    vb = (x0 - pad, -(y1 + pad), span_x + 2 * pad, span_y + 2 * pad)
    height = int(width * float(vb[3] / vb[2])) or width

    lines: List[str] = []
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="{_num(vb[0])} {_num(vb[1])} {_num(vb[2])} {_num(vb[3])}">')
    lines.append('<g transform="scale(1,-1)">')

    region = " ".join([_path_of(poly.outer)] + [_path_of(h) for h in poly.holes])
    lines.append(f'<path d="{region}" fill="#d9d9d9" fill-rule="evenodd" '
                 f'stroke="none"/>')

    sw = _num(max(span_x, span_y) / 200 or Fraction(1, 100))
    for i, piece in enumerate(pieces):
        fill = _PIECE_FILLS[i % len(_PIECE_FILLS)]
        lines.append(f'<path d="{_path_of(piece.ring)}" fill="{fill}" '
                     f'fill-opacity="0.45" stroke="{fill}" stroke-width="{sw}"/>')

    if arrangement is not None:
        for ext in arrangement.extensions:
            a, b = ext.segment.a, ext.segment.b
            lines.append(
                f'<line x1="{_num(a.x)}" y1="{_num(a.y)}" x2="{_num(b.x)}" '
                f'y2="{_num(b.y)}" stroke="#666666" stroke-width="{sw}" '
                f'stroke-dasharray="{sw} {sw}"/>')
        r = _num(max(span_x, span_y) / 100 or Fraction(1, 50))
        for p in arrangement.vertices:
            lines.append(f'<circle cx="{_num(p.x)}" cy="{_num(p.y)}" r="{r}" '
                         f'fill="#333333"/>')

    lines.append(f'<path d="{region}" fill="none" stroke="#000000" '
                 f'stroke-width="{sw}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
