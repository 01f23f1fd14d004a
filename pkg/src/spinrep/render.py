"""Static SVG drawings of T-representations.

Each block is a sphere seen along the ``-y`` direction (x to the right, z
up). Stars on the far hemisphere are drawn faded. Representative stars
are filled, their antipodes hollow; stars on a common point are drawn
once with their multiplicity written next to them.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from .angular import format_spin
from .trep import TRep

__all__ = ["render_svg"]

PANEL = 220
MARGIN = 30
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")


def _project(star, cx: float, cy: float, radius: float) -> tuple[float, float, bool]:
    x, y, z = star
    return cx + radius * x, cy - radius * z, y <= 1e-12


def _group(points: np.ndarray, tol: float = 1e-6) -> list[tuple[np.ndarray, list[int]]]:
    groups: list[tuple[np.ndarray, list[int]]] = []
    for i, p in enumerate(points):
        for ref, members in groups:
            if np.linalg.norm(ref - p) < tol:
                members.append(i)
                break
        else:
            groups.append((p, [i]))
    return groups


def _star_marks(cls, cx, cy, radius, color) -> list[str]:
    out = []
    rep = set(cls.representative)
    for point, members in _group(cls.stars):
        px, py, front = _project(point, cx, cy, radius)
        filled = any(i in rep for i in members)
        opacity = 1.0 if front else 0.4
        fill = color if filled else "white"
        out.append(f'<circle cx="{px:.3f}" cy="{py:.3f}" r="5" fill="{fill}" '
                   f'stroke="{color}" stroke-width="1.5" opacity="{opacity}"/>')
        if len(members) > 1:
            out.append(f'<text x="{px + 7:.3f}" y="{py - 7:.3f}" font-size="11" '
                       f'fill="{color}">{len(members)}</text>')
    return out


def _sphere(cx, cy, radius, color) -> list[str]:
    return [
        f'<circle cx="{cx:.3f}" cy="{cy:.3f}" r="{radius:.3f}" fill="none" stroke="{color}" stroke-width="1"/>',
        f'<ellipse cx="{cx:.3f}" cy="{cy:.3f}" rx="{radius:.3f}" ry="{radius * 0.25:.3f}" '
        f'fill="none" stroke="{color}" stroke-width="0.5" stroke-dasharray="3,3"/>',
    ]


def render_svg(t: TRep, spheres_as_radii: bool = False, title: str | None = None) -> str:
    """SVG document for ``t``.

    By default every block gets its own panel with sphere radius
    proportional to ``w_sigma``. With ``spheres_as_radii`` all blocks are
    drawn as concentric spheres of radius ``w_sigma`` in one panel.
    """
    blocks = sorted(t.blocks, key=lambda b: b.sigma)
    wmax = max((b.w for b in blocks), default=1.0)
    inner = PANEL / 2 - MARGIN
    parts: list[str] = []
    if spheres_as_radii:
        width, height = PANEL + 2 * MARGIN, PANEL + 3 * MARGIN
        cx, cy = width / 2, MARGIN * 2 + PANEL / 2
        scale = (PANEL / 2 - 10) / wmax
        for b in blocks:
            color = COLORS[(b.sigma - 1) % len(COLORS)]
            r = b.w * scale
            parts += _sphere(cx, cy, r, color)
            parts += _star_marks(b.cls, cx, cy, r, color)
        legend_y = height - 8
        labels = [f"σ={b.sigma} w={b.w:.4g} parity={b.cls.parity:+d}" for b in blocks]
        parts.append(f'<text x="{MARGIN}" y="{legend_y}" font-size="10">{escape("; ".join(labels))}</text>')
    else:
        count = max(1, len(blocks))
        width, height = count * PANEL + 2 * MARGIN, PANEL + 3 * MARGIN
        for k, b in enumerate(blocks):
            color = COLORS[(b.sigma - 1) % len(COLORS)]
            cx = MARGIN + k * PANEL + PANEL / 2
            cy = 2 * MARGIN + PANEL / 2
            r = max(inner * b.w / wmax, 4.0)
            parts += _sphere(cx, cy, r, color)
            parts += _star_marks(b.cls, cx, cy, r, color)
            label = f"σ={b.sigma}  w={b.w:.4g}  parity {b.cls.parity:+d}"
            parts.append(f'<text x="{cx:.3f}" y="{cy + PANEL / 2:.3f}" font-size="11" '
                         f'text-anchor="middle">{escape(label)}</text>')
        if not blocks:
            parts.append(f'<text x="{MARGIN}" y="{2 * MARGIN}" font-size="12">all blocks absent</text>')
    heading = title or f"spin {format_spin(t.two_s)}, trace component {t.trace_component:.6g}"
    head = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}" font-family="sans-serif">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<text x="{MARGIN}" y="{MARGIN}" font-size="13">{escape(heading)}</text>',
    ]
    return "\n".join(head + parts + ["</svg>"]) + "\n"

