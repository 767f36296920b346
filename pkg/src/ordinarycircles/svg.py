"""Deterministic SVG rendering of point sets with circle/line overlays.

Rendering uses 64-bit float approximations of the certified values; precision
here is cosmetic only.
"""
from __future__ import annotations

from math import sqrt

VIEW = 800.0
MARGIN = 60.0


def _fmt(v: float) -> str:
    return f"{v:.4f}"


class _Frame:
    def __init__(self, pts):
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        lo_x, hi_x = min(xs), max(xs)
        lo_y, hi_y = min(ys), max(ys)
        span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
        self.scale = (VIEW - 2 * MARGIN) / span
        self.cx = (lo_x + hi_x) / 2
        self.cy = (lo_y + hi_y) / 2

    def map(self, x, y):
        return (
            VIEW / 2 + (x - self.cx) * self.scale,
            VIEW / 2 - (y - self.cy) * self.scale,
        )


def _circle_float(g):
    t, l1, l2, l0 = g.approx_coeffs()
    if abs(t) < 1e-12:
        return ("line", l1, l2, l0)
    cx, cy = -l1 / (2 * t), -l2 / (2 * t)
    r2 = (l1 * l1 + l2 * l2 - 4 * t * l0) / (4 * t * t)
    return ("circle", cx, cy, sqrt(max(r2, 0.0)))


def render_svg(points, overlays=()):
    """points: float pairs; overlays: GeneralisedCircle objects (rational)."""
    frame = _Frame(points)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{int(VIEW)}" '
        f'height="{int(VIEW)}" viewBox="0 0 {int(VIEW)} {int(VIEW)}">',
        f'<rect width="{int(VIEW)}" height="{int(VIEW)}" fill="white"/>',
    ]
    for g in overlays:
        data = _circle_float(g)
        if data is None:
            continue
        if data[0] == "circle":
            _, cx, cy, r = data
            mx, my = frame.map(cx, cy)
            parts.append(
                f'<circle cx="{_fmt(mx)}" cy="{_fmt(my)}" r="{_fmt(r * frame.scale)}" '
                'fill="none" stroke="#3366cc" stroke-width="1"/>'
            )
        else:
            _, a, b, c = data
            seg = _clip_line(a, b, c, frame)
            if seg:
                (x1, y1), (x2, y2) = seg
                parts.append(
                    f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
                    f'y2="{_fmt(y2)}" stroke="#3366cc" stroke-width="1"/>'
                )
    for (x, y) in points:
        mx, my = frame.map(x, y)
        parts.append(f'<circle cx="{_fmt(mx)}" cy="{_fmt(my)}" r="4" fill="black"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _clip_line(a, b, c, frame):
    """Clip a x + b y + c = 0 against the world window of the frame."""
    half = (VIEW - 2 * MARGIN) / frame.scale / 2 * 1.4
    lo_x, hi_x = frame.cx - half, frame.cx + half
    lo_y, hi_y = frame.cy - half, frame.cy + half
    pts = []
    if abs(b) > 1e-12:
        for x in (lo_x, hi_x):
            y = -(a * x + c) / b
            if lo_y - 1e-9 <= y <= hi_y + 1e-9:
                pts.append((x, y))
    if abs(a) > 1e-12:
        for y in (lo_y, hi_y):
            x = -(b * y + c) / a
            if lo_x - 1e-9 <= x <= hi_x + 1e-9:
                pts.append((x, y))
    uniq = []
    for p in pts:
        if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > 1e-9 for q in uniq):
            uniq.append(p)
    if len(uniq) < 2:
        return None
    return frame.map(*uniq[0]), frame.map(*uniq[1])
