"""Millimetre-space geometry for placed symbols, pins, wires and texts."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..eagle import PinDef, PlacedSymbol, Primitive, Transform
from . import font

Pt = tuple[float, float]

ARC_SEGMENTS_PER_90 = 8


def arc_points(p1: Pt, p2: Pt, curve: float) -> list[Pt]:
    """Sample the arc from ``p1`` to ``p2`` sweeping ``curve`` degrees counter-clockwise."""
    if curve == 0 or p1 == p2:
        return [p1, p2]
    theta = math.radians(curve)
    dx, dy = p2[0] - p1[0], p2[1] - p1[1]
    chord = math.hypot(dx, dy)
    mx, my = (p1[0] + p2[0]) / 2, (p1[1] + p2[1]) / 2
    h = (chord / 2) / math.tan(theta / 2)
    cx, cy = mx - dy / chord * h, my + dx / chord * h
    r = math.hypot(p1[0] - cx, p1[1] - cy)
    a0 = math.atan2(p1[1] - cy, p1[0] - cx)
    n = max(2, int(math.ceil(abs(curve) / 90 * ARC_SEGMENTS_PER_90)))
    pts = [(cx + r * math.cos(a0 + theta * i / n), cy + r * math.sin(a0 + theta * i / n)) for i in range(n + 1)]
    pts[0], pts[-1] = p1, p2
    return pts


def rotate_about(p: Pt, c: Pt, rotation: int) -> Pt:
    return Transform(c[0], c[1], rotation, False).apply(p[0] - c[0], p[1] - c[1])


def primitive_points(prim: Primitive) -> list[Pt]:
    """Points in the primitive's own frame whose hull bounds its geometry."""
    if prim.kind == "wire":
        return arc_points(prim.points[0], prim.points[1], prim.curve)
    if prim.kind == "rectangle":
        (x1, y1), (x2, y2) = prim.points
        corners = [(x1, y1), (x2, y1), (x2, y2), (x1, y2)]
        if prim.rotation:
            c = ((x1 + x2) / 2, (y1 + y2) / 2)
            corners = [rotate_about(p, c, prim.rotation) for p in corners]
        return corners
    if prim.kind == "circle":
        (x, y), r = prim.points[0], prim.radius
        return [(x - r, y - r), (x + r, y + r)]
    if prim.kind == "polygon":
        return list(prim.points)
    if prim.kind == "text":
        return list(prim.points)
    raise ValueError(prim.kind)


def direction(rotation: int) -> Pt:
    return {0: (1.0, 0.0), 90: (0.0, 1.0), 180: (-1.0, 0.0), 270: (0.0, -1.0)}[rotation]


def transform_vector(t: Transform, v: Pt) -> Pt:
    x, y = t.apply(*v)
    return (x - t.x, y - t.y)


def pin_stub(placed: PlacedSymbol, pin: PinDef, offset: Pt = (0.0, 0.0)) -> tuple[Pt, Pt]:
    """World ``(connection_point, inner_end)`` of a pin's stroke."""
    t = placed.transform
    ax, ay = t.apply(pin.x, pin.y)
    dx, dy = transform_vector(t, direction(pin.rotation))
    end = (ax + dx * pin.extent, ay + dy * pin.extent)
    return (ax + offset[0], ay + offset[1]), (end[0] + offset[0], end[1] + offset[1])


def symbol_points(placed: PlacedSymbol, offset: Pt = (0.0, 0.0)) -> list[Pt]:
    """Transformed extent points of all graphics and pin stubs (no text)."""
    t = placed.transform
    pts = []
    for prim in placed.symbol.primitives:
        if prim.kind == "text":
            continue
        for p in primitive_points(prim):
            x, y = t.apply(*p)
            pts.append((x + offset[0], y + offset[1]))
    for pin in placed.symbol.pins:
        pts.extend(pin_stub(placed, pin, offset))
    if not pts:
        pts.append((t.x + offset[0], t.y + offset[1]))
    return pts


def extent(points: Iterable[Pt]) -> tuple[float, float, float, float]:
    xs, ys = zip(*points)
    return (min(xs), min(ys), max(xs), max(ys))


def compute_bbox(placed: PlacedSymbol, scale: float = 10.0) -> tuple[float, float, float, float]:
    """Axis-aligned symbol box in pixels of the y-up drawing frame.

    This is the box before the canvas flips y and shifts the origin; see
    :class:`Canvas` for the mapping to image pixels.
    """
    x0, y0, x1, y1 = extent(symbol_points(placed))
    return (x0 * scale, y0 * scale, x1 * scale, y1 * scale)


# --------------------------------------------------------------------------
# text

_H = {"left": 0.0, "center": -0.5, "right": -1.0}
_V = {"bottom": 0.0, "center": -0.5, "top": -1.0}


def _parse_align(align: str) -> tuple[float, float]:
    if align == "center":
        return _H["center"], _V["center"]
    v, h = align.split("-")
    return _H[h], _V[v]


@dataclass(frozen=True)
class TextBox:
    content: str
    size: float
    region: tuple[float, float, float, float]
    vertical: bool

    def strokes(self) -> list[list[Pt]]:
        x0, y0, x1, _ = self.region
        out = []
        for stroke in font.layout(self.content, self.size):
            if self.vertical:
                out.append([(x1 - ly, y0 + lx) for lx, ly in stroke])
            else:
                out.append([(x0 + lx, y0 + ly) for lx, ly in stroke])
        return out


def text_box(content: str, anchor: Pt, size: float, rotation: int = 0, mirror: bool = False,
             align: str = "bottom-left") -> TextBox:
    """Lay out a single-line text drawn upright inside its rotated footprint."""
    w = font.text_width(content, size)
    h = size
    fx, fy = _parse_align(align)
    ox, oy = fx * w, fy * h
    t = Transform(anchor[0], anchor[1], rotation, mirror)
    corners = [t.apply(x, y) for x, y in ((ox, oy), (ox + w, oy), (ox + w, oy + h), (ox, oy + h))]
    region = extent(corners)
    return TextBox(content, size, region, rotation in (90, 270))


def symbol_text_anchor(placed: PlacedSymbol, prim: Primitive, offset: Pt) -> tuple[Pt, int, bool]:
    t = placed.transform
    x, y = t.apply(*prim.points[0])
    rot = prim.rotation
    if t.mirror:
        rot = (360 - rot) % 360
    rot = (rot + t.rotation) % 360
    return (x + offset[0], y + offset[1]), rot, prim.mirror != t.mirror


@dataclass(frozen=True)
class Canvas:
    """Maps y-up millimetres to y-down image pixels."""

    scale: float
    min_x: float
    max_y: float
    margin: int
    width: int
    height: int

    def to_px(self, p: Pt) -> Pt:
        return ((p[0] - self.min_x) * self.scale + self.margin, (self.max_y - p[1]) * self.scale + self.margin)

    def box_px(self, points: Sequence[Pt], dilate: float = 0.0) -> tuple[float, float, float, float]:
        px = [self.to_px(p) for p in points]
        x0, y0, x1, y1 = extent(px)
        return (x0 - dilate, y0 - dilate, x1 + dilate, y1 + dilate)
