"""Axis-aligned rectangle helpers shared by matching, metrics and the agent harness."""

from __future__ import annotations

from typing import Optional, Sequence

Box = Sequence[float]


def bbox_iou(a: Box, b: Box) -> float:
    """Intersection over union of two ``(x0, y0, x1, y1)`` rectangles."""
    ix = min(a[2], b[2]) - max(a[0], b[0])
    iy = min(a[3], b[3]) - max(a[1], b[1])
    inter = ix * iy if ix > 0 and iy > 0 else 0.0
    union = (a[2] - a[0]) * (a[3] - a[1]) + (b[2] - b[0]) * (b[3] - b[1]) - inter
    return inter / union if union > 0 else 0.0


def well_ordered(b: Optional[Box]) -> bool:
    return b is not None and len(b) == 4 and b[0] < b[2] and b[1] < b[3]


def clamp(b: Box, width: float, height: float) -> tuple[float, float, float, float]:
    x0, y0, x1, y1 = b
    return (min(max(x0, 0), width), min(max(y0, 0), height), min(max(x1, 0), width), min(max(y1, 0), height))


def contains(b: Box, x: float, y: float) -> bool:
    return b[0] <= x <= b[2] and b[1] <= y <= b[3]
