"""Schematic rasterization with pixel-aligned annotations."""

from ..annotations import apply_variation, export_annotations, load_annotations
from .geometry import compute_bbox
from .raster import PALETTES, RenderConfig, png_bytes, render

__all__ = [
    "PALETTES",
    "RenderConfig",
    "apply_variation",
    "compute_bbox",
    "export_annotations",
    "load_annotations",
    "png_bytes",
    "render",
]
