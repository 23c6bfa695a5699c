"""Pixel-space annotations produced alongside every rendered raster."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Optional

from .errors import SchemaViolation
from .schemas import ANNOTATION_SCHEMA, validate_document

BBox = tuple[int, int, int, int]
Point = tuple[int, int]

TEXT_ROLES = ("symbol_name", "symbol_value", "net_label", "pin_annotation", "plain")
VARIATIONS = ("original", "full_text", "no_text", "no_name_value")


@dataclass(frozen=True)
class TextInstance:
    id: str
    content: str
    bbox: BBox
    role: str
    target: Optional[str] = None

    def __post_init__(self):
        if self.role not in TEXT_ROLES:
            raise ValueError(f"unknown text role {self.role!r}")
        if (self.role == "plain") != (self.target is None):
            raise ValueError("plain texts have no target and every other role has one")


@dataclass(frozen=True)
class SymbolAnnotation:
    id: str
    part: str
    gate: str
    bbox: BBox
    symbol_type: str
    orientation: int
    mirror: bool
    name: str
    value: str


@dataclass(frozen=True)
class PinAnnotation:
    id: str
    parent: str
    pin_name: str
    pad_name: str
    bbox: BBox
    anchor: Point


@dataclass(frozen=True)
class AnnotationSet:
    image_dims: tuple[int, int]
    symbols: tuple[SymbolAnnotation, ...] = ()
    pins: tuple[PinAnnotation, ...] = ()
    texts: tuple[TextInstance, ...] = ()
    nets: dict[str, tuple[tuple[Point, ...], ...]] = field(default_factory=dict)

    def symbol(self, sid: str) -> Optional[SymbolAnnotation]:
        return next((s for s in self.symbols if s.id == sid), None)


def apply_variation(annotations: AnnotationSet, variation: str) -> AnnotationSet:
    """Drop the text instances a rendering variation does not draw."""
    if variation not in VARIATIONS:
        raise ValueError(f"unknown variation {variation!r}")
    if variation == "no_text":
        texts = ()
    elif variation == "no_name_value":
        texts = tuple(t for t in annotations.texts if t.role not in ("symbol_name", "symbol_value"))
    else:
        return annotations
    return replace(annotations, texts=texts)


def _inside(bbox, dims) -> bool:
    x0, y0, x1, y1 = bbox
    return 0 <= x0 < x1 <= dims[0] and 0 <= y0 < y1 <= dims[1]


def check_bounds(ann: AnnotationSet) -> list[tuple[str, str]]:
    errors = []
    for kind, items in (("symbols", ann.symbols), ("pins", ann.pins), ("texts", ann.texts)):
        for i, item in enumerate(items):
            if not _inside(item.bbox, ann.image_dims):
                errors.append((f"{kind}/{i}/bbox", f"{item.id}: bbox {item.bbox} outside image {ann.image_dims}"))
    return errors


def annotations_to_dict(ann: AnnotationSet) -> dict:
    return {
        "schema": "schnet.annotations/1",
        "image": {"width": ann.image_dims[0], "height": ann.image_dims[1]},
        "symbols": [
            {"id": s.id, "part": s.part, "gate": s.gate, "bbox": list(s.bbox),
             "type": s.symbol_type, "orientation": s.orientation, "mirror": s.mirror,
             "name": s.name, "value": s.value}
            for s in ann.symbols
        ],
        "pins": [
            {"id": p.id, "parent": p.parent, "pin_name": p.pin_name, "pad_name": p.pad_name,
             "bbox": list(p.bbox), "anchor": list(p.anchor)}
            for p in ann.pins
        ],
        "texts": [
            {"id": t.id, "content": t.content, "bbox": list(t.bbox), "role": t.role, "target": t.target}
            for t in ann.texts
        ],
        "nets": [
            {"name": name, "polylines": [[list(pt) for pt in line] for line in lines]}
            for name, lines in sorted(ann.nets.items())
        ],
    }


def export_annotations(ann: AnnotationSet) -> str:
    """Serialize to canonical JSON; refuses boxes that leave the image."""
    errors = check_bounds(ann)
    if errors:
        raise SchemaViolation(errors)
    return json.dumps(annotations_to_dict(ann), indent=1, ensure_ascii=False) + "\n"


def annotations_from_dict(data: dict) -> AnnotationSet:
    validate_document(data, ANNOTATION_SCHEMA)
    ann = AnnotationSet(
        image_dims=(data["image"]["width"], data["image"]["height"]),
        symbols=tuple(
            SymbolAnnotation(s["id"], s["part"], s["gate"], tuple(s["bbox"]), s["type"],
                             s["orientation"], s["mirror"], s["name"], s["value"])
            for s in data["symbols"]
        ),
        pins=tuple(
            PinAnnotation(p["id"], p["parent"], p["pin_name"], p["pad_name"], tuple(p["bbox"]), tuple(p["anchor"]))
            for p in data["pins"]
        ),
        texts=tuple(
            TextInstance(t["id"], t["content"], tuple(t["bbox"]), t["role"], t.get("target"))
            for t in data["texts"]
        ),
        nets={n["name"]: tuple(tuple(tuple(pt) for pt in line) for line in n["polylines"]) for n in data["nets"]},
    )
    errors = check_bounds(ann)
    if errors:
        raise SchemaViolation(errors)
    return ann


def load_annotations(text: str) -> AnnotationSet:
    return annotations_from_dict(json.loads(text))
