"""Query generation from a rendered annotation set and its graph."""

from __future__ import annotations

from ..annotations import AnnotationSet
from ..graph import NetlistGraph, center
from ..render.raster import PIN_DILATE_PX
from .scoring import GroundTruth
from .session import Query


def _union(boxes):
    boxes = list(boxes)
    return (min(b[0] for b in boxes), min(b[1] for b in boxes), max(b[2] for b in boxes), max(b[3] for b in boxes))


def net_region(polylines, dims, dilate: int = PIN_DILATE_PX):
    pts = [p for line in polylines for p in line]
    x0, y0 = min(p[0] for p in pts) - dilate, min(p[1] for p in pts) - dilate
    x1, y1 = max(p[0] for p in pts) + dilate, max(p[1] for p in pts) + dilate
    return (max(0, x0), max(0, y0), min(dims[0], x1), min(dims[1], y1))


def make_queries(ann: AnnotationSet, graph: NetlistGraph, pins_per_symbol: int = 1) -> list[tuple[Query, GroundTruth]]:
    """Symbol name/value queries for every symbol, pin/pad queries for the first
    ``pins_per_symbol`` pins of each symbol and one query per connected net.

    Queries whose true answer is empty are skipped.
    """
    out = []
    sym = graph.symbol_index
    for s in graph.symbols:
        if s.bbox is None:
            continue
        cx, cy = center(s.bbox)
        where = f"the {s.symbol_type} symbol centred near ({cx:.0f}, {cy:.0f}) px"
        out.append((Query(f"{s.id}/name", "symbol_name", where), GroundTruth(s.name, s.bbox)))
        out.append((Query(f"{s.id}/value", "value", f"symbol {s.name}"), GroundTruth(s.value, s.bbox)))
        for p in graph.pins_of.get(s.id, ())[:pins_per_symbol]:
            if p.bbox is None:
                continue
            if p.pad_name:
                out.append((Query(f"{p.id}/pin", "pin_name", f"the pin on pad {p.pad_name} of symbol {s.name}"),
                            GroundTruth(p.pin_name, p.bbox)))
            out.append((Query(f"{p.id}/pad", "pad_name", f"pin {p.pin_name} of symbol {s.name}"),
                        GroundTruth(p.pad_name, p.bbox)))
    anchors = {p.id: p.anchor for p in ann.pins}
    pins = graph.pin_index
    for i, (name, members) in enumerate(sorted(graph.nets.items())):
        if not members:
            continue
        lines = tuple(tuple(tuple(pt) for pt in line) for line in ann.nets.get(name, ()) if len(line) >= 2)
        if not lines:
            lines = (tuple(tuple(anchors[m]) for m in members),)
        region = _union([net_region(lines, ann.image_dims)] + [pins[m].bbox for m in members if pins[m].bbox])
        ends = " and ".join(f"{sym[pins[m].parent].name}.{pins[m].pin_name}" for m in members[:2])
        out.append((Query(f"net{i}", "net_name", f"the net connecting {ends}"), GroundTruth(name, region, lines)))
    return [(q, t) for q, t in out if t.answer.strip()]
