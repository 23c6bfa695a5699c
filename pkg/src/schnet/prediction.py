"""Model prediction documents: lenient extraction, validation, graph conversion.

A raw model output is free text that should contain one JSON object of the
shape described by :data:`schnet.schemas.PREDICTION_SCHEMA`. Fenced code
blocks and surrounding prose are tolerated; anything else is a failure.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Any, Optional, Union

from .eagle import parse_rotation
from .graph import NetlistGraph, PinNode, SymbolNode
from .schemas import PREDICTION_SCHEMA, schema_errors

_FENCE = re.compile(r"```(?:json|JSON)?\s*\n?(.*?)```", re.S)


@dataclass(frozen=True)
class ParsedPrediction:
    document: Optional[dict]
    errors: tuple[tuple[str, str], ...]

    @property
    def ok(self) -> bool:
        return self.document is not None and not self.errors


def extract_object(raw: str) -> Optional[dict]:
    """Pull the first JSON object out of ``raw``, fenced or inline."""
    candidates = [m.group(1) for m in _FENCE.finditer(raw)] + [raw]
    dec = json.JSONDecoder()
    first = None
    for text in candidates:
        for i, ch in enumerate(text):
            if ch != "{":
                continue
            try:
                obj, _ = dec.raw_decode(text, i)
            except json.JSONDecodeError:
                continue
            if isinstance(obj, dict):
                if "symbols" in obj:
                    return obj
                if first is None:
                    first = obj
    return first


def semantic_errors(doc: dict) -> list[tuple[str, str]]:
    errors = []
    n_sym, n_pin = len(doc["symbols"]), len(doc["pins"])
    for i, p in enumerate(doc["pins"]):
        if p["parent"] >= n_sym:
            errors.append((f"pins/{i}/parent", f"parent index {p['parent']} out of range"))
    for i, n in enumerate(doc["nets"]):
        for j, ref in enumerate(n["pins"]):
            if ref >= n_pin:
                errors.append((f"nets/{i}/pins/{j}", f"pin index {ref} out of range"))
    return errors


def parse_prediction(raw: Union[str, dict, Any]) -> ParsedPrediction:
    if isinstance(raw, dict):
        doc = raw
    elif isinstance(raw, str):
        doc = extract_object(raw)
    else:
        return ParsedPrediction(None, (("", f"unsupported output type {type(raw).__name__}"),))
    if doc is None:
        return ParsedPrediction(None, (("", "no JSON object found"),))
    errors = schema_errors(doc, PREDICTION_SCHEMA)
    if not errors:
        errors = semantic_errors(doc)
    return ParsedPrediction(doc, tuple(errors))


def is_valid(raw) -> bool:
    return parse_prediction(raw).ok


def _orientation(v) -> int:
    if v is None:
        return 0
    if isinstance(v, str):
        try:
            return parse_rotation(v if v.upper().lstrip("SM").startswith("R") else f"R{v}")[0]
        except ValueError:
            return 0
    return int(round(float(v) / 90.0)) % 4 * 90


def _mirror(v) -> bool:
    return isinstance(v, str) and "M" in v.upper()


def _box(b):
    if b is None:
        return None
    if not all(math.isfinite(float(c)) for c in b):
        return None
    x0, y0, x1, y1 = (int(round(float(c))) for c in b)
    if x1 <= x0 or y1 <= y0:
        return None
    return (x0, y0, x1, y1)


def prediction_to_graph(doc: dict, image_dims: tuple[int, int]) -> NetlistGraph:
    """Convert a validated prediction document into a graph.

    Unnamed nets get private keys so they never collide; pins that only
    carry a ``net_name`` join the net of that name.
    """
    symbols = tuple(
        SymbolNode(f"s{i}", s.get("name") or "", s.get("value") or "", s.get("type") or "",
                   _orientation(s.get("orientation")), _mirror(s.get("orientation")), _box(s.get("bbox")))
        for i, s in enumerate(doc["symbols"])
    )
    nets: dict[str, list[str]] = {}
    for i, n in enumerate(doc["nets"]):
        name = (n.get("name") or "").strip() or f"<unnamed:{i}>"
        members = nets.setdefault(name, [])
        for ref in n["pins"]:
            pid = f"p{ref}"
            if pid not in members:
                members.append(pid)
    pin_net: dict[str, str] = {}
    for name, members in nets.items():
        for pid in members:
            pin_net.setdefault(pid, name)
    for i, p in enumerate(doc["pins"]):
        pid = f"p{i}"
        declared = (p.get("net_name") or "").strip()
        if pid not in pin_net and declared:
            nets.setdefault(declared, []).append(pid)
            pin_net[pid] = declared
    pins = tuple(
        PinNode(f"p{i}", f"s{p['parent']}", p.get("pin_name") or "", p.get("pad_name") or "",
                "" if pin_net.get(f"p{i}", "").startswith("<unnamed:") else pin_net.get(f"p{i}", ""),
                _box(p.get("bbox")))
        for i, p in enumerate(doc["pins"])
    )
    return NetlistGraph(image_dims, symbols, pins, {k: tuple(v) for k, v in nets.items()})


def graph_to_prediction(g: NetlistGraph) -> dict:
    """Express a graph as a prediction document (useful for oracles and demos)."""
    sym_index = {s.id: i for i, s in enumerate(g.symbols)}
    pin_index = {p.id: i for i, p in enumerate(g.pins)}
    return {
        "symbols": [
            {"name": s.name, "value": s.value, "type": s.symbol_type,
             "orientation": ("M" if s.mirror else "") + f"R{s.orientation}",
             "bbox": list(s.bbox) if s.bbox is not None else None}
            for s in g.symbols
        ],
        "pins": [
            {"parent": sym_index[p.parent], "pin_name": p.pin_name, "pad_name": p.pad_name,
             "net_name": p.net_name, "bbox": list(p.bbox) if p.bbox is not None else None}
            for p in g.pins
        ],
        "nets": [
            {"name": name, "pins": [pin_index[m] for m in members]}
            for name, members in sorted(g.nets.items())
        ],
    }
