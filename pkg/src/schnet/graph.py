"""Spatially weighted heterogeneous netlist graph.

Nodes are symbols and pins. Every pin is tied to its parent symbol by a
membership edge; pins sharing a net are tied pairwise by connectivity
edges, each weighted by the normalized distance between the two parent
symbols. The serialized form stores nets, and the pairwise closure is
derived on demand.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

from .annotations import AnnotationSet
from .eagle import NetDef, PlacedSymbol
from .errors import GeometryMissing, SchemaViolation
from .schemas import GRAPH_SCHEMA, validate_document

Rect = tuple[float, float, float, float]


@dataclass(frozen=True)
class SymbolNode:
    id: str
    name: str
    value: str
    symbol_type: str
    orientation: int = 0
    mirror: bool = False
    bbox: Optional[tuple[int, int, int, int]] = None


@dataclass(frozen=True)
class PinNode:
    id: str
    parent: str
    pin_name: str
    pad_name: str
    net_name: str = ""
    bbox: Optional[tuple[int, int, int, int]] = None


@dataclass(frozen=True)
class ConnectivityEdge:
    pin_a: str
    pin_b: str
    net_name: str
    spatial_weight: float

    @property
    def key(self) -> tuple[str, str]:
        return (self.pin_a, self.pin_b)


def center(b: Rect) -> tuple[float, float]:
    return ((b[0] + b[2]) / 2.0, (b[1] + b[3]) / 2.0)


def spatial_weight(bbox_a: Rect, bbox_b: Rect, image_dims: tuple[int, int]) -> float:
    """Center-to-center distance of two boxes over the image diagonal, in [0, 1]."""
    (ax, ay), (bx, by) = center(bbox_a), center(bbox_b)
    diag = math.hypot(*image_dims)
    if diag == 0:
        return 0.0
    return min(1.0, max(0.0, math.hypot(ax - bx, ay - by) / diag))


def pairwise_closure(
    net_name: str,
    pins: Sequence[str],
    weight: Callable[[str, str], float] = lambda a, b: 0.0,
) -> list[ConnectivityEdge]:
    """All unordered pin pairs of one net, each with ``pin_a < pin_b``."""
    ids = sorted(set(pins))
    edges = []
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            edges.append(ConnectivityEdge(a, b, net_name, weight(a, b)))
    return edges


@dataclass(frozen=True)
class NetlistGraph:
    image_dims: tuple[int, int]
    symbols: tuple[SymbolNode, ...] = ()
    pins: tuple[PinNode, ...] = ()
    nets: dict[str, tuple[str, ...]] = field(default_factory=dict)

    @cached_property
    def symbol_index(self) -> dict[str, SymbolNode]:
        return {s.id: s for s in self.symbols}

    @cached_property
    def pin_index(self) -> dict[str, PinNode]:
        return {p.id: p for p in self.pins}

    @cached_property
    def pins_of(self) -> dict[str, tuple[PinNode, ...]]:
        out: dict[str, list[PinNode]] = {s.id: [] for s in self.symbols}
        for p in self.pins:
            out.setdefault(p.parent, []).append(p)
        return {k: tuple(v) for k, v in out.items()}

    @property
    def membership_edges(self) -> list[tuple[str, str]]:
        return [(p.parent, p.id) for p in self.pins]

    def _weight(self, a: str, b: str) -> float:
        sa = self.symbol_index[self.pin_index[a].parent]
        sb = self.symbol_index[self.pin_index[b].parent]
        if sa.bbox is None or sb.bbox is None:
            return 0.0
        return spatial_weight(sa.bbox, sb.bbox, self.image_dims)

    @cached_property
    def connectivity_edges(self) -> tuple[ConnectivityEdge, ...]:
        edges: dict[tuple[str, str], ConnectivityEdge] = {}
        for name in sorted(self.nets):
            for e in pairwise_closure(name, self.nets[name], self._weight):
                edges.setdefault(e.key, e)
        return tuple(sorted(edges.values(), key=lambda e: e.key))

    @cached_property
    def component_sizes(self) -> dict[str, int]:
        """Size of each pin's connected component in the pin-pin graph."""
        parent = {p.id: p.id for p in self.pins}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for members in self.nets.values():
            members = [m for m in members if m in parent]
            for m in members[1:]:
                ra, rb = find(members[0]), find(m)
                if ra != rb:
                    parent[rb] = ra
        sizes: dict[str, int] = {}
        for pid in parent:
            r = find(pid)
            sizes[r] = sizes.get(r, 0) + 1
        return {pid: sizes[find(pid)] for pid in parent}

    @property
    def node_count(self) -> int:
        return len(self.symbols) + len(self.pins)

    @property
    def edge_count(self) -> int:
        return len(self.pins) + len(self.connectivity_edges)


def canonical_ids(placed: Iterable[PlacedSymbol]):
    """Assign ``s<i>`` / ``p<i>`` ids in sorted (part, gate, pin) order."""
    sym_ids: dict[tuple[str, str], str] = {}
    pin_ids: dict[tuple[str, str, str], str] = {}
    n = 0
    for i, ps in enumerate(sorted(placed, key=lambda p: p.key)):
        sym_ids[ps.key] = f"s{i}"
        for pin in sorted(p.name for p in ps.symbol.pins):
            pin_ids[(ps.part_name, ps.gate, pin)] = f"p{n}"
            n += 1
    return sym_ids, pin_ids


def build_graph(placed: Sequence[PlacedSymbol], nets: Sequence[NetDef], annotations: AnnotationSet) -> NetlistGraph:
    """Join resolved instances, nets and rendered geometry into one graph."""
    sym_ids, pin_ids = canonical_ids(placed)
    sym_ann = {s.id: s for s in annotations.symbols}
    pin_ann = {p.id: p for p in annotations.pins}

    pin_net: dict[str, str] = {}
    net_pins: dict[str, tuple[str, ...]] = {}
    for net in sorted(nets, key=lambda n: n.name):
        members = []
        for ref in net.pinrefs:
            pid = pin_ids.get((ref.part, ref.gate, ref.pin))
            if pid is None:
                raise GeometryMissing(f"net {net.name!r} references unplaced pin {ref.part}.{ref.gate}.{ref.pin}")
            members.append(pid)
            pin_net.setdefault(pid, net.name)
        net_pins[net.name] = tuple(sorted(set(members), key=_id_order))

    symbols, pins = [], []
    for ps in sorted(placed, key=lambda p: p.key):
        sid = sym_ids[ps.key]
        sa = sym_ann.get(sid)
        if sa is None or (sa.part, sa.gate) != ps.key:
            raise GeometryMissing(f"no annotation for symbol {ps.part_name}.{ps.gate}")
        symbols.append(SymbolNode(sid, ps.display_name, ps.value, ps.symbol_type,
                                  ps.transform.rotation, ps.transform.mirror, sa.bbox))
        for pin in sorted(p.name for p in ps.symbol.pins):
            pid = pin_ids[(ps.part_name, ps.gate, pin)]
            pa = pin_ann.get(pid)
            if pa is None:
                raise GeometryMissing(f"no annotation for pin {ps.part_name}.{ps.gate}.{pin}")
            pins.append(PinNode(pid, sid, pin, ps.pad_map.get(pin, ""), pin_net.get(pid, ""), pa.bbox))
    return NetlistGraph(annotations.image_dims, tuple(symbols), tuple(pins), net_pins)


def _id_order(node_id: str):
    head = node_id.rstrip("0123456789")
    tail = node_id[len(head):]
    return (head, int(tail) if tail else -1, node_id)


# --------------------------------------------------------------------------
# canonical document


def graph_to_dict(g: NetlistGraph) -> dict:
    return {
        "schema": "schnet.graph/1",
        "image": {"width": g.image_dims[0], "height": g.image_dims[1]},
        "symbols": [
            {"id": s.id, "name": s.name, "value": s.value, "type": s.symbol_type,
             "orientation": s.orientation, "mirror": s.mirror,
             "bbox": list(s.bbox) if s.bbox is not None else None}
            for s in g.symbols
        ],
        "pins": [
            {"id": p.id, "parent": p.parent, "pin_name": p.pin_name, "pad_name": p.pad_name,
             "net_name": p.net_name, "bbox": list(p.bbox) if p.bbox is not None else None}
            for p in g.pins
        ],
        "nets": [{"name": name, "pins": list(g.nets[name])} for name in sorted(g.nets)],
    }


def serialize_graph(g: NetlistGraph) -> str:
    return json.dumps(graph_to_dict(g), indent=1, ensure_ascii=False) + "\n"


def graph_from_dict(data: dict) -> NetlistGraph:
    validate_document(data, GRAPH_SCHEMA)
    errors = []
    sym_ids = set()
    for i, s in enumerate(data["symbols"]):
        if s["id"] in sym_ids:
            errors.append((f"symbols/{i}/id", f"duplicate id {s['id']!r}"))
        sym_ids.add(s["id"])
    pin_ids = set()
    for i, p in enumerate(data["pins"]):
        if p["id"] in pin_ids or p["id"] in sym_ids:
            errors.append((f"pins/{i}/id", f"duplicate id {p['id']!r}"))
        pin_ids.add(p["id"])
        if p["parent"] not in sym_ids:
            errors.append((f"pins/{i}/parent", f"unknown symbol {p['parent']!r}"))
    for i, n in enumerate(data["nets"]):
        for j, pid in enumerate(n["pins"]):
            if pid not in pin_ids:
                errors.append((f"nets/{i}/pins/{j}", f"unknown pin {pid!r}"))
    if errors:
        raise SchemaViolation(errors)

    def box(b):
        return tuple(b) if b is not None else None

    return NetlistGraph(
        image_dims=(data["image"]["width"], data["image"]["height"]),
        symbols=tuple(SymbolNode(s["id"], s["name"], s["value"], s["type"], s["orientation"], s["mirror"],
                                 box(s["bbox"])) for s in data["symbols"]),
        pins=tuple(PinNode(p["id"], p["parent"], p["pin_name"], p["pad_name"], p["net_name"], box(p["bbox"]))
                   for p in data["pins"]),
        nets={n["name"]: tuple(n["pins"]) for n in data["nets"]},
    )


def load_graph(document) -> NetlistGraph:
    """Load a graph from JSON text or an already decoded mapping."""
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaViolation([("", f"invalid JSON: {exc}")]) from None
    return graph_from_dict(document)
