"""EAGLE (version 6+) XML schematic reader.

The reader builds an immutable :class:`SchematicDoc` from ``.sch`` bytes,
validates every cross reference, and exposes helpers to join parts, gates
and devices into placement records (:func:`resolve_instances`) and to merge
net segments across sheets (:func:`extract_nets`).

All coordinates are kept in millimetres exactly as written in the file.
"""

from __future__ import annotations

import math
import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .errors import DanglingReference, MalformedXml, MissingGate, UnsupportedVersion

# EAGLE grid conventions for the ``length`` attribute of a pin.
PIN_LENGTHS = {"point": 0.0, "short": 2.54, "middle": 5.08, "long": 7.62}

# Elements recognised but not needed for rendering or connectivity.
_IGNORED = {
    "settings", "setting", "grid", "layers", "layer", "description",
    "attributes", "attribute", "variantdefs", "variantdef", "variant",
    "classes", "class", "packages", "package", "packages3d", "package3d",
    "modules", "moduleinsts", "errors", "compatibility", "note", "busses",
    "bus", "technologies", "technology", "package3dinstances", "spline",
    "approved", "filter", "hole", "dimension", "frame",
}


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "warning" | "error"
    path: str
    message: str


@dataclass(frozen=True)
class Primitive:
    """One drawing primitive in millimetres.

    ``kind`` is one of ``wire``, ``rectangle``, ``circle``, ``polygon`` or
    ``text``. Wires and rectangles carry two points, circles and texts one,
    polygons any number of vertices.
    """

    kind: str
    layer: int
    points: tuple[tuple[float, float], ...]
    width: float = 0.0
    radius: float = 0.0
    curve: float = 0.0
    rotation: int = 0
    mirror: bool = False
    size: float = 0.0
    text: str = ""
    align: str = "bottom-left"


@dataclass(frozen=True)
class PinDef:
    name: str
    x: float
    y: float
    length: str = "long"
    direction: str = "io"
    visible: str = "both"
    rotation: int = 0
    function: str = "none"

    @property
    def extent(self) -> float:
        return PIN_LENGTHS[self.length]


@dataclass(frozen=True)
class LibrarySymbolDef:
    name: str
    primitives: tuple[Primitive, ...] = ()
    pins: tuple[PinDef, ...] = ()

    def pin(self, name: str) -> Optional[PinDef]:
        for p in self.pins:
            if p.name == name:
                return p
        return None


@dataclass(frozen=True)
class Gate:
    name: str
    symbol: str
    x: float = 0.0
    y: float = 0.0


@dataclass(frozen=True)
class Connect:
    gate: str
    pin: str
    pad: str


@dataclass(frozen=True)
class Device:
    name: str
    package: str = ""
    connects: tuple[Connect, ...] = ()


@dataclass(frozen=True)
class DeviceSet:
    name: str
    prefix: str = ""
    uservalue: bool = False
    gates: tuple[Gate, ...] = ()
    devices: tuple[Device, ...] = ()

    def gate(self, name: str) -> Optional[Gate]:
        return next((g for g in self.gates if g.name == name), None)

    def device(self, name: str) -> Optional[Device]:
        return next((d for d in self.devices if d.name == name), None)


@dataclass(frozen=True)
class LibraryDef:
    name: str
    symbols: dict[str, LibrarySymbolDef] = field(default_factory=dict)
    devicesets: dict[str, DeviceSet] = field(default_factory=dict)


@dataclass(frozen=True)
class PartDecl:
    name: str
    library: str
    deviceset: str
    device: str
    value: str = ""


@dataclass(frozen=True)
class Transform:
    """Placement transform: mirror about the local y axis, rotate, translate."""

    x: float = 0.0
    y: float = 0.0
    rotation: int = 0
    mirror: bool = False

    def apply(self, px: float, py: float) -> tuple[float, float]:
        if self.mirror:
            px = -px
        c, s = _COS_SIN[self.rotation]
        return (self.x + c * px - s * py, self.y + s * px + c * py)


_COS_SIN = {0: (1, 0), 90: (0, 1), 180: (-1, 0), 270: (0, -1)}


@dataclass(frozen=True)
class AttributeDecl:
    """A smashed NAME/VALUE attribute placed at absolute coordinates."""

    name: str
    x: float
    y: float
    size: float = 1.778
    layer: int = 95
    rotation: int = 0
    mirror: bool = False
    display: str = "value"


@dataclass(frozen=True)
class InstanceDecl:
    part: str
    gate: str
    transform: Transform = Transform()
    smashed: bool = False
    attributes: tuple[AttributeDecl, ...] = ()


@dataclass(frozen=True)
class PinRef:
    part: str
    gate: str
    pin: str


@dataclass(frozen=True)
class Junction:
    x: float
    y: float


@dataclass(frozen=True)
class Label:
    x: float
    y: float
    size: float = 1.778
    layer: int = 95
    rotation: int = 0
    mirror: bool = False
    xref: bool = False


@dataclass(frozen=True)
class Segment:
    wires: tuple[Primitive, ...] = ()
    junctions: tuple[Junction, ...] = ()
    labels: tuple[Label, ...] = ()
    pinrefs: tuple[PinRef, ...] = ()
    sheet: int = 0


@dataclass(frozen=True)
class NetDef:
    name: str
    segments: tuple[Segment, ...] = ()

    @property
    def pinrefs(self) -> tuple[PinRef, ...]:
        return tuple(r for s in self.segments for r in s.pinrefs)

    @property
    def wires(self) -> tuple[Primitive, ...]:
        return tuple(w for s in self.segments for w in s.wires)


@dataclass(frozen=True)
class SheetDef:
    instances: tuple[InstanceDecl, ...] = ()
    nets: tuple[NetDef, ...] = ()
    plain: tuple[Primitive, ...] = ()


@dataclass(frozen=True)
class SchematicDoc:
    version: str
    libraries: dict[str, LibraryDef] = field(default_factory=dict)
    parts: tuple[PartDecl, ...] = ()
    sheets: tuple[SheetDef, ...] = ()
    grid_unit: str = "mm"
    diagnostics: tuple[Diagnostic, ...] = ()

    def part(self, name: str) -> Optional[PartDecl]:
        for p in self.parts:
            if p.name == name:
                return p
        return None

    def deviceset_of(self, part: PartDecl) -> DeviceSet:
        return self.libraries[part.library].devicesets[part.deviceset]


@dataclass(frozen=True)
class PlacedSymbol:
    """One drawn gate of one part, ready for rendering."""

    part_name: str
    gate: str
    symbol: LibrarySymbolDef
    transform: Transform
    value: str
    symbol_type: str
    pad_map: dict[str, str]
    display_name: str
    attributes: tuple[AttributeDecl, ...] = ()
    smashed: bool = False
    sheet: int = 0

    @property
    def key(self) -> tuple[str, str]:
        return (self.part_name, self.gate)


# --------------------------------------------------------------------------
# parsing

_ROT_RE = re.compile(r"^(S?)(M?)R(-?[0-9.]+)$")


def parse_rotation(text: Optional[str]) -> tuple[int, bool, float]:
    """Parse an EAGLE rotation string such as ``MR90``.

    Returns ``(quantized_rotation, mirror, exact_degrees)``; the quantized
    value is the nearest multiple of 90 degrees.
    """
    if not text:
        return 0, False, 0.0
    m = _ROT_RE.match(text.strip())
    if m is None:
        raise ValueError(f"bad rotation {text!r}")
    deg = float(m.group(3)) % 360.0
    quant = int(round(deg / 90.0)) % 4 * 90
    return quant, bool(m.group(2)), deg


class _Reader:
    def __init__(self):
        self.diags: list[Diagnostic] = []

    def warn(self, path: str, message: str) -> None:
        self.diags.append(Diagnostic("warning", path, message))

    def children(self, elem: ET.Element, path: str, known: Iterable[str]) -> Iterator[tuple[ET.Element, str]]:
        known = set(known)
        counts: dict[str, int] = {}
        for child in elem:
            if not isinstance(child.tag, str):
                continue
            i = counts.get(child.tag, 0)
            counts[child.tag] = i + 1
            cpath = f"{path}/{child.tag}[{i}]"
            if child.tag in known:
                yield child, cpath
            elif child.tag not in _IGNORED:
                self.warn(cpath, f"unknown element <{child.tag}> skipped")

    def num(self, elem: ET.Element, name: str, path: str, default: Optional[float] = None) -> float:
        raw = elem.get(name)
        if raw is None:
            if default is None:
                raise MalformedXml(f"{path}: missing attribute {name!r}")
            return default
        try:
            v = float(raw)
        except ValueError:
            raise MalformedXml(f"{path}: attribute {name}={raw!r} is not a number") from None
        if not math.isfinite(v):
            raise MalformedXml(f"{path}: attribute {name}={raw!r} is not finite")
        return v

    def req(self, elem: ET.Element, name: str, path: str) -> str:
        raw = elem.get(name)
        if raw is None:
            raise MalformedXml(f"{path}: missing attribute {name!r}")
        return raw

    def rot(self, elem: ET.Element, path: str) -> tuple[int, bool]:
        raw = elem.get("rot")
        try:
            quant, mirror, exact = parse_rotation(raw)
        except ValueError:
            raise MalformedXml(f"{path}: bad rotation {raw!r}") from None
        if exact != quant:
            self.warn(path, f"rotation {raw} quantized to {quant}")
        return quant, mirror

    # -- primitives -------------------------------------------------------

    def primitive(self, elem: ET.Element, path: str) -> Primitive:
        tag = elem.tag
        layer = int(self.num(elem, "layer", path, 94))
        if tag == "wire":
            return Primitive(
                "wire", layer,
                ((self.num(elem, "x1", path), self.num(elem, "y1", path)),
                 (self.num(elem, "x2", path), self.num(elem, "y2", path))),
                width=self.num(elem, "width", path, 0.0),
                curve=self.num(elem, "curve", path, 0.0),
            )
        if tag == "rectangle":
            rot, _ = self.rot(elem, path)
            return Primitive(
                "rectangle", layer,
                ((self.num(elem, "x1", path), self.num(elem, "y1", path)),
                 (self.num(elem, "x2", path), self.num(elem, "y2", path))),
                rotation=rot,
            )
        if tag == "circle":
            return Primitive(
                "circle", layer, ((self.num(elem, "x", path), self.num(elem, "y", path)),),
                width=self.num(elem, "width", path, 0.0),
                radius=self.num(elem, "radius", path),
            )
        if tag == "polygon":
            verts = tuple(
                (self.num(v, "x", vp), self.num(v, "y", vp))
                for v, vp in self.children(elem, path, ["vertex"])
            )
            return Primitive("polygon", layer, verts, width=self.num(elem, "width", path, 0.0))
        if tag == "text":
            rot, mirror = self.rot(elem, path)
            return Primitive(
                "text", layer, ((self.num(elem, "x", path), self.num(elem, "y", path)),),
                rotation=rot, mirror=mirror,
                size=self.num(elem, "size", path, 1.778),
                text=(elem.text or ""),
                align=elem.get("align", "bottom-left"),
            )
        raise AssertionError(tag)

    # -- libraries --------------------------------------------------------

    def pin(self, elem: ET.Element, path: str) -> PinDef:
        rot, _ = self.rot(elem, path)
        length = elem.get("length", "long")
        if length not in PIN_LENGTHS:
            raise MalformedXml(f"{path}: unknown pin length {length!r}")
        return PinDef(
            name=self.req(elem, "name", path),
            x=self.num(elem, "x", path),
            y=self.num(elem, "y", path),
            length=length,
            direction=elem.get("direction", "io"),
            visible=elem.get("visible", "both"),
            rotation=rot,
            function=elem.get("function", "none"),
        )

    def symbol(self, elem: ET.Element, path: str) -> LibrarySymbolDef:
        prims, pins = [], []
        for child, cpath in self.children(elem, path, ["wire", "rectangle", "circle", "polygon", "text", "pin"]):
            if child.tag == "pin":
                pins.append(self.pin(child, cpath))
            else:
                prims.append(self.primitive(child, cpath))
        names = [p.name for p in pins]
        if len(set(names)) != len(names):
            raise MalformedXml(f"{path}: duplicate pin names in symbol {elem.get('name')!r}")
        return LibrarySymbolDef(self.req(elem, "name", path), tuple(prims), tuple(pins))

    def deviceset(self, elem: ET.Element, path: str) -> DeviceSet:
        gates, devices = [], []
        for child, cpath in self.children(elem, path, ["gates", "devices"]):
            if child.tag == "gates":
                for g, gp in self.children(child, cpath, ["gate"]):
                    gates.append(Gate(self.req(g, "name", gp), self.req(g, "symbol", gp),
                                      self.num(g, "x", gp, 0.0), self.num(g, "y", gp, 0.0)))
            else:
                for d, dp in self.children(child, cpath, ["device"]):
                    connects = []
                    for cs, csp in self.children(d, dp, ["connects"]):
                        for c, cp in self.children(cs, csp, ["connect"]):
                            connects.append(Connect(self.req(c, "gate", cp), self.req(c, "pin", cp),
                                                    self.req(c, "pad", cp)))
                    devices.append(Device(d.get("name", ""), d.get("package", ""), tuple(connects)))
        return DeviceSet(
            name=self.req(elem, "name", path),
            prefix=elem.get("prefix", ""),
            uservalue=elem.get("uservalue", "no") == "yes",
            gates=tuple(gates),
            devices=tuple(devices),
        )

    def library(self, elem: ET.Element, path: str) -> LibraryDef:
        symbols: dict[str, LibrarySymbolDef] = {}
        devicesets: dict[str, DeviceSet] = {}
        for child, cpath in self.children(elem, path, ["symbols", "devicesets"]):
            if child.tag == "symbols":
                for s, sp in self.children(child, cpath, ["symbol"]):
                    sym = self.symbol(s, sp)
                    symbols[sym.name] = sym
            else:
                for d, dp in self.children(child, cpath, ["deviceset"]):
                    ds = self.deviceset(d, dp)
                    devicesets[ds.name] = ds
        return LibraryDef(_library_key(elem), symbols, devicesets)

    # -- sheets -----------------------------------------------------------

    def instance(self, elem: ET.Element, path: str) -> InstanceDecl:
        rot, mirror = self.rot(elem, path)
        attrs = []
        for a, ap in self.children(elem, path, ["attribute"]):
            if a.get("x") is None:
                continue
            arot, amirror = self.rot(a, ap)
            attrs.append(AttributeDecl(
                name=self.req(a, "name", ap),
                x=self.num(a, "x", ap), y=self.num(a, "y", ap),
                size=self.num(a, "size", ap, 1.778),
                layer=int(self.num(a, "layer", ap, 95)),
                rotation=arot, mirror=amirror,
                display=a.get("display", "value"),
            ))
        return InstanceDecl(
            part=self.req(elem, "part", path),
            gate=self.req(elem, "gate", path),
            transform=Transform(self.num(elem, "x", path), self.num(elem, "y", path), rot, mirror),
            smashed=elem.get("smashed", "no") == "yes",
            attributes=tuple(attrs),
        )

    def segment(self, elem: ET.Element, path: str, sheet: int) -> Segment:
        wires, junctions, labels, pinrefs = [], [], [], []
        for child, cpath in self.children(elem, path, ["wire", "junction", "label", "pinref"]):
            if child.tag == "wire":
                wires.append(self.primitive(child, cpath))
            elif child.tag == "junction":
                junctions.append(Junction(self.num(child, "x", cpath), self.num(child, "y", cpath)))
            elif child.tag == "label":
                rot, mirror = self.rot(child, cpath)
                labels.append(Label(
                    self.num(child, "x", cpath), self.num(child, "y", cpath),
                    self.num(child, "size", cpath, 1.778), int(self.num(child, "layer", cpath, 95)),
                    rot, mirror, child.get("xref", "no") == "yes",
                ))
            else:
                pinrefs.append(PinRef(self.req(child, "part", cpath), self.req(child, "gate", cpath),
                                      self.req(child, "pin", cpath)))
        return Segment(tuple(wires), tuple(junctions), tuple(labels), tuple(pinrefs), sheet)

    def sheet(self, elem: ET.Element, path: str, index: int) -> SheetDef:
        instances, nets, plain = [], [], []
        for child, cpath in self.children(elem, path, ["plain", "instances", "nets"]):
            if child.tag == "plain":
                for p, pp in self.children(child, cpath, ["wire", "rectangle", "circle", "polygon", "text"]):
                    plain.append(self.primitive(p, pp))
            elif child.tag == "instances":
                for i, ip in self.children(child, cpath, ["instance"]):
                    instances.append(self.instance(i, ip))
            else:
                for n, np_ in self.children(child, cpath, ["net"]):
                    segs = tuple(self.segment(s, sp, index) for s, sp in self.children(n, np_, ["segment"]))
                    nets.append(NetDef(self.req(n, "name", np_), segs))
        return SheetDef(tuple(instances), tuple(nets), tuple(plain))


def _library_key(elem: ET.Element, name_attr: str = "name", urn_attr: str = "urn") -> str:
    name = elem.get(name_attr, "")
    urn = elem.get(urn_attr)
    return f"{name}@{urn}" if urn else name


def parse_schematic(xml_bytes: bytes) -> SchematicDoc:
    """Parse and validate an EAGLE ``.sch`` document.

    Raises :class:`MalformedXml`, :class:`UnsupportedVersion` or
    :class:`DanglingReference`; a returned document is always fully linked.
    """
    try:
        root = ET.fromstring(xml_bytes)
    except ET.ParseError as exc:
        raise MalformedXml(str(exc)) from None
    if root.tag != "eagle":
        raise MalformedXml(f"root element is <{root.tag}>, expected <eagle>")
    version = root.get("version", "")
    try:
        major = int(version.split(".")[0])
    except ValueError:
        raise UnsupportedVersion(f"unreadable eagle version {version!r}") from None
    if major < 6:
        raise UnsupportedVersion(f"eagle version {version} < 6")

    r = _Reader()
    libraries: dict[str, LibraryDef] = {}
    parts: list[PartDecl] = []
    sheets: list[SheetDef] = []
    schematic = None
    for drawing, dpath in r.children(root, "/eagle", ["drawing"]):
        for sch, spath in r.children(drawing, dpath, ["schematic", "board", "library"]):
            if sch.tag != "schematic":
                raise MalformedXml(f"{spath}: <{sch.tag}> documents are not schematics")
            schematic = (sch, spath)
    if schematic is None:
        raise MalformedXml("no <schematic> element")
    sch, spath = schematic
    for child, cpath in r.children(sch, spath, ["libraries", "parts", "sheets"]):
        if child.tag == "libraries":
            for lib, lpath in r.children(child, cpath, ["library"]):
                ld = r.library(lib, lpath)
                libraries[ld.name] = ld
        elif child.tag == "parts":
            for p, ppath in r.children(child, cpath, ["part"]):
                parts.append(PartDecl(
                    name=r.req(p, "name", ppath),
                    library=_library_key(p, "library", "library_urn"),
                    deviceset=r.req(p, "deviceset", ppath),
                    device=p.get("device", ""),
                    value=p.get("value", ""),
                ))
        else:
            for s, sp in r.children(child, cpath, ["sheet"]):
                sheets.append(r.sheet(s, sp, len(sheets)))

    doc = SchematicDoc(version, libraries, tuple(parts), tuple(sheets), "mm", ())
    validate(doc)
    for net in extract_nets(doc):
        if not net.pinrefs:
            r.warn(f"net[{net.name}]", "net has no pin references")
    return SchematicDoc(version, libraries, tuple(parts), tuple(sheets), "mm", tuple(r.diags))


def validate(doc: SchematicDoc) -> None:
    """Check every cross reference of ``doc``; raise on the first failure."""
    seen: set[str] = set()
    for i, part in enumerate(doc.parts):
        path = f"/parts/part[{i}]"
        if part.name in seen:
            raise DanglingReference(f"duplicate part name {part.name!r}", path)
        seen.add(part.name)
        lib = doc.libraries.get(part.library)
        if lib is None:
            raise DanglingReference(f"library {part.library!r} not found", path)
        ds = lib.devicesets.get(part.deviceset)
        if ds is None:
            raise DanglingReference(f"deviceset {part.deviceset!r} not in library {part.library!r}", path)
        if ds.device(part.device) is None:
            raise DanglingReference(f"device {part.device!r} not in deviceset {part.deviceset!r}", path)
        for g in ds.gates:
            if g.symbol not in lib.symbols:
                raise DanglingReference(f"gate {g.name!r} uses unknown symbol {g.symbol!r}", path)

    for si, sheet in enumerate(doc.sheets):
        for ii, inst in enumerate(sheet.instances):
            path = f"/sheets/sheet[{si}]/instances/instance[{ii}]"
            part = doc.part(inst.part)
            if part is None:
                raise DanglingReference(f"instance of unknown part {inst.part!r}", path)
            if doc.deviceset_of(part).gate(inst.gate) is None:
                raise MissingGate(f"part {inst.part!r} has no gate {inst.gate!r}", path)
        names: set[str] = set()
        for ni, net in enumerate(sheet.nets):
            npath = f"/sheets/sheet[{si}]/nets/net[{ni}]"
            if net.name in names:
                raise MalformedXml(f"{npath}: duplicate net name {net.name!r} on sheet")
            names.add(net.name)
            for ri, ref in enumerate(net.pinrefs):
                _check_pinref(doc, ref, f"{npath}/pinref[{ri}]")


def _check_pinref(doc: SchematicDoc, ref: PinRef, path: str) -> None:
    part = doc.part(ref.part)
    if part is None:
        raise DanglingReference(f"pinref to unknown part {ref.part!r}", path)
    lib = doc.libraries[part.library]
    gate = lib.devicesets[part.deviceset].gate(ref.gate)
    if gate is None:
        raise DanglingReference(f"pinref to unknown gate {ref.part}.{ref.gate}", path)
    if lib.symbols[gate.symbol].pin(ref.pin) is None:
        raise DanglingReference(f"pinref to unknown pin {ref.part}.{ref.gate}.{ref.pin}", path)


def resolve_instances(doc: SchematicDoc) -> list[PlacedSymbol]:
    """Join every placed (part, gate) with its symbol, device and value.

    Parts declared but never instanced are left out. The result is sorted
    by ``(part_name, gate)``.
    """
    placed = []
    for si, sheet in enumerate(doc.sheets):
        for ii, inst in enumerate(sheet.instances):
            path = f"/sheets/sheet[{si}]/instances/instance[{ii}]"
            part = doc.part(inst.part)
            if part is None:
                raise DanglingReference(f"instance of unknown part {inst.part!r}", path)
            lib = doc.libraries[part.library]
            ds = lib.devicesets[part.deviceset]
            gate = ds.gate(inst.gate)
            if gate is None:
                raise MissingGate(f"part {inst.part!r} has no gate {inst.gate!r}", path)
            symbol = lib.symbols[gate.symbol]
            device = ds.device(part.device)
            pad_map = {c.pin: c.pad for c in device.connects if c.gate == gate.name}
            pad_map = {k: v for k, v in pad_map.items() if symbol.pin(k) is not None}
            value = part.value
            if not value and not ds.uservalue:
                value = ds.name + part.device
            display = part.name + gate.name if len(ds.gates) > 1 else part.name
            placed.append(PlacedSymbol(
                part_name=part.name,
                gate=gate.name,
                symbol=symbol,
                transform=inst.transform,
                value=value,
                symbol_type=ds.name,
                pad_map=pad_map,
                display_name=display,
                attributes=inst.attributes,
                smashed=inst.smashed,
                sheet=si,
            ))
    placed.sort(key=lambda p: p.key)
    return placed


def extract_nets(doc: SchematicDoc) -> list[NetDef]:
    """Merge same-named nets across sheets, preserving first-seen order."""
    merged: dict[str, list[Segment]] = {}
    for si, sheet in enumerate(doc.sheets):
        for ni, net in enumerate(sheet.nets):
            for ri, ref in enumerate(net.pinrefs):
                _check_pinref(doc, ref, f"/sheets/sheet[{si}]/nets/net[{ni}]/pinref[{ri}]")
            merged.setdefault(net.name, []).extend(net.segments)
    return [NetDef(name, tuple(segs)) for name, segs in merged.items()]


def load_schematic(path) -> SchematicDoc:
    with open(path, "rb") as fh:
        return parse_schematic(fh.read())
