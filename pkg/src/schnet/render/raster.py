"""Deterministic raster rendering of a parsed schematic.

Geometry is computed in millimetres, mapped onto a pixel canvas and drawn
with Pillow without anti-aliasing. Annotation boxes come from the
transformed primitive extents, never from scanning pixels, so the raster
and its annotations agree by construction.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field
from typing import Optional, Union

from PIL import Image, ImageDraw

from .. import eagle
from ..annotations import (
    VARIATIONS,
    AnnotationSet,
    PinAnnotation,
    SymbolAnnotation,
    TextInstance,
    apply_variation,
)
from ..errors import EmptyDrawing
from ..graph import canonical_ids
from .geometry import (
    Canvas,
    arc_points,
    direction,
    extent,
    pin_stub,
    primitive_points,
    symbol_points,
    symbol_text_anchor,
    text_box,
    transform_vector,
)

MARGIN_PX = 16
PIN_DILATE_PX = 3
SHEET_GAP_MM = 25.4
JUNCTION_RADIUS_MM = 0.5
PIN_NAME_SIZE = 1.778
PAD_NAME_SIZE = 1.27
DIM_MULTIPLE = 8

PALETTES = {
    "eagle_default": {
        91: (0, 128, 0),     # nets
        92: (0, 0, 160),     # busses
        94: (160, 0, 0),     # symbols
        95: (64, 64, 64),    # names
        96: (64, 64, 64),    # values
        97: (64, 64, 64),    # info
        None: (0, 0, 0),
    },
    "monochrome": {None: (0, 0, 0)},
}

Color = tuple[int, int, int]


@dataclass(frozen=True)
class RenderConfig:
    scale: float = 10.0
    variation: str = "full_text"
    palette: Union[str, dict] = "eagle_default"
    background: Color = (255, 255, 255)
    downsample: int = 1

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("scale must be positive")
        if not isinstance(self.downsample, int) or self.downsample < 1:
            raise ValueError("downsample must be an integer >= 1")
        if self.variation not in VARIATIONS:
            raise ValueError(f"unknown variation {self.variation!r}")
        if isinstance(self.palette, str) and self.palette not in PALETTES:
            raise ValueError(f"unknown palette {self.palette!r}")

    def color(self, layer: Optional[int]) -> Color:
        if isinstance(self.palette, dict):
            base = PALETTES["eagle_default"]
            if layer in self.palette:
                return tuple(self.palette[layer])
            return base.get(layer, base[None])
        pal = PALETTES[self.palette]
        return pal.get(layer, pal[None])


@dataclass
class _Scene:
    """Everything to draw, in world millimetres."""

    lines: list = field(default_factory=list)       # (points, width_mm, layer)
    polygons: list = field(default_factory=list)    # (points, layer)
    rects: list = field(default_factory=list)       # (corners, layer)
    circles: list = field(default_factory=list)     # (center, radius, width_mm, layer)
    texts: list = field(default_factory=list)       # (TextBox, layer, role, target)
    symbols: list = field(default_factory=list)     # (placed, sid, points)
    pins: list = field(default_factory=list)        # (pid, sid, pin, pad, anchor, end)
    nets: dict = field(default_factory=dict)        # name -> list of point lists

    def points(self):
        for pts, _, _ in self.lines:
            yield from pts
        for pts, _ in self.polygons:
            yield from pts
        for pts, _ in self.rects:
            yield from pts
        for (x, y), r, _, _ in self.circles:
            yield (x - r, y - r)
            yield (x + r, y + r)
        for tb, _, _, _ in self.texts:
            yield tb.region[:2]
            yield tb.region[2:]


def _add_primitive(scene: _Scene, prim: eagle.Primitive, tf, layer_default=None):
    layer = prim.layer if prim.layer is not None else layer_default
    if prim.kind == "wire":
        scene.lines.append(([tf(p) for p in arc_points(prim.points[0], prim.points[1], prim.curve)], prim.width, layer))
    elif prim.kind == "rectangle":
        scene.rects.append(([tf(p) for p in primitive_points(prim)], layer))
    elif prim.kind == "polygon":
        scene.polygons.append(([tf(p) for p in prim.points], layer))
    elif prim.kind == "circle":
        c = tf(prim.points[0])
        scene.circles.append((c, prim.radius, prim.width, layer))


def _sheet_offsets(doc: eagle.SchematicDoc, placed, nets) -> list[tuple[float, float]]:
    """Shift sheets so they sit side by side left to right."""
    xs: dict[int, list[float]] = {}
    for ps in placed:
        xs.setdefault(ps.sheet, []).extend(p[0] for p in symbol_points(ps))
    for net in nets:
        for seg in net.segments:
            for w in seg.wires:
                xs.setdefault(seg.sheet, []).extend(p[0] for p in w.points)
    for i, sheet in enumerate(doc.sheets):
        for prim in sheet.plain:
            xs.setdefault(i, []).extend(p[0] for p in primitive_points(prim))
    offsets = []
    cursor = None
    for i in range(len(doc.sheets)):
        if i not in xs:
            offsets.append((0.0, 0.0))
            continue
        lo, hi = min(xs[i]), max(xs[i])
        dx = 0.0 if cursor is None else cursor + SHEET_GAP_MM - lo
        offsets.append((dx, 0.0))
        cursor = hi + dx
    return offsets


def _symbol_texts(scene: _Scene, ps: eagle.PlacedSymbol, sid: str, off):
    subst = {">NAME": (ps.display_name, "symbol_name"), ">VALUE": (ps.value, "symbol_value"),
             ">PART": (ps.part_name, "symbol_name"), ">GATE": (ps.gate, "symbol_name")}
    smashed = {a.name.upper(): a for a in ps.attributes} if ps.smashed else {}
    for prim in ps.symbol.primitives:
        if prim.kind != "text":
            continue
        key = prim.text.strip().upper()
        content, role = subst.get(key, (prim.text, "plain"))
        if key in (">NAME", ">VALUE") and ps.smashed:
            continue
        if not content:
            continue
        anchor, rot, mirror = symbol_text_anchor(ps, prim, off)
        target = sid if role != "plain" else None
        scene.texts.append((text_box(content, anchor, prim.size, rot, mirror, prim.align), prim.layer, role, target))
    for name in ("NAME", "VALUE"):
        a = smashed.get(name)
        if a is None or a.display == "off":
            continue
        content = ps.display_name if name == "NAME" else ps.value
        if not content:
            continue
        anchor = (a.x + off[0], a.y + off[1])
        role = "symbol_name" if name == "NAME" else "symbol_value"
        scene.texts.append((text_box(content, anchor, a.size, a.rotation, a.mirror), a.layer, role, sid))


def _pin_texts(scene: _Scene, ps: eagle.PlacedSymbol, pin: eagle.PinDef, pid: str, anchor, end):
    d = transform_vector(ps.transform, direction(pin.rotation))
    horizontal = abs(d[0]) > 0.5
    forward = d[0] > 0.5 or d[1] > 0.5
    if pin.visible in ("pin", "both"):
        at = (end[0] + d[0] * 0.762, end[1] + d[1] * 0.762)
        rot = 0 if horizontal else 90
        align = "center-left" if forward else "center-right"
        scene.texts.append((text_box(pin.name, at, PIN_NAME_SIZE, rot, False, align), 95, "pin_annotation", pid))
    pad = ps.pad_map.get(pin.name, "")
    if pad and pin.visible in ("pad", "both"):
        mid = ((anchor[0] + end[0]) / 2, (anchor[1] + end[1]) / 2)
        if horizontal:
            at, rot = (mid[0], mid[1] + 0.254), 0
        else:
            at, rot = (mid[0] - 0.254, mid[1]), 90
        scene.texts.append((text_box(pad, at, PAD_NAME_SIZE, rot, False, "bottom-center"), 97, "pin_annotation", pid))


def build_scene(doc: eagle.SchematicDoc) -> _Scene:
    placed = eagle.resolve_instances(doc)
    nets = eagle.extract_nets(doc)
    has_wires = any(n.wires for n in nets) or any(p.kind == "wire" for s in doc.sheets for p in s.plain)
    if not placed and not has_wires:
        raise EmptyDrawing("schematic has no placed instances and no wires")
    sym_ids, pin_ids = canonical_ids(placed)
    offsets = _sheet_offsets(doc, placed, nets)
    scene = _Scene()

    for i, sheet in enumerate(doc.sheets):
        off = offsets[i]

        def tf(p, off=off):
            return (p[0] + off[0], p[1] + off[1])

        for prim in sheet.plain:
            if prim.kind == "text":
                scene.texts.append((text_box(prim.text, tf(prim.points[0]), prim.size, prim.rotation, prim.mirror,
                                             prim.align), prim.layer, "plain", None))
            else:
                _add_primitive(scene, prim, tf)

    for ps in placed:
        off = offsets[ps.sheet]
        sid = sym_ids[ps.key]
        t = ps.transform

        def tf(p, t=t, off=off):
            x, y = t.apply(*p)
            return (x + off[0], y + off[1])

        for prim in ps.symbol.primitives:
            if prim.kind != "text":
                _add_primitive(scene, prim, tf)
        scene.symbols.append((ps, sid, symbol_points(ps, off)))
        for pin in sorted(ps.symbol.pins, key=lambda p: p.name):
            anchor, end = pin_stub(ps, pin, off)
            pid = pin_ids[(ps.part_name, ps.gate, pin.name)]
            scene.pins.append((pid, sid, pin.name, ps.pad_map.get(pin.name, ""), anchor, end))
            scene.lines.append(([anchor, end], 0.1524, 94))
            _pin_texts(scene, ps, pin, pid, anchor, end)
        _symbol_texts(scene, ps, sid, off)

    for net in nets:
        lines = scene.nets.setdefault(net.name, [])
        for seg in net.segments:
            off = offsets[seg.sheet]
            for w in seg.wires:
                pts = [(p[0] + off[0], p[1] + off[1]) for p in arc_points(w.points[0], w.points[1], w.curve)]
                lines.append(pts)
                scene.lines.append((pts, w.width, w.layer))
            for j in seg.junctions:
                scene.circles.append(((j.x + off[0], j.y + off[1]), JUNCTION_RADIUS_MM, 0.0, 91))
            for lab in seg.labels:
                tb = text_box(net.name, (lab.x + off[0], lab.y + off[1]), lab.size, lab.rotation, lab.mirror)
                scene.texts.append((tb, lab.layer, "net_label", f"net:{net.name}"))
    return scene


def _outward(b, f: int = 1) -> tuple[int, int, int, int]:
    x0, y0, x1, y1 = (math.floor(b[0] / f), math.floor(b[1] / f), math.ceil(b[2] / f), math.ceil(b[3] / f))
    if x1 <= x0:
        x1 = x0 + 1
    if y1 <= y0:
        y1 = y0 + 1
    return (x0, y0, x1, y1)


def _canvas(scene: _Scene, cfg: RenderConfig) -> Canvas:
    pts = list(scene.points())
    for _, _, spts in scene.symbols:
        pts.extend(spts)
    x0, y0, x1, y1 = extent(pts)
    mult = DIM_MULTIPLE * cfg.downsample // math.gcd(DIM_MULTIPLE, cfg.downsample)
    w = math.ceil((x1 - x0) * cfg.scale) + 2 * MARGIN_PX
    h = math.ceil((y1 - y0) * cfg.scale) + 2 * MARGIN_PX
    w = -(-w // mult) * mult
    h = -(-h // mult) * mult
    return Canvas(cfg.scale, x0, y1, MARGIN_PX, w, h)


def _annotations(scene: _Scene, canvas: Canvas, f: int) -> AnnotationSet:
    symbols = []
    for ps, sid, pts in scene.symbols:
        symbols.append(SymbolAnnotation(
            sid, ps.part_name, ps.gate, _outward(canvas.box_px(pts), f), ps.symbol_type,
            ps.transform.rotation, ps.transform.mirror, ps.display_name, ps.value,
        ))
    pins = []
    for pid, sid, name, pad, anchor, end in scene.pins:
        ax, ay = canvas.to_px(anchor)
        pins.append(PinAnnotation(pid, sid, name, pad, _outward(canvas.box_px([anchor, end], PIN_DILATE_PX), f),
                                  (round(ax / f), round(ay / f))))
    texts = []
    for i, (tb, _, role, target) in enumerate(scene.texts):
        (x0, y0, x1, y1) = tb.region
        texts.append(TextInstance(f"t{i}", tb.content, _outward(canvas.box_px([(x0, y0), (x1, y1)]), f),
                                  role, target))
    nets = {}
    for name, lines in scene.nets.items():
        nets[name] = tuple(
            tuple((round(x / f), round(y / f)) for x, y in (canvas.to_px(p) for p in line)) for line in lines
        )
    symbols.sort(key=lambda s: int(s.id[1:]))
    pins.sort(key=lambda p: int(p.id[1:]))
    return AnnotationSet((canvas.width // f, canvas.height // f), tuple(symbols), tuple(pins), tuple(texts), nets)


def _stroke(mm: float, scale: float) -> int:
    return max(1, int(round(mm * scale)))


def _draw(scene: _Scene, canvas: Canvas, cfg: RenderConfig, drawn_texts: set[int]) -> Image.Image:
    img = Image.new("RGB", (canvas.width, canvas.height), tuple(cfg.background))
    d = ImageDraw.Draw(img)
    px = canvas.to_px
    for pts, layer in scene.rects:
        d.polygon([px(p) for p in pts], fill=cfg.color(layer))
    for pts, layer in scene.polygons:
        d.polygon([px(p) for p in pts], fill=cfg.color(layer), outline=cfg.color(layer))
    for (cx, cy), r, width, layer in scene.circles:
        x, y = px((cx, cy))
        rp = r * canvas.scale
        box = [x - rp, y - rp, x + rp, y + rp]
        if width == 0:
            d.ellipse(box, fill=cfg.color(layer))
        else:
            d.ellipse(box, outline=cfg.color(layer), width=_stroke(width, canvas.scale))
    for pts, width, layer in scene.lines:
        d.line([px(p) for p in pts], fill=cfg.color(layer), width=_stroke(width, canvas.scale))
    for i, (tb, layer, _, _) in enumerate(scene.texts):
        if i not in drawn_texts:
            continue
        w = _stroke(tb.size * 0.1, canvas.scale)
        for stroke in tb.strokes():
            d.line([px(p) for p in stroke], fill=cfg.color(layer), width=w)
    return img


def render(doc: eagle.SchematicDoc, cfg: RenderConfig = RenderConfig()) -> tuple[Image.Image, AnnotationSet]:
    """Rasterize ``doc`` and return ``(image, annotations)``.

    Identical inputs give pixel-identical images and identical annotations.
    Raises :class:`EmptyDrawing` when there is nothing to draw.
    """
    scene = build_scene(doc)
    canvas = _canvas(scene, cfg)
    full = _annotations(scene, canvas, cfg.downsample)
    ann = apply_variation(full, cfg.variation)
    kept = {t.id for t in ann.texts}
    drawn = {i for i, t in enumerate(full.texts) if t.id in kept}
    img = _draw(scene, canvas, cfg, drawn)
    if cfg.downsample > 1:
        img = img.reduce(cfg.downsample)
    return img, ann


def png_bytes(img: Image.Image) -> bytes:
    buf = io.BytesIO()
    img.save(buf, format="PNG", optimize=False, compress_level=6)
    return buf.getvalue()
