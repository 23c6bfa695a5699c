"""Convenience glue: schematic file to (image, annotations, graph)."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Union

from PIL import Image

from .annotations import AnnotationSet
from .eagle import SchematicDoc, extract_nets, load_schematic, parse_schematic, resolve_instances
from .graph import NetlistGraph, build_graph
from .render import RenderConfig, render


@dataclass(frozen=True)
class Rendered:
    image: Image.Image
    annotations: AnnotationSet
    graph: NetlistGraph


def process(doc: SchematicDoc, cfg: RenderConfig = RenderConfig()) -> Rendered:
    img, ann = render(doc, cfg)
    g = build_graph(resolve_instances(doc), extract_nets(doc), ann)
    return Rendered(img, ann, g)


def process_file(path: Union[str, Path], cfg: RenderConfig = RenderConfig()) -> Rendered:
    return process(load_schematic(path), cfg)


def process_bytes(xml: bytes, cfg: RenderConfig = RenderConfig()) -> Rendered:
    return process(parse_schematic(xml), cfg)
