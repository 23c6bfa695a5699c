"""JSON round-trip for the frozen dataclass trees in :mod:`schnet.eagle`.

Conversion is driven by field type hints, so any dataclass built from
``str``/``int``/``float``/``bool``, ``tuple[X, ...]``, fixed tuples,
``dict[str, X]``, ``Optional[X]`` and nested dataclasses round-trips.
"""

from __future__ import annotations

import dataclasses
import json
import types
import typing
from functools import lru_cache

from . import eagle


def to_jsonable(obj):
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {k: to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (tuple, list)):
        return [to_jsonable(v) for v in obj]
    return obj


@lru_cache(maxsize=None)
def _hints(cls):
    return typing.get_type_hints(cls, vars(eagle))


def from_jsonable(tp, data):
    if dataclasses.is_dataclass(tp):
        hints = _hints(tp)
        kwargs = {}
        for f in dataclasses.fields(tp):
            if f.name in data:
                kwargs[f.name] = from_jsonable(hints[f.name], data[f.name])
        return tp(**kwargs)
    origin = typing.get_origin(tp)
    args = typing.get_args(tp)
    if origin in (typing.Union, types.UnionType):
        if data is None:
            return None
        inner = [a for a in args if a is not type(None)]
        return from_jsonable(inner[0], data)
    if origin is tuple:
        if len(args) == 2 and args[1] is Ellipsis:
            return tuple(from_jsonable(args[0], v) for v in data)
        return tuple(from_jsonable(a, v) for a, v in zip(args, data))
    if origin is dict:
        return {k: from_jsonable(args[1], v) for k, v in data.items()}
    if tp is float:
        return float(data)
    return data


def dump_ir(doc: eagle.SchematicDoc) -> str:
    """Serialize a parsed schematic to deterministic JSON text."""
    return json.dumps(to_jsonable(doc), sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def load_ir(text: str) -> eagle.SchematicDoc:
    return from_jsonable(eagle.SchematicDoc, json.loads(text))
