"""JSON Schemas for every document the toolchain reads or writes.

``GRAPH_SCHEMA``       canonical netlist graph (``*.graph.json``)
``ANNOTATION_SCHEMA``  render annotations (``*.annotations.json``)
``PREDICTION_SCHEMA``  what an external model must emit for evaluation
"""

from __future__ import annotations

from jsonschema import Draft202012Validator

from .errors import SchemaViolation

_INT_BOX = {"type": "array", "items": {"type": "integer"}, "minItems": 4, "maxItems": 4}
_NUM_BOX = {"type": "array", "items": {"type": "number"}, "minItems": 4, "maxItems": 4}
_IMAGE = {
    "type": "object",
    "required": ["width", "height"],
    "properties": {"width": {"type": "integer", "minimum": 1}, "height": {"type": "integer", "minimum": 1}},
}

GRAPH_SCHEMA = {
    "type": "object",
    "required": ["image", "symbols", "pins", "nets"],
    "properties": {
        "schema": {"const": "schnet.graph/1"},
        "image": _IMAGE,
        "symbols": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "name", "value", "type", "orientation", "mirror", "bbox"],
                "properties": {
                    "id": {"type": "string"},
                    "name": {"type": "string"},
                    "value": {"type": "string"},
                    "type": {"type": "string"},
                    "orientation": {"enum": [0, 90, 180, 270]},
                    "mirror": {"type": "boolean"},
                    "bbox": {"anyOf": [_INT_BOX, {"type": "null"}]},
                },
            },
        },
        "pins": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "parent", "pin_name", "pad_name", "net_name", "bbox"],
                "properties": {
                    "id": {"type": "string"},
                    "parent": {"type": "string"},
                    "pin_name": {"type": "string"},
                    "pad_name": {"type": "string"},
                    "net_name": {"type": "string"},
                    "bbox": {"anyOf": [_INT_BOX, {"type": "null"}]},
                },
            },
        },
        "nets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "pins"],
                "properties": {
                    "name": {"type": "string"},
                    "pins": {"type": "array", "items": {"type": "string"}},
                },
            },
        },
    },
}

ANNOTATION_SCHEMA = {
    "type": "object",
    "required": ["image", "symbols", "pins", "texts", "nets"],
    "properties": {
        "schema": {"const": "schnet.annotations/1"},
        "image": _IMAGE,
        "symbols": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "part", "gate", "bbox", "type", "orientation", "mirror", "name", "value"],
                "properties": {
                    "bbox": _INT_BOX,
                    "orientation": {"enum": [0, 90, 180, 270]},
                    "mirror": {"type": "boolean"},
                },
            },
        },
        "pins": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "parent", "pin_name", "pad_name", "bbox", "anchor"],
                "properties": {
                    "bbox": _INT_BOX,
                    "anchor": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
                },
            },
        },
        "texts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "content", "bbox", "role"],
                "properties": {
                    "bbox": _INT_BOX,
                    "role": {"enum": ["symbol_name", "symbol_value", "net_label", "pin_annotation", "plain"]},
                    "target": {"type": ["string", "null"]},
                },
            },
        },
        "nets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "polylines"],
                "properties": {
                    "name": {"type": "string"},
                    "polylines": {
                        "type": "array",
                        "items": {
                            "type": "array",
                            "items": {"type": "array", "items": {"type": "integer"}, "minItems": 2, "maxItems": 2},
                        },
                    },
                },
            },
        },
    },
}

_OPT_STR = {"type": ["string", "null"]}

PREDICTION_SCHEMA = {
    "type": "object",
    "required": ["symbols", "pins", "nets"],
    "properties": {
        "symbols": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "value", "type"],
                "properties": {
                    "name": _OPT_STR,
                    "value": _OPT_STR,
                    "type": _OPT_STR,
                    "orientation": {"type": ["number", "string", "null"]},
                    "bbox": {"anyOf": [_NUM_BOX, {"type": "null"}]},
                },
            },
        },
        "pins": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["parent"],
                "properties": {
                    "parent": {"type": "integer", "minimum": 0},
                    "pin_name": _OPT_STR,
                    "pad_name": _OPT_STR,
                    "net_name": _OPT_STR,
                    "bbox": {"anyOf": [_NUM_BOX, {"type": "null"}]},
                },
            },
        },
        "nets": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "pins"],
                "properties": {
                    "name": _OPT_STR,
                    "pins": {"type": "array", "items": {"type": "integer", "minimum": 0}},
                },
            },
        },
    },
}

_VALIDATORS: dict[int, Draft202012Validator] = {}


def schema_errors(doc, schema) -> list[tuple[str, str]]:
    v = _VALIDATORS.get(id(schema))
    if v is None:
        v = _VALIDATORS[id(schema)] = Draft202012Validator(schema)
    errs = sorted(v.iter_errors(doc), key=lambda e: [str(p) for p in e.absolute_path])
    return [("/".join(str(p) for p in e.absolute_path), e.message) for e in errs]


def validate_document(doc, schema) -> None:
    errors = schema_errors(doc, schema)
    if errors:
        raise SchemaViolation(errors)
