"""JSON Schemas (draft 2020-12) of the CLI ``--json`` outputs, keyed by command."""
from __future__ import annotations

_SCALAR = {"type": "string", "minLength": 1}
_LABELS = {"type": "array", "items": {"type": "string"}}

_CHECK = {
    "type": "object",
    "required": ["id", "status", "detail", "tag"],
    "properties": {"id": {"type": "string"}, "status": {"enum": ["pass", "fail"]},
                   "detail": {"type": "string"}, "tag": {"type": "string"}},
    "additionalProperties": False,
}

_REPORT = {
    "type": "object",
    "required": ["title", "status", "checks"],
    "properties": {"title": {"type": "string"}, "status": {"enum": ["pass", "fail"]},
                   "checks": {"type": "array", "items": _CHECK}},
    "additionalProperties": False,
}

_REPORTS = {
    "type": "object",
    "required": ["command", "bundle", "status", "reports"],
    "properties": {"command": {"type": "string"}, "bundle": {"type": "string"},
                   "status": {"enum": ["pass", "fail"]},
                   "reports": {"type": "array", "items": _REPORT},
                   "precision": {"type": "integer"}},
    "additionalProperties": False,
}

_INT_TABLE = {
    "type": "object",
    "required": ["rows", "cols", "entries"],
    "properties": {"rows": _LABELS, "cols": _LABELS,
                   "entries": {"type": "array",
                               "items": {"type": "array", "items": {"type": "integer", "minimum": 0}}}},
    "additionalProperties": False,
}

_CHARACTER = {
    "type": "object",
    "required": ["name", "dim", "codegree", "values"],
    "properties": {"name": {"type": "string"}, "dim": _SCALAR, "codegree": _SCALAR,
                   "values": {"type": "object", "additionalProperties": _SCALAR}},
    "additionalProperties": False,
}

SCHEMAS = {
    "validate": _REPORTS,
    "report": _REPORTS,
    "chartable": {
        "type": "object",
        "required": ["command", "ring", "labels", "characters"],
        "properties": {"command": {"const": "chartable"}, "ring": {"type": "string"},
                       "labels": _LABELS, "characters": {"type": "array", "items": _CHARACTER}},
        "additionalProperties": False,
    },
    "codegrees": {
        "type": "object",
        "required": ["command", "ring", "codegrees"],
        "properties": {
            "command": {"const": "codegrees"}, "ring": {"type": "string"},
            "codegrees": {"type": "array", "items": {
                "type": "object",
                "required": ["name", "dim", "codegree", "totally_positive"],
                "properties": {"name": {"type": "string"}, "dim": _SCALAR, "codegree": _SCALAR,
                               "totally_positive": {"type": "boolean"}},
                "additionalProperties": False}},
        },
        "additionalProperties": False,
    },
    "twisted": {
        "type": "object",
        "required": ["command", "bundle", "grading_order", "gauge_convention", "extensions"],
        "properties": {
            "command": {"const": "twisted"}, "bundle": {"type": "string"},
            "grading_order": {"type": "integer", "minimum": 1},
            "gauge_convention": {"type": "string"},
            "extensions": {"type": "array", "items": {
                "type": "object",
                "required": ["irrep", "dim", "lambda", "gauge", "values", "m"],
                "properties": {
                    "irrep": {"type": "string"}, "dim": _SCALAR, "lambda": _SCALAR, "gauge": _SCALAR,
                    "values": {"type": "object", "additionalProperties": {
                        "type": "object", "additionalProperties": _SCALAR}},
                    "m": {"type": "object", "additionalProperties": _SCALAR},
                },
                "additionalProperties": False}},
        },
        "additionalProperties": False,
    },
    "mult": {
        "type": "object",
        "required": ["command", "bundle", "restriction"],
        "properties": {"command": {"const": "mult"}, "bundle": {"type": "string"},
                       "restriction": _INT_TABLE, "formula": _INT_TABLE,
                       "match": {"type": "boolean"},
                       "diff": {"type": "array", "items": {"type": "string"}}},
        "additionalProperties": False,
    },
    "crossed-s": {
        "type": "object",
        "required": ["command", "bundle", "rows", "cols", "entries"],
        "properties": {"command": {"const": "crossed-s"}, "bundle": {"type": "string"},
                       "rows": _LABELS, "cols": _LABELS,
                       "entries": {"type": "array", "items": {"type": "array", "items": _SCALAR}}},
        "additionalProperties": False,
    },
}
