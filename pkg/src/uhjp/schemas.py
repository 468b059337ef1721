"""JSON Schemas for CLI reports; each report names its schema in ``"schema"``."""

VERSION = 1

_big = {
    "type": "object",
    "required": ["exact"],
    "properties": {"exact": {"type": "boolean"}, "value": {"type": ["string", "null"]}, "digits": {"type": "integer"}, "expr": {"type": "string"}},
}

_word = {
    "type": "object",
    "required": ["alphabet", "vars", "body"],
    "properties": {"alphabet": {"type": "integer"}, "vars": {"type": "array", "items": {"type": "integer"}}, "body": {"type": "array"}},
}

_class = {
    "type": "object",
    "required": ["members", "colors", "monochromatic"],
    "properties": {"members": {"type": "array"}, "colors": {"type": "array"}, "monochromatic": {"type": "boolean"}},
}


def _report(name, required, props):
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "required": ["schema"] + required,
        "properties": {"schema": {"const": f"uhjp.{name}/{VERSION}"}, **props},
    }


SCHEMAS = {
    "group": _report("group", ["order", "labels", "abelian", "solvable", "orbits"], {
        "order": {"type": "integer"},
        "labels": {"type": "array", "items": {"type": "string"}},
        "abelian": {"type": "boolean"},
        "solvable": {"type": "boolean"},
        "derived_series": {"type": "array"},
        "series": {"type": ["object", "null"]},
        "orbits": {"type": "array"},
    }),
    "hj-degree": _report("hj-degree", ["value", "factor_orders", "per_step"], {
        "value": {"type": "string", "pattern": "^[0-9]+$"},
        "factor_orders": {"type": "array", "items": {"type": "integer"}},
        "per_step": {"type": "array", "items": {"type": "string"}},
        "all": {"type": "array"},
        "duplicates": {"type": "object"},
    }),
    "plan": _report("plan", ["extractor", "length", "degree", "feasible", "stages"], {
        "extractor": {"type": "string"},
        "length": _big,
        "degree": {"type": "string"},
        "feasible": {"type": "boolean"},
        "stages": {"type": "array", "items": {"type": "object", "required": ["stage", "dense"]}},
    }),
    "extract": _report("extract", ["witness", "length", "degree", "verified", "certificate"], {
        "witness": _word,
        "length": {"type": "string"},
        "degree": {"type": "integer"},
        "verified": {"type": "boolean"},
        "certificate": {"type": "array", "items": _class},
        "query_count": {"type": "integer"},
    }),
    "verify": _report("verify", ["ok", "classes"], {
        "ok": {"type": "boolean"},
        "classes": {"type": "array", "items": _class},
    }),
    "search-min-n": _report("search-min-n", ["value", "verdict", "reports"], {
        "value": {"type": ["integer", "null"]},
        "verdict": {"enum": ["found", "none", "unknown"]},
        "reports": {"type": "array", "items": {"type": "object", "required": ["verdict", "N", "colorings_checked"]}},
    }),
    "euclid": _report("euclid", ["mode"], {"mode": {"enum": ["symmetry", "dilation", "embed"]}}),
    "error": _report("error", ["error", "message"], {"error": {"type": "string"}, "message": {"type": "string"}}),
}
