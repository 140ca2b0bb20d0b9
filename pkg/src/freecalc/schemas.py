"""JSON Schemas for the serialized forms printed by ``--json``."""

GROUP = {
    "type": "object",
    "required": ["variety", "rank", "generators"],
    "properties": {
        "variety": {"type": "string"},
        "rank": {"type": "integer", "minimum": 0},
        "generators": {"type": "array", "items": {"type": "string"}},
    },
}

RING_ELEMENT = {
    "type": "object",
    "required": ["group", "terms"],
    "properties": {
        "group": GROUP,
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["coeff", "key"],
                "properties": {
                    "coeff": {"type": "string", "pattern": "^-?[1-9][0-9]*$"},
                    "key": {"type": "string"},
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

MODULE_VECTOR = {
    "type": "object",
    "required": ["quotient", "coords"],
    "properties": {
        "quotient": {"type": "string"},
        "coords": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "string"}, RING_ELEMENT],
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
    "additionalProperties": False,
}

NILPOTENT_NF = {
    "type": "object",
    "required": ["class", "exponents"],
    "properties": {
        "class": {"type": "integer", "minimum": 1},
        "exponents": {
            "type": "array",
            "items": {
                "type": "array",
                "prefixItems": [{"type": "string"}, {"type": "string", "pattern": "^-?[1-9][0-9]*$"}],
                "minItems": 2,
                "maxItems": 2,
            },
        },
    },
    "additionalProperties": False,
}

ENDOMORPHISM = {
    "type": "object",
    "required": ["rank", "images", "variety"],
    "properties": {
        "rank": {"type": "integer", "minimum": 0},
        "images": {"type": "array", "items": {"type": "string"}},
        "variety": {"type": "string"},
    },
    "additionalProperties": False,
}

HOM_WORD = {
    "type": "object",
    "required": ["term", "args"],
    "properties": {
        "term": {"type": "string"},
        "args": {"type": "array", "items": {"type": "string"}},
    },
}
