"""JSON Schemas (draft 2020-12) for the ``--json`` reports.

Field names listed under ``required`` are a stable contract.
"""

MANIFEST = {
    "type": "object",
    "required": ["subcommand", "inputs", "config", "version", "timestamp"],
    "properties": {
        "subcommand": {"type": "string"},
        "inputs": {"type": "array", "items": {"type": "string"}},
        "config": {"type": "object"},
        "version": {"type": "string"},
        "timestamp": {"type": "string"},
    },
}

COLORING = {
    "type": "object",
    "required": ["target", "k", "assignment"],
    "properties": {
        "target": {"enum": ["vertex", "edge"]},
        "k": {"type": "integer", "minimum": 0},
        "assignment": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
}

DATASET_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["passed", "failed_steps", "steps", "seconds", "manifest"],
    "properties": {
        "chromatic_index": {"type": ["integer", "null"]},
        "pi_prime_certified": {"type": ["integer", "null"]},
        "ks": {"type": "boolean"},
        "passed": {"type": "boolean"},
        "failed_steps": {"type": "array", "items": {"type": "string"}},
        "steps": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["step", "ok"],
                "properties": {"step": {"type": "string"}, "ok": {"type": "boolean"}},
            },
        },
        "seconds": {"type": "number"},
        "manifest": MANIFEST,
    },
}

CHROMA_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["index", "graph6", "parameter", "status", "value", "lower", "upper",
                 "lower_reason", "certificate", "manifest"],
    "properties": {
        "index": {"type": "integer"},
        "graph6": {"type": "string"},
        "parameter": {"enum": ["chromatic_number", "chromatic_index"]},
        "status": {"enum": ["exact", "inconclusive"]},
        "value": {"type": ["integer", "null"]},
        "lower": {"type": "integer"},
        "upper": {"type": "integer"},
        "lower_reason": {"type": "string"},
        "certificate": {"oneOf": [COLORING, {"type": "null"}]},
        "manifest": MANIFEST,
    },
}

SOLVE_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["status", "d", "residual", "restarts", "seed", "rounding",
                 "per_restart_losses"],
    "properties": {
        "status": {"enum": ["success", "exhausted"]},
        "target": {"enum": ["vertex", "edge"]},
        "d": {"type": "integer", "minimum": 1},
        "residual": {"type": "number", "minimum": 0},
        "restarts": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer"},
        "assignment": {"type": "array", "items": {"type": "array", "items": {"type": "number"}}},
        "rounding": {
            "type": "object",
            "required": ["attempted", "certified", "max_denominator"],
            "properties": {
                "attempted": {"type": "boolean"},
                "certified": {"type": "boolean"},
                "max_denominator": {"type": ["integer", "null"]},
            },
        },
        "per_restart_losses": {"type": "array", "items": {"type": "number"}},
        "pi_upper_bound": {"type": ["integer", "null"]},
    },
}

SNARK_RECORD = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["index", "status", "flags"],
    "properties": {
        "index": {"type": "integer"},
        "graph6": {"type": "string"},
        "status": {"enum": ["ok", "inconclusive", "error"]},
        "flags": {"type": "array", "items": {"type": "string"}},
        "cubic": {"type": "boolean"},
        "biconnected": {"type": "boolean"},
        "chromatic_index": {"type": "integer"},
        "class": {"enum": [1, 2]},
        "dismissed": {"type": "string"},
        "hamiltonian": {"type": ["boolean", "null"]},
        "planar": {"type": "boolean"},
        "search": {
            "type": "object",
            "required": ["d", "status", "residual", "restarts", "seed", "rounding"],
        },
    },
}

KS_REPORT = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["ks", "witness", "bases", "nodes", "vectors", "d", "manifest"],
    "properties": {
        "ks": {"type": "boolean"},
        "witness": {"type": ["array", "null"], "items": {"enum": [0, 1]}},
        "bases": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "nodes": {"type": "integer"},
        "vectors": {"type": "integer"},
        "d": {"type": "integer"},
        "manifest": MANIFEST,
    },
}
