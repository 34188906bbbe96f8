"""JSON Schemas for every document the CLI reads or writes."""

_NUMBER = {"type": "number"}

MATRIX = {
    "type": "object",
    "required": ["dim", "entries"],
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "entries": {
            "type": "array",
            "items": {"type": "array", "items": _NUMBER, "minItems": 2, "maxItems": 2},
        },
    },
    "additionalProperties": False,
}

GENERATORS = {
    "type": "object",
    "required": ["lx", "ly", "lz"],
    "properties": {"lx": MATRIX, "ly": MATRIX, "lz": MATRIX},
    "additionalProperties": False,
}

SPIN_REP = {
    "type": "object",
    "required": ["two_l", "basis", "lx", "ly", "lz"],
    "properties": {
        "two_l": {"type": "integer", "minimum": 0},
        "basis": {"enum": ["spherical", "cartesian"]},
        "lx": MATRIX,
        "ly": MATRIX,
        "lz": MATRIX,
    },
    "additionalProperties": False,
}

DECOMPOSITION = {
    "type": "object",
    "required": ["blocks", "total_dim"],
    "properties": {
        "blocks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["two_l", "mult"],
                "properties": {
                    "two_l": {"type": "integer", "minimum": 0},
                    "mult": {"type": "integer", "minimum": 1},
                },
                "additionalProperties": False,
            },
        },
        "total_dim": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}

_SURVIVOR = {"enum": ["Lx", "Ly", "Lz", "I"]}

SYMMETRY_REPORT = {
    "type": "object",
    "required": ["surviving", "residuals", "group"],
    "properties": {
        "surviving": {"type": "array", "items": _SURVIVOR},
        "residuals": {
            "type": "object",
            "required": ["Lx", "Ly", "Lz", "I"],
            "properties": {k: _NUMBER for k in ("Lx", "Ly", "Lz", "I")},
            "additionalProperties": False,
        },
        "group": {"enum": ["U(1) x {E,I}", "SO(3) x {E,I}", "SO(3)", "nonstandard residual set"]},
        "axis": {"enum": ["x", "y", "z"]},
        "parity_physical": {"type": "boolean"},
    },
    "additionalProperties": False,
}

CHARACTER = {
    "type": "object",
    "required": ["two_l", "theta", "re", "im"],
    "properties": {
        "two_l": {"type": ["integer", "null"]},
        "theta": _NUMBER,
        "re": _NUMBER,
        "im": _NUMBER,
    },
    "additionalProperties": False,
}

SPECTRUM = {
    "type": "object",
    "required": ["n", "l", "base_energy_ev", "field_gauss", "spacing_ev", "sublevels", "decomposition", "group"],
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "l": {"type": "integer", "minimum": 0},
        "base_energy_ev": _NUMBER,
        "field_gauss": _NUMBER,
        "spacing_ev": _NUMBER,
        "sublevels": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["m", "energy_ev"],
                "properties": {"m": {"type": "integer"}, "energy_ev": _NUMBER},
                "additionalProperties": False,
            },
        },
        "decomposition": DECOMPOSITION,
        "group": SYMMETRY_REPORT["properties"]["group"],
    },
    "additionalProperties": False,
}

ZEEMAN_REPORT = {
    "type": "object",
    "required": ["field_gauss", "spectra"],
    "properties": {
        "field_gauss": _NUMBER,
        "spectra": {"type": "array", "items": SPECTRUM},
    },
    "additionalProperties": False,
}

TRAJECTORY = {
    "type": "object",
    "required": ["picture", "method", "omega", "columns", "rows"],
    "properties": {
        "picture": {"enum": ["schrodinger", "heisenberg"]},
        "method": {"enum": ["closed_form", "integrated"]},
        "omega": _NUMBER,
        "columns": {"type": "array", "items": {"type": "string"}},
        "rows": {"type": "array", "items": {"type": "array"}},
    },
    "additionalProperties": False,
}
