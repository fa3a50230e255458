"""JSON schemas for every CLI verb's output (draft 2020-12)."""

_int_str = {"type": "string", "pattern": r"^-?\d+$"}
_rat_str = {"type": "string", "pattern": r"^-?\d+(/\d+)?$"}
_rat_list = {"type": "array", "items": _rat_str}
_matrix = {"type": "array", "items": _rat_list}

ERROR = {
    "type": "object",
    "required": ["error"],
    "properties": {
        "error": {
            "type": "object",
            "required": ["code", "message", "context"],
            "properties": {"code": {"type": "string"}, "message": {"type": "string"},
                           "context": {"type": "object"}},
        }
    },
}

PENCIL = {"type": "object", "required": ["A", "B"], "properties": {"A": _matrix, "B": _matrix}}
IDEAL = {"type": "object", "required": ["den", "basis"],
         "properties": {"den": _int_str, "basis": {"type": "array", "items": {"type": "array", "items": _int_str}}}}

_census_row = {
    "type": "object",
    "required": ["q", "form", "degrees", "orbits", "stab", "mass"],
    "properties": {
        "q": {"type": "integer"},
        "form": _rat_list,
        "degrees": {"type": "array", "items": {"type": "integer"}},
        "orbits": {"type": "integer"},
        "stab": {"type": "integer"},
        "mass": {"type": "integer"},
    },
}

SCHEMAS = {
    "disc": {"type": "object", "required": ["disc"], "properties": {"disc": _rat_str},
             "additionalProperties": False},
    "census-one": {"type": "object", "required": ["orbits", "stab", "mass"],
                   "properties": {"orbits": {"type": "integer"}, "stab": {"type": "integer"},
                                  "mass": {"type": "integer"}},
                   "additionalProperties": False},
    "census": {"type": "object", "required": ["n", "q", "rows"],
               "properties": {"n": {"type": "integer"}, "q": {"type": "integer"},
                              "rows": {"type": "array", "items": _census_row}}},
    "brute": {
        "type": "object",
        "required": ["q", "rows"],
        "properties": {
            "q": {"type": "integer"},
            "rows": {"type": "array", "items": {
                "type": "object", "required": ["form", "pairs", "orbit_sizes"],
                "properties": {"form": _rat_list, "pairs": {"type": "integer"},
                               "orbit_sizes": {"type": "array", "items": {"type": "integer"}}}}},
        },
    },
    "orbit-build": {
        "type": "object",
        "required": ["form", "triple", "pencil", "invariant"],
        "properties": {
            "form": _rat_list,
            "triple": {"type": "object", "required": ["ideal", "alpha", "s"],
                       "properties": {"ideal": IDEAL, "alpha": _rat_list, "s": _rat_str}},
            "pencil": PENCIL,
            "invariant": _rat_list,
        },
    },
    "orbit-verify": {
        "type": "object",
        "required": ["invariant", "integral", "symmetric"],
        "properties": {"invariant": _rat_list, "integral": {"type": "boolean"},
                       "symmetric": {"type": "boolean"}, "matches": {"type": "boolean"},
                       "theta_charpoly": _rat_list},
    },
    "descend": {
        "oneOf": [
            {"type": "object", "required": ["alpha", "norm"],
             "properties": {"alpha": _rat_list, "norm": _rat_str, "isotropic": {"type": "boolean"},
                            "plane": {"type": "array"}, "triple": {"type": "object"}},
             "not": {"required": ["status"]}},
            {"type": "object", "required": ["status", "alpha", "norm", "root", "message"],
             "properties": {"status": {"enum": ["witness", "none-within-bound", "refused"]},
                            "alpha": {"oneOf": [_rat_list, {"type": "null"}]},
                            "norm": {"oneOf": [_rat_str, {"type": "null"}]},
                            "root": {"oneOf": [_rat_str, {"type": "null"}]},
                            "message": {"type": "string"}}},
        ]
    },
    "real": {
        "type": "object",
        "required": ["r1", "r2", "m", "definite", "orbit_count", "soluble_count", "stabilizer_size"],
        "properties": {"r1": {"type": "integer"}, "r2": {"type": "integer"}, "m": {"type": "integer"},
                       "definite": {"type": ["string", "null"]},
                       "orbit_count": {"type": "integer"}, "soluble_count": {"type": "integer"},
                       "stabilizer_size": {"type": ["integer", "null"]}},
    },
    "reduce": {
        "type": "object",
        "required": ["p", "class", "witness", "locally_soluble"],
        "properties": {"p": {"type": "integer"},
                       "class": {"enum": ["GoodWithRoot", "SplitSemistableToric1", "SquareTimesUnit",
                                          "SolubleByWeil", "Other"]},
                       "witness": {"type": "object"},
                       "locally_soluble": {"enum": ["true", "unknown"]}},
    },
    "twists": {
        "type": "object",
        "required": ["base", "twists", "congruence", "failures", "certificate"],
        "properties": {"base": _rat_list, "twists": {"type": "object"},
                       "congruence": {"type": "boolean"}, "failures": {"type": "array"},
                       "certificate": {"type": ["string", "null"]}},
    },
    "parity": {
        "type": "object",
        "required": ["form", "hypotheses", "conclusion"],
        "properties": {
            "form": _rat_list,
            "hypotheses": {"type": "array", "items": {
                "type": "object", "required": ["name", "status", "witness"],
                "properties": {"name": {"type": "string"}, "status": {"enum": ["pass", "fail"]},
                               "witness": {"type": "string"}}}},
            "conclusion": {"enum": ["rank-sum-odd", "refused"]},
        },
    },
    "selftest": {
        "type": "object",
        "required": ["items", "passed"],
        "properties": {
            "items": {"type": "array", "items": {
                "type": "object", "required": ["name", "status"],
                "properties": {"name": {"type": "string"},
                               "status": {"enum": ["pass", "fail", "skip"]}}}},
            "passed": {"type": "boolean"},
        },
    },
    "error": ERROR,
}
