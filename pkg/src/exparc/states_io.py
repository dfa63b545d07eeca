"""JSON (de)serialization of classical and quantum states."""
from __future__ import annotations

import json

import jsonschema
import numpy as np

from .classical import ProbabilityVector
from .errors import StateSchemaError
from .quantum import DensityMatrix

_NUMBER_LIST = {"type": "array", "items": {"type": "number"}, "minItems": 1}

CLASSICAL_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"const": "classical"},
        "weights": _NUMBER_LIST,
        "quadrature": _NUMBER_LIST,
    },
    "required": ["type", "weights"],
    "additionalProperties": False,
}

QUANTUM_SCHEMA = {
    "type": "object",
    "properties": {
        "type": {"const": "quantum"},
        "dim": {"type": "integer", "minimum": 1},
        "matrix": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        },
    },
    "required": ["type", "dim", "matrix"],
    "additionalProperties": False,
}

STATE_SCHEMA = {"oneOf": [CLASSICAL_SCHEMA, QUANTUM_SCHEMA]}


def state_from_json(obj):
    """Parse a decoded JSON object into a :class:`ProbabilityVector` or :class:`DensityMatrix`."""
    if not isinstance(obj, dict) or obj.get("type") not in ("classical", "quantum"):
        raise StateSchemaError("state must be an object with type 'classical' or 'quantum'")
    schema = CLASSICAL_SCHEMA if obj["type"] == "classical" else QUANTUM_SCHEMA
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as exc:
        raise StateSchemaError(f"invalid {obj['type']} state: {exc.message}") from exc
    if obj["type"] == "classical":
        return ProbabilityVector(obj["weights"], obj.get("quadrature"))
    n = obj["dim"]
    entries = np.asarray(obj["matrix"], dtype=float)
    if entries.shape != (n * n, 2):
        raise StateSchemaError(f"quantum state of dim {n} needs {n * n} [re, im] entries, got {len(entries)}")
    return DensityMatrix((entries[:, 0] + 1j * entries[:, 1]).reshape(n, n))


def state_to_json(state) -> dict:
    if isinstance(state, ProbabilityVector):
        out = {"type": "classical", "weights": state.weights.tolist()}
        if not np.all(state.quadrature == 1.0):
            out["quadrature"] = state.quadrature.tolist()
        return out
    if isinstance(state, DensityMatrix):
        m = state.matrix.reshape(-1)
        return {
            "type": "quantum",
            "dim": state.dim,
            "matrix": [[float(z.real), float(z.imag)] for z in m],
        }
    raise TypeError(f"cannot serialize {type(state).__name__}")


def dumps_state(state) -> str:
    return json.dumps(state_to_json(state), separators=(",", ":"))


def loads_state(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateSchemaError(f"state is not valid JSON: {exc}") from exc
    return state_from_json(obj)


def load_state(path):
    with open(path) as fh:
        return loads_state(fh.read())
